"""Qubit channels: generalized amplitude damping, thermalization, constant."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .qmat import (
    ATOL,
    DensityMatrix,
    DimensionError,
    InvalidStateError,
    as_matrix,
    dagger,
    ket,
    outer,
    psd_sqrt,
    thermal_population,
)

E, G = 0, 1  # basis indices of |e> and |g>


def _proj(a: int, b: int) -> np.ndarray:
    """``|a><b|`` on a qubit."""
    return outer(ket(a), ket(b))


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A map ``rho -> sum_k K rho K^H`` given by its operators.

    Completeness is not enforced here so that defective operator sets can be
    inspected with :func:`validate_cptp`; every ``make_*`` constructor in this
    module returns a complete set.
    """

    ops: tuple = field(default_factory=tuple)
    label: str = ""

    def __post_init__(self):
        ops = tuple(as_matrix(k).copy() for k in self.ops)
        if len({k.shape for k in ops}) > 1:
            raise DimensionError("Kraus operators must share one shape")
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "ops", ops)

    @property
    def dim(self) -> int:
        if not self.ops:
            raise DimensionError("empty channel has no dimension")
        return self.ops[0].shape[0]

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __repr__(self):
        return f"KrausChannel({self.label!r}, n_ops={len(self.ops)})"


@dataclass(frozen=True)
class ThermalParams:
    """Transition frequency and temperature of a thermalizing reservoir (hbar = k_B = 1)."""

    omega: float
    temperature: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not self.temperature >= 0:
            raise ValueError(f"temperature must be non-negative, got {self.temperature}")

    @property
    def population(self) -> float:
        return thermal_population(self.omega, self.temperature)


def _check_prob(name: str, x: float):
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def make_gad(p: float, r: float) -> KrausChannel:
    """Generalized amplitude damping with excitation weight ``p`` and strength ``r``.

    ``E0, E1`` describe excitation and ``E2, E3`` relaxation. ``r = 1`` gives the
    thermalizing channel, ``r = 0`` the identity.
    """
    _check_prob("p", p)
    _check_prob("r", r)
    sp, sq, sr, s1r = np.sqrt(p), np.sqrt(1 - p), np.sqrt(r), np.sqrt(1 - r)
    ops = (
        sp * (_proj(E, E) + s1r * _proj(G, G)),
        sp * sr * _proj(E, G),
        sq * (s1r * _proj(E, E) + _proj(G, G)),
        sq * sr * _proj(G, E),
    )
    return KrausChannel(ops, label=f"GAD(p={p:g}, r={r:g})")


def make_thermalizing(params: ThermalParams | float) -> KrausChannel:
    """Thermalizing channel whose output is ``diag(p, 1 - p)`` for every input.

    ``params`` is either a :class:`ThermalParams` or the excited population
    ``p`` itself. Raw ``p > 1/2`` (negative temperature) is accepted.
    """
    p = params.population if isinstance(params, ThermalParams) else float(params)
    _check_prob("p", p)
    sp, sq = np.sqrt(p), np.sqrt(1 - p)
    ops = (
        sp * _proj(E, E),
        sp * _proj(E, G),
        sq * _proj(G, G),
        sq * _proj(G, E),
    )
    return KrausChannel(ops, label=f"thermal(p={p:g})")


def make_constant(tau) -> KrausChannel:
    """Channel that outputs ``tau`` whatever the input, via ``sqrt(tau)|m><n|``."""
    if not isinstance(tau, DensityMatrix):
        try:
            tau = DensityMatrix(tau)
        except InvalidStateError as exc:
            raise InvalidStateError(f"constant-channel output is not a state: {exc}") from exc
    d = tau.dim
    root = psd_sqrt(tau.mat)
    ops = tuple(root @ outer(ket(m, d), ket(n, d)) for m in range(d) for n in range(d))
    return KrausChannel(ops, label="constant")


def identity_channel(dim: int = 2) -> KrausChannel:
    return KrausChannel((np.eye(dim, dtype=complex),), label="identity")


def completeness_deviation(ops: Sequence[np.ndarray]) -> float:
    ops = list(ops)
    if not ops:
        return 1.0
    total = sum(dagger(k) @ k for k in ops)
    return float(np.max(np.abs(total - np.eye(total.shape[0]))))


def validate_cptp(ch: KrausChannel, tol: float = ATOL) -> tuple[bool, float]:
    """Return ``(passed, max |sum K^H K - I|)``; an empty channel deviates by 1."""
    dev = completeness_deviation(ch.ops)
    return dev <= tol, dev


def random_channel(n_ops: int, rng: np.random.Generator, dim: int = 2) -> KrausChannel:
    """Random CPTP channel with ``n_ops`` operators, cut from a random isometry."""
    g = rng.normal(size=(n_ops * dim, dim)) + 1j * rng.normal(size=(n_ops * dim, dim))
    q, _ = np.linalg.qr(g)
    ops = tuple(q[k * dim:(k + 1) * dim, :] for k in range(n_ops))
    return KrausChannel(ops, label=f"random({n_ops})")
