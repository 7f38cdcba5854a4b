"""Dense complex linear algebra and density-matrix utilities.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Tensor products
follow ``numpy.kron``: the left factor is the most significant subsystem.

Single-qubit basis convention used across the package: index 0 is the excited
state ``|e>`` (horizontal polarisation) and index 1 the ground state ``|g>``
(vertical polarisation). Populations ``f`` always refer to the excited level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import expit

ATOL = 1e-12
EIG_TOL = 1e-10


class DimensionError(ValueError):
    """Operator and state dimensions are incompatible."""


class InvalidStateError(ValueError):
    """A matrix violates the density-matrix invariants."""


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square complex array, raising on bad shapes."""
    if isinstance(m, DensityMatrix):
        return m.mat
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def kron(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices, leftmost most significant."""
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, as_matrix(f))
    return out


def ket(index: int, dim: int = 2) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def outer(a, b=None) -> np.ndarray:
    """``|a><b|``; with one argument the projector ``|a><a|``."""
    a = np.asarray(a, dtype=complex)
    b = a if b is None else np.asarray(b, dtype=complex)
    return np.outer(a, np.conj(b))


def density_violations(m: np.ndarray) -> tuple[float, float, float]:
    """Return (hermiticity error, trace error, most negative eigenvalue)."""
    herm = float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0
    tr = abs(complex(np.trace(m)) - 1.0)
    min_eig = float(np.min(np.linalg.eigvalsh((m + dagger(m)) / 2)))
    return herm, tr, min_eig


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state.

    Construction fails with :class:`InvalidStateError` unless the matrix is
    Hermitian to ``ATOL``, has unit trace to ``ATOL`` and no eigenvalue below
    ``-EIG_TOL``.
    """

    mat: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.mat).copy()
        herm, tr, min_eig = density_violations(m)
        if herm > ATOL:
            raise InvalidStateError(f"matrix is not Hermitian (max |m - m^H| = {herm:.3e})")
        if tr > ATOL:
            raise InvalidStateError(f"trace deviates from 1 by {tr:.3e}")
        if min_eig < -EIG_TOL:
            raise InvalidStateError(f"negative eigenvalue {min_eig:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def excited_population(self) -> float:
        """Weight on index 0 (``|e>``) of a qubit state."""
        if self.dim != 2:
            raise DimensionError("excited population is defined for qubits only")
        return float(self.mat[0, 0].real)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.mat, dtype=dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


def thermal_state(f: float) -> DensityMatrix:
    """Qubit state ``f|e><e| + (1 - f)|g><g|``."""
    return DensityMatrix(np.diag([f, 1.0 - f]).astype(complex))


def thermal_population(omega: float, temperature: float) -> float:
    """Excited population ``1 / (1 + exp(omega / T))`` of a qubit at temperature T.

    ``T = 0`` gives 0 and ``T = inf`` gives 1/2.
    """
    if temperature == 0:
        return 0.0
    return float(expit(-omega / temperature))


def eff_temperature(f: float, omega: float = 1.0) -> float:
    """Invert :func:`thermal_population` on the extended reals.

    Returns ``+inf`` at ``f = 1/2``, 0 at ``f = 0`` and a negative temperature
    for population inversion ``f > 1/2``.
    """
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"population must lie in [0, 1], got {f}")
    if f == 0.0:
        return 0.0
    if f == 0.5:
        return math.inf
    if f == 1.0:
        return -0.0
    return omega / math.log((1.0 - f) / f)


def _check_dims(dims: Sequence[int], total: int):
    if any(d < 1 for d in dims) or math.prod(dims) != total:
        raise DimensionError(f"subsystem dims {list(dims)} do not multiply to {total}")


def partial_trace(rho, dims: Sequence[int], keep):
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` lists subsystem dimensions from most to least significant.
    Kept subsystems stay in their original relative order. A
    :class:`DensityMatrix` input yields a :class:`DensityMatrix`; a bare array
    (for example an unnormalised block) yields an array.
    """
    m = as_matrix(rho)
    dims = [int(d) for d in dims]
    _check_dims(dims, m.shape[0])
    keep = sorted({int(k) for k in ([keep] if np.isscalar(keep) else keep)})
    if not keep:
        raise DimensionError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionError(f"keep indices {keep} out of range for {len(dims)} subsystems")

    n = len(dims)
    t = m.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # numpy einsum letters: row index i -> letter i, column index -> letter n + i
    letters = [chr(ord("a") + i) for i in range(2 * n)]
    for i in traced:
        letters[n + i] = letters[i]
    out = "".join(letters[i] for i in keep) + "".join(letters[n + i] for i in keep)
    reduced = np.einsum("".join(letters) + "->" + out, t)
    d = math.prod(dims[i] for i in keep)
    reduced = reduced.reshape(d, d)
    if isinstance(rho, DensityMatrix):
        return DensityMatrix(reduced)
    return reduced


def permute_subsystems(m, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors; ``order[k]`` is the old index placed at slot k."""
    m = as_matrix(m)
    dims = list(dims)
    _check_dims(dims, m.shape[0])
    n = len(dims)
    t = m.reshape(dims + dims).transpose(list(order) + [n + i for i in order])
    return t.reshape(m.shape)


def kraus_ops(ch) -> list[np.ndarray]:
    ops = getattr(ch, "ops", ch)
    return [as_matrix(k) for k in ops]


def apply_channel(ch, rho):
    """Evaluate ``sum_k K rho K^H``.

    ``ch`` is a :class:`~icoheat.channels.KrausChannel` or a plain sequence of
    operators. The return type mirrors the input as in :func:`partial_trace`.
    """
    m = as_matrix(rho)
    ops = kraus_ops(ch)
    out = np.zeros_like(m)
    for k in ops:
        if k.shape[1] != m.shape[0]:
            raise DimensionError(f"operator of shape {k.shape} cannot act on dim {m.shape[0]}")
        out = out + k @ m @ dagger(k)
    if isinstance(rho, DensityMatrix):
        return DensityMatrix(out)
    return out


def psd_sqrt(m) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix."""
    m = as_matrix(m)
    w, v = np.linalg.eigh((m + dagger(m)) / 2)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ dagger(v)


def trace_distance(a, b) -> float:
    """``(1/2) ||a - b||_1`` for Hermitian arguments."""
    diff = as_matrix(a) - as_matrix(b)
    diff = (diff + dagger(diff)) / 2
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Random mixed state from a Ginibre matrix ``G G^H / Tr``."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ dagger(g)
    m = m / np.trace(m)
    return DensityMatrix((m + dagger(m)) / 2)


def random_pure(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)
