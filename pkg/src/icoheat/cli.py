"""``icoheat`` command line: sweeps, Otto scans, thresholds and self-checks.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .ico import ALPHA_ROOT_HALF, ALPHA_PLUS
from .otto import OttoConfig, cop_argmax, sweep_ratio
from .svg import line_plot
from .thermo import DEFAULT_GRID, Mode, cooling_threshold, heating_threshold, sweep_heat, te_grid
from .verify import run_photonic_check, run_verify

SWEEP_COLUMNS = ("te_over_ts", "p_plus", "p_minus", "dq_plus", "dq_minus", "f_plus", "f_minus")
OTTO_COLUMNS = ("ratio", "w_net", "q2", "q4", "p_minus", "w_era", "cop")

ALPHA_NAMES = {"plus": ALPHA_PLUS, "root-half": ALPHA_ROOT_HALF}

DEFAULTS = {
    "sweep": dict(
        mode="ico", t_s=1.0, omega=1.0, alpha=ALPHA_PLUS, te_min=DEFAULT_GRID[0], te_max=DEFAULT_GRID[1],
        steps=DEFAULT_GRID[2], output=None, format="csv", seed=0,
    ),
    "otto": dict(
        t2=0.9, t4=1.0, omega1=1.0, ratio_min=1.0, ratio_max=1.5, steps=500, t_r=None, alpha=ALPHA_PLUS,
        output=None, format="csv",
    ),
    "thresholds": dict(omega=1.0, t_s=1.0),
    "verify": dict(trials=1000, seed=42, tol=1e-12),
    "photonic-check": dict(trials=100, seed=42, tol=1e-12),
}


class UsageError(Exception):
    pass


def parse_alpha(text) -> float:
    """Control weight as a number or one of the names ``plus`` / ``root-half``."""
    if isinstance(text, str) and text in ALPHA_NAMES:
        return ALPHA_NAMES[text]
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"alpha must be a number or one of {sorted(ALPHA_NAMES)}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in [0, 1], got {value}")
    return value


def fmt(value: float) -> str:
    return format(float(value) + 0.0, ".12g")  # folds -0 into 0


def csv_text(columns, rows, comments=()) -> str:
    lines = [",".join(columns)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    lines += [f"# {c}" for c in comments]
    return "\n".join(lines) + "\n"


def emit(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _resolve(command: str, args: argparse.Namespace) -> dict:
    """Flags override ``--config`` values, which override built-in defaults."""
    settings = dict(DEFAULTS[command])
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(loaded, dict):
            raise UsageError("config must be a JSON object")
        unknown = sorted(set(loaded) - set(settings))
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        settings.update(loaded)
    for key in settings:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if "alpha" in settings:
        try:
            settings["alpha"] = parse_alpha(settings["alpha"])
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from None
    return settings


def cmd_sweep(args) -> int:
    s = _resolve("sweep", args)
    grid = te_grid(s["te_min"], s["te_max"], int(s["steps"]))
    records = sweep_heat(s["t_s"], s["omega"], s["alpha"], grid, mode=Mode(s["mode"]))
    rows = [[getattr(r, c) for c in SWEEP_COLUMNS] for r in records]
    text = csv_text(SWEEP_COLUMNS, rows)
    if s["format"] == "svg":
        text = line_plot(text, ["dq_plus", "dq_minus"], title=f"heat vs T_E/T_S ({s['mode']})")
    emit(text, s["output"])
    return 0


def cmd_otto(args) -> int:
    s = _resolve("otto", args)
    if not s["ratio_max"] >= s["ratio_min"] >= 1.0:
        raise UsageError("need 1 <= ratio-min <= ratio-max")
    base = OttoConfig(s["omega1"], s["omega1"], s["t2"], s["t4"], s["t_r"], s["alpha"])
    reports = sweep_ratio(base, np.linspace(s["ratio_min"], s["ratio_max"], int(s["steps"])))
    rows = [[getattr(r, c) for c in OTTO_COLUMNS] for r in reports]
    comments = [f"cycle impossible at ratio={fmt(r.ratio)}: P- below threshold" for r in reports if not r.possible]
    try:
        best = cop_argmax(reports)
        comments.append(f"argmax_cop ratio={fmt(best.ratio)} cop={fmt(best.cop)}")
    except ValueError:
        comments.append("argmax_cop none")
    text = csv_text(OTTO_COLUMNS, rows, comments)
    if s["format"] == "svg":
        text = line_plot(text, ["w_net", "q2", "q4", "cop"], title="Otto cycle vs omega2/omega1")
    emit(text, s["output"])
    return 0


def cmd_thresholds(args) -> int:
    s = _resolve("thresholds", args)
    print(f"heating_min_te {heating_threshold(s['omega'], s['t_s']):.6f}")
    print(f"cooling_max_te {cooling_threshold(s['omega'], s['t_s']):.6f}")
    return 0


def _report(results) -> int:
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print("ALL PASS" if ok else "FAILURES")
    return 0 if ok else 1


def cmd_verify(args) -> int:
    s = _resolve("verify", args)
    return _report(run_verify(int(s["trials"]), int(s["seed"]), float(s["tol"])))


def cmd_photonic_check(args) -> int:
    s = _resolve("photonic-check", args)
    return _report(run_photonic_check(int(s["trials"]), int(s["seed"]), float(s["tol"])))


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def _pos_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="icoheat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON file with flag values (underscored keys)")
        p.set_defaults(func=fn)
        return p

    p = add("sweep", cmd_sweep, "conditional heat over a grid of T_E/T_S")
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--t-s", dest="t_s", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--alpha", type=parse_alpha)
    p.add_argument("--te-min", dest="te_min", type=float)
    p.add_argument("--te-max", dest="te_max", type=float)
    p.add_argument("--steps", type=_pos_int)
    p.add_argument("--seed", type=_nonneg_int, help="accepted for reproducibility records; the sweep is deterministic")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=["csv", "svg"])

    p = add("otto", cmd_otto, "Otto cycle ledger over omega2/omega1")
    p.add_argument("--t2", type=float)
    p.add_argument("--t4", type=float)
    p.add_argument("--omega1", type=float)
    p.add_argument("--ratio-min", dest="ratio_min", type=float)
    p.add_argument("--ratio-max", dest="ratio_max", type=float)
    p.add_argument("--steps", type=_pos_int)
    p.add_argument("--t-r", dest="t_r", type=float, help="erasure temperature (default: t4)")
    p.add_argument("--alpha", type=parse_alpha)
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=["csv", "svg"])

    p = add("thresholds", cmd_thresholds, "heating and cooling bounds on T_E")
    p.add_argument("--omega", type=float)
    p.add_argument("--t-s", dest="t_s", type=float)

    for name, fn, help_text in (
        ("verify", cmd_verify, "randomised equivalence and CPTP checks"),
        ("photonic-check", cmd_photonic_check, "Jones-calculus mapping checks"),
    ):
        p = add(name, fn, help_text)
        p.add_argument("--trials", type=_pos_int)
        p.add_argument("--seed", type=_nonneg_int)
        p.add_argument("--tol", type=float)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"icoheat {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
