"""Simulate anomalous heat flow under indefinite causal order.

Covers qubit channels composed by a quantum switch, heat bookkeeping and
thresholds, a switch-driven Otto refrigerator, controlled-SWAP circuit
equivalences and the Jones-calculus photonic mapping.
"""

from .channels import KrausChannel, ThermalParams, make_constant, make_gad, make_thermalizing, validate_cptp
from .ico import ALPHA_ROOT_HALF, ALPHA_PLUS, SwitchOutcome, coherent_control, evolve_switch, run_switch, switch_closed_form
from .otto import CycleImpossibleError, OttoConfig, OttoReport, run_cycle, sweep_ratio
from .qmat import DensityMatrix, partial_trace, thermal_population, thermal_state, trace_distance
from .thermo import HeatRecord, Mode, cooling_threshold, heating_threshold, sweep_heat

__version__ = "0.1.0"

__all__ = [
    "ALPHA_ROOT_HALF",
    "ALPHA_PLUS",
    "CycleImpossibleError",
    "DensityMatrix",
    "HeatRecord",
    "KrausChannel",
    "Mode",
    "OttoConfig",
    "OttoReport",
    "SwitchOutcome",
    "ThermalParams",
    "coherent_control",
    "cooling_threshold",
    "evolve_switch",
    "heating_threshold",
    "make_constant",
    "make_gad",
    "make_thermalizing",
    "partial_trace",
    "run_cycle",
    "run_switch",
    "sweep_heat",
    "sweep_ratio",
    "switch_closed_form",
    "thermal_population",
    "thermal_state",
    "trace_distance",
    "validate_cptp",
]
