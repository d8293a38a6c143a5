"""Fundamental error bounds for gravity gradiometry with condensate phonons."""

from .baselines import compare, free_fall_bound, trapped_bound
from .coherence import damping_rate, half_life, time_budget
from .condensate import CondensateSpec, density_at, solve_profile, tf_validity
from .gravity_trap import GravitySource, TrapConfig, evaluate_potential, gradient_of, perturb_trap
from .metrology import (
    MetrologyScheme,
    SchemeKind,
    differential_force_equivalent,
    gradient_error_bound,
    qfi,
    scheme_comparison_factor,
)
from .modes import Branch, gradient_response, mode_frequency, mode_pair_difference
from .report import run_report, run_sweep
from .scenario import load_preset, load_scenario
from .units import CONSTANTS, species_lookup, to_gal

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "compare",
    "CondensateSpec",
    "CONSTANTS",
    "damping_rate",
    "density_at",
    "differential_force_equivalent",
    "evaluate_potential",
    "free_fall_bound",
    "gradient_error_bound",
    "gradient_of",
    "gradient_response",
    "GravitySource",
    "half_life",
    "load_preset",
    "load_scenario",
    "MetrologyScheme",
    "mode_frequency",
    "mode_pair_difference",
    "perturb_trap",
    "qfi",
    "run_report",
    "run_sweep",
    "scheme_comparison_factor",
    "SchemeKind",
    "solve_profile",
    "species_lookup",
    "tf_validity",
    "time_budget",
    "to_gal",
    "TrapConfig",
    "trapped_bound",
]
