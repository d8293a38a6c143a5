"""End-to-end sensitivity reports and parameter sweeps."""

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .baselines import compare, free_fall_bound, trapped_bound
from .coherence import time_budget
from .condensate import solve_profile
from .errors import ConfigError, InvalidAxis, PhonogradError, PhysicsWarning
from .gravity_trap import perturb_trap
from .metrology import differential_force_equivalent, gradient_error_bound
from .modes import ModePair, mode_frequency, mode_pair_difference
from .scenario import (
    apply_overrides,
    loads_dict,
    preset_names,
    preset_text,
    scenario_from_dict,
)
from .units import CONSTANTS

# A first-order shift further than this from the exact one is reported.
APPROX_WARN_THRESHOLD = 0.01


@dataclass(frozen=True)
class SensitivityReport:
    scenario: object
    trap: object
    profile: object
    mode: object
    budget: object
    bound: object
    force: object
    warnings: tuple


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PhonogradError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


def _check_first_order(mode, trap):
    if trap.epsilon == 0:
        return
    if isinstance(mode, ModePair):
        exact, approx, what = mode.delta_omega_exact, mode.delta_omega_approx, "frequency difference"
    else:
        exact = mode.omega_exact - math.sqrt(mode.l) * trap.omega0
        approx = mode.omega_approx - math.sqrt(mode.l) * trap.omega0
        what = "gradient shift"
        if approx == 0:
            return
    err = abs(exact - approx) / abs(approx)
    if err > APPROX_WARN_THRESHOLD:
        warnings.warn(
            f"first-order {what} deviates from exact by {err:.2%}",
            PhysicsWarning,
            stacklevel=2,
        )


def _pipeline(sc, constants):
    trap = _stage("gravity_trap", perturb_trap, sc.trap, sc.source, constants)
    profile = _stage("condensate", solve_profile, sc.condensate, trap, constants)
    if sc.mode.is_pair:
        mode = _stage("modes", mode_pair_difference, sc.mode.l, trap)
    else:
        mode = _stage("modes", mode_frequency, sc.mode.l, sc.mode.branch, trap)
        if mode.is_dipole:
            warnings.warn("l = 1, m = 0 is the axial dipole (centre-of-mass) mode", PhysicsWarning)
    _check_first_order(mode, trap)
    budget_mode = mode.upper if sc.mode.is_pair else mode
    budget = _stage(
        "coherence",
        time_budget,
        sc.t_requested,
        profile,
        budget_mode,
        trap,
        sc.condensate.species,
        sc.budget.safety_fraction,
        sc.budget.damping_prefactor,
        constants,
    )
    if budget.t_granted < budget.t_requested:
        warnings.warn(
            f"interrogation time clipped to {budget.t_granted:.4g} s "
            f"({budget.limiting_factor.value})",
            PhysicsWarning,
        )
    bound = _stage("metrology", gradient_error_bound, trap, mode, sc.scheme, budget.t_granted, sc.n_rep)
    length = sc.baseline_length if sc.baseline_length is not None else 2.0 * profile.R_tf
    force = _stage("metrology", differential_force_equivalent, bound, length)
    return trap, profile, mode, budget, bound, force


def _unique_messages(caught):
    seen = []
    for w in caught:
        msg = str(w.message)
        if msg not in seen:
            seen.append(msg)
    return tuple(seen)


def run_report(scenario, constants=CONSTANTS):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PhysicsWarning)
        parts = _pipeline(scenario, constants)
    caught = [w for w in caught if issubclass(w.category, PhysicsWarning)]
    return SensitivityReport(scenario, *parts, warnings=_unique_messages(caught))


# ------------------------------------------------------------- comparison


def run_comparison(scenario, constants=CONSTANTS):
    """Phonon bound next to the free-fall and trapped interferometer limits."""
    report = run_report(scenario, constants)
    c = scenario.comparison
    species = scenario.condensate.species
    n_atoms = scenario.condensate.n_atoms
    n_r = scenario.scheme.squeezed_number
    if n_r is None:
        raise ConfigError("comparison needs scheme.n_r or scheme.r")
    eps = report.trap.epsilon
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PhysicsWarning)
        free = _stage(
            "baselines", free_fall_bound, c.s, c.lambda_laser, eps, species,
            n_atoms, n_r, scenario.n_rep, c.n_kick, c.two_photon, constants,
        )
        t = c.t if c.t is not None else scenario.t_requested
        trapped = _stage(
            "baselines", trapped_bound, c.L, c.delta_z, t, eps, species,
            n_atoms, n_r, scenario.n_rep, constants,
        )
    rows = _stage("baselines", compare, report.bound, [free, trapped])
    extra = _unique_messages(w for w in caught if issubclass(w.category, PhysicsWarning))
    notes = report.warnings + tuple(m for m in extra if m not in report.warnings)
    return rows, (free, trapped), notes


# ------------------------------------------------------------ report rows


def _oom(x):
    """Power of ten of the scientific-notation exponent, 3.3e-2 -> 1e-2."""
    if x is None or not math.isfinite(x) or x <= 0:
        return None
    return 10.0 ** math.floor(math.log10(x))


def report_fields(report, constants=CONSTANTS):
    """Ordered ``(name, unit, value)`` triples; unit ``""`` marks text fields."""
    sc, trap, prof, mode, bud, b, f = (
        report.scenario, report.trap, report.profile, report.mode,
        report.budget, report.bound, report.force,
    )
    pair = sc.mode.is_pair
    if pair:
        omega_exact, omega_approx = mode.upper.omega_exact, mode.upper.omega_approx
        shift_exact, shift_approx = mode.delta_omega_exact, mode.delta_omega_approx
    else:
        omega_exact, omega_approx = mode.omega_exact, mode.omega_approx
        shift_exact = mode.omega_exact - math.sqrt(mode.l) * trap.omega0
        shift_approx = mode.domega_deps * trap.epsilon
    return [
        ("scenario", "", sc.name),
        ("source_kind", "", sc.source.kind.value),
        ("epsilon_grad", "s^-2", trap.epsilon),
        ("trap_to_gradient_ratio", "1", trap.trap_to_gradient_ratio),
        ("omega0", "rad/s", trap.omega0),
        ("omega_perp", "rad/s", trap.omega_perp),
        ("omega_z", "rad/s", trap.omega_z),
        ("lambda", "1", trap.lam),
        ("z_g", "m", trap.z_g),
        ("n_atoms", "1", prof.n_atoms),
        ("R_tf", "m", prof.R_tf),
        ("mu", "J", prof.mu),
        ("n0", "m^-3", prof.n0),
        ("tf_parameter", "1", prof.tf_parameter),
        ("tf_validity", "", prof.validity.value),
        ("mode_l", "1", sc.mode.l),
        ("mode_branch", "", sc.mode.branch),
        ("omega_exact", "rad/s", omega_exact),
        ("omega_approx", "rad/s", omega_approx),
        ("domega_exact", "rad/s", shift_exact),
        ("domega_approx", "rad/s", shift_approx),
        ("t_halflife", "s", bud.t_halflife),
        ("t_damping", "s", bud.t_damping),
        ("t_requested", "s", bud.t_requested),
        ("t_granted", "s", bud.t_granted),
        ("limiting_factor", "", bud.limiting_factor.value),
        ("scheme", "", sc.scheme.kind.value),
        ("qfi", "1", b.qfi),
        ("n_rep", "1", b.n_rep),
        ("delta_phi", "rad", b.delta_phi),
        ("delta_rel", "1", b.delta_rel),
        ("delta_abs", "s^-2", b.delta_abs),
        ("force_equiv", "gal", f.gal),
        ("force_equiv_g", "g", f.accel / constants.g_surface),
        ("delta_rel_shot", "1", b.delta_rel_shot),
        ("delta_abs_shot", "s^-2", b.delta_abs_shot),
        ("force_equiv_shot", "gal", f.gal_shot),
        ("force_equiv_shot_g", "g", f.accel_shot / constants.g_surface),
        ("baseline_length", "m", f.baseline_length),
        ("delta_rel_oom", "1", _oom(b.delta_rel)),
        ("delta_abs_oom", "s^-2", _oom(b.delta_abs)),
        ("force_equiv_oom", "gal", _oom(f.gal)),
        ("warnings", "", "; ".join(report.warnings)),
    ]


# ----------------------------------------------------------------- sweeps

SWEEPABLE = {
    "t_requested": "float",
    "n_rep": "int",
    "baseline_length": "float",
    "source.M": "float",
    "source.R": "float",
    "source.sphere_radius": "float",
    "source.epsilon": "float",
    "trap.omega0": "float",
    "trap.frequency_hz": "float",
    "condensate.n_atoms": "float",
    "condensate.temperature": "float",
    "condensate.temperature_nk": "float",
    "mode.l": "int",
    "scheme.n_r": "float",
    "scheme.r": "float",
    "scheme.n_bar": "float",
    "scheme.n_alpha": "float",
    "budget.safety_fraction": "float",
    "budget.damping_prefactor": "float",
}

SWEEP_KEYS = {"base", "axis", "values", "range", "linked", "outputs", "scenario"}
DEFAULT_OUTPUTS = ("delta_rel", "delta_abs", "force_equiv", "t_granted", "limiting_factor")


@dataclass(frozen=True)
class SweepSpec:
    base: dict
    axis: str
    values: tuple
    linked: tuple = ()
    outputs: tuple = DEFAULT_OUTPUTS


@dataclass(frozen=True)
class SweepRow:
    value: object
    linked: tuple
    report: SensitivityReport | None
    error: str | None


def _coerce(path, values):
    kind = SWEEPABLE[path]
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise InvalidAxis(f"{path}: non-numeric sweep value {v!r}")
        if kind == "int":
            if v != int(v):
                raise InvalidAxis(f"{path}: integer axis got {v!r}")
            v = int(v)
        else:
            v = float(v)
        out.append(v)
    return tuple(out)


def _range_values(spec):
    try:
        start, stop, num = float(spec["start"]), float(spec["stop"]), int(spec["num"])
    except (KeyError, TypeError, ValueError):
        raise InvalidAxis("range needs numeric start, stop and num") from None
    spacing = spec.get("spacing", "linear")
    unknown = set(spec) - {"start", "stop", "num", "spacing"}
    if unknown:
        raise InvalidAxis(f"range: unknown key(s) {', '.join(sorted(unknown))}")
    if num < 1:
        raise InvalidAxis("range.num must be >= 1")
    if num == 1:
        return (start,)
    if spacing == "linear":
        step = (stop - start) / (num - 1)
        return tuple(start + i * step for i in range(num - 1)) + (stop,)
    if spacing == "log":
        if start <= 0 or stop <= 0:
            raise InvalidAxis("log range needs positive bounds")
        ratio = math.log10(stop / start) / (num - 1)
        return tuple(start * 10.0 ** (i * ratio) for i in range(num - 1)) + (stop,)
    raise InvalidAxis(f"range.spacing must be 'linear' or 'log', got {spacing!r}")


def _check_axis(path):
    if path not in SWEEPABLE:
        raise InvalidAxis(f"{path!r} is not a sweepable field (choose from {sorted(SWEEPABLE)})")


def sweep_from_dict(d):
    if "sweep" not in d:
        raise ConfigError("sweep file needs a [sweep] table")
    s = d["sweep"]
    unknown = sorted(set(s) - SWEEP_KEYS)
    if unknown:
        raise ConfigError(f"sweep: unknown key(s) {', '.join(unknown)}")
    if ("base" in s) == ("scenario" in s):
        raise ConfigError("sweep: give exactly one of base (preset/file) or [sweep.scenario]")
    base = s["scenario"] if "scenario" in s else loads_dict(_base_text(s["base"]), s["base"])
    axis = s.get("axis")
    if not isinstance(axis, str):
        raise InvalidAxis("sweep.axis must be a dotted field path")
    _check_axis(axis)
    if ("values" in s) == ("range" in s):
        raise InvalidAxis("sweep: give exactly one of values or range")
    values = s["values"] if "values" in s else _range_values(s["range"])
    if not isinstance(values, (list, tuple)) or not values:
        raise InvalidAxis("sweep values must be a non-empty list")
    values = _coerce(axis, values)
    linked = []
    for path, vals in s.get("linked", {}).items():
        _check_axis(path)
        if not isinstance(vals, list) or len(vals) != len(values):
            raise InvalidAxis(f"linked axis {path!r} must list {len(values)} values")
        linked.append((path, _coerce(path, vals)))
    outputs = tuple(s.get("outputs", DEFAULT_OUTPUTS))
    # validate the base once so typos fail before any row runs
    scenario_from_dict(base)
    return SweepSpec(base=base, axis=axis, values=values, linked=tuple(linked), outputs=outputs)


def _base_text(ref):
    p = Path(ref)
    if p.is_file():
        return p.read_text(encoding="utf-8")
    if ref in preset_names():
        return preset_text(ref)
    raise ConfigError(f"sweep base {ref!r} is neither a file nor a preset")


def _run_row(args):
    base, overrides = args
    try:
        sc = scenario_from_dict(apply_overrides(base, overrides))
        return run_report(sc), None
    except PhonogradError as exc:
        stage = f"[{exc.stage}] " if exc.stage else ""
        return None, f"{type(exc).__name__}: {stage}{exc}"


def run_sweep(sweep, workers=1):
    """One report per axis value, in order; failures become per-row errors."""
    jobs = []
    for i, v in enumerate(sweep.values):
        overrides = [(sweep.axis, v)] + [(p, vals[i]) for p, vals in sweep.linked]
        jobs.append((sweep.base, overrides))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_row, jobs))
    else:
        results = [_run_row(j) for j in jobs]
    rows = []
    for i, (v, (rep, err)) in enumerate(zip(sweep.values, results)):
        linked = tuple((p, vals[i]) for p, vals in sweep.linked)
        rows.append(SweepRow(v, linked, rep, err))
    return rows


def sweep_table(sweep, rows):
    """Column names, units and row values for the selected outputs."""
    names = [(sweep.axis, ""), *((p, "") for p, _ in sweep.linked)]
    field_units = None
    body = []
    for row in rows:
        values = [row.value, *(v for _, v in row.linked)]
        if row.report is not None:
            fields = {n: (u, v) for n, u, v in report_fields(row.report)}
            if field_units is None:
                field_units = fields
            unknown = [o for o in sweep.outputs if o not in fields]
            if unknown:
                raise InvalidAxis(f"unknown output field(s) {', '.join(unknown)}")
            values += [fields[o][1] for o in sweep.outputs]
            values.append(None)
        else:
            values += [None] * len(sweep.outputs)
            values.append(row.error)
        body.append(values)
    units = [field_units[o][0] if field_units else "" for o in sweep.outputs]
    header = names + list(zip(sweep.outputs, units)) + [("error", "")]
    return header, body


def load_sweep(path, overrides=()):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read sweep file {path}: {exc.strerror}") from None
    spec = sweep_from_dict(loads_dict(text, str(path)))
    if overrides:
        base = apply_overrides(spec.base, overrides)
        scenario_from_dict(base)
        spec = SweepSpec(base, spec.axis, spec.values, spec.linked, spec.outputs)
    return spec
