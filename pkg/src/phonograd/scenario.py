"""Scenario description, TOML (de)serialisation, overrides and presets.

A scenario file has top-level ``name``, ``t_requested``, ``n_rep`` and an
optional ``baseline_length``, plus the sections ``source``, ``trap``,
``condensate``, ``mode``, ``scheme`` and the optional ``budget`` and
``comparison``. Unknown keys are rejected.
"""

import copy
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .baselines import DEFAULT_LASER_WAVELENGTH, DEFAULT_SETUP_SIZE
from .coherence import DAMPING_PREFACTOR, SAFETY_FRACTION
from .condensate import CondensateSpec
from .errors import ConfigError, PhonogradError
from .gravity_trap import GravitySource, SourceKind, TrapConfig
from .metrology import MetrologyScheme, SchemeKind
from .modes import Branch
from .units import AtomSpecies, species_lookup

PAIR = "Pair"
MODE_BRANCHES = (Branch.MAX_M.value, Branch.L_MINUS_ONE.value, PAIR)


@dataclass(frozen=True)
class ModeSelection:
    """Single mode (``MaxM`` / ``LMinusOne``) or the two-mode ``Pair`` at ``l``."""

    l: int = 3
    branch: str = Branch.MAX_M.value

    @property
    def is_pair(self):
        return self.branch == PAIR


@dataclass(frozen=True)
class BudgetConfig:
    safety_fraction: float = SAFETY_FRACTION
    damping_prefactor: float = DAMPING_PREFACTOR


@dataclass(frozen=True)
class ComparisonConfig:
    s: float = DEFAULT_SETUP_SIZE
    lambda_laser: float = DEFAULT_LASER_WAVELENGTH
    n_kick: int | None = None
    two_photon: bool = False
    L: float = 600e-6
    delta_z: float = 30e-6
    t: float | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    source: GravitySource
    trap: TrapConfig
    condensate: CondensateSpec
    mode: ModeSelection
    scheme: MetrologyScheme
    t_requested: float
    n_rep: int
    baseline_length: float | None = None
    budget: BudgetConfig = field(default_factory=BudgetConfig)
    comparison: ComparisonConfig = field(default_factory=ComparisonConfig)


# ---------------------------------------------------------------- parsing

_NUM = (int, float)


def _take(table, key, kind, where, required=True, default=None):
    if key not in table:
        if required:
            raise ConfigError(f"{where}: missing key {key!r}")
        return default
    value = table[key]
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, _NUM):
            raise ConfigError(f"{where}.{key}: expected a number, got {value!r}")
        return float(value)
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, _NUM) or value != int(value):
            raise ConfigError(f"{where}.{key}: expected an integer, got {value!r}")
        return int(value)
    if kind == "str":
        if not isinstance(value, str):
            raise ConfigError(f"{where}.{key}: expected a string, got {value!r}")
        return value
    if kind == "bool":
        if not isinstance(value, bool):
            raise ConfigError(f"{where}.{key}: expected true/false, got {value!r}")
        return value
    raise AssertionError(kind)


def _check_keys(table, allowed, where):
    if not isinstance(table, dict):
        raise ConfigError(f"{where}: expected a table")
    unknown = sorted(set(table) - set(allowed))
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(unknown)}")


def _parse_source(t):
    _check_keys(t, {"kind", "M", "R", "sphere_radius", "epsilon", "field"}, "source")
    kind = _take(t, "kind", "str", "source")
    try:
        kind = SourceKind(kind)
    except ValueError:
        raise ConfigError(
            f"source.kind: {kind!r} not one of {[k.value for k in SourceKind]}"
        ) from None
    if kind is SourceKind.DIRECT:
        _check_keys(t, {"kind", "epsilon", "field"}, "source (Direct)")
        return GravitySource.direct(
            _take(t, "epsilon", "float", "source"),
            _take(t, "field", "float", "source", required=False, default=0.0),
        )
    allowed = {"kind", "M", "R"} | ({"sphere_radius"} if kind is SourceKind.SPHERE else set())
    _check_keys(t, allowed, f"source ({kind.value})")
    M = _take(t, "M", "float", "source")
    R = _take(t, "R", "float", "source")
    if kind is SourceKind.SPHERE:
        return GravitySource.sphere(M, R, _take(t, "sphere_radius", "float", "source"))
    return GravitySource.point(M, R)


def _parse_trap(t):
    _check_keys(t, {"omega0", "frequency_hz"}, "trap")
    if ("omega0" in t) == ("frequency_hz" in t):
        raise ConfigError("trap: give exactly one of omega0 (rad/s) or frequency_hz")
    if "omega0" in t:
        return TrapConfig(_take(t, "omega0", "float", "trap"))
    return TrapConfig.from_hz(_take(t, "frequency_hz", "float", "trap"))


def _parse_species(value):
    if isinstance(value, str):
        return species_lookup(value)
    _check_keys(value, {"name", "mass", "a_scatt", "three_body_D_cgs"}, "condensate.species")
    w = "condensate.species"
    return AtomSpecies.from_cgs(
        _take(value, "name", "str", w),
        _take(value, "mass", "float", w),
        _take(value, "a_scatt", "float", w),
        _take(value, "three_body_D_cgs", "float", w, required=False, default=0.0),
    )


def _parse_condensate(t):
    _check_keys(t, {"species", "n_atoms", "temperature", "temperature_nk"}, "condensate")
    if "species" not in t:
        raise ConfigError("condensate: missing key 'species'")
    if "temperature" in t and "temperature_nk" in t:
        raise ConfigError("condensate: give temperature (K) or temperature_nk, not both")
    if "temperature_nk" in t:
        temperature = _take(t, "temperature_nk", "float", "condensate") * 1e-9
    else:
        temperature = _take(t, "temperature", "float", "condensate", required=False, default=0.0)
    return CondensateSpec(
        _parse_species(t["species"]),
        _take(t, "n_atoms", "float", "condensate"),
        temperature,
    )


def _parse_mode(t):
    _check_keys(t, {"l", "branch"}, "mode")
    branch = _take(t, "branch", "str", "mode", required=False, default=Branch.MAX_M.value)
    if branch not in MODE_BRANCHES:
        raise ConfigError(f"mode.branch: {branch!r} not one of {list(MODE_BRANCHES)}")
    return ModeSelection(_take(t, "l", "int", "mode"), branch)


def _parse_scheme(t):
    _check_keys(t, {"kind", "n_r", "r", "chi", "n_bar", "n_alpha"}, "scheme")
    kind = _take(t, "kind", "str", "scheme", required=False, default=SchemeKind.SINGLE_MODE_SQUEEZED.value)
    try:
        kind = SchemeKind(kind)
    except ValueError:
        raise ConfigError(
            f"scheme.kind: {kind!r} not one of {[k.value for k in SchemeKind]}"
        ) from None
    opt = {k: _take(t, k, "float", "scheme", required=False) for k in ("n_r", "r", "n_bar", "n_alpha")}
    return MetrologyScheme(kind, chi=_take(t, "chi", "float", "scheme", required=False, default=0.0), **opt)


def _parse_budget(t):
    _check_keys(t, {"safety_fraction", "damping_prefactor"}, "budget")
    return BudgetConfig(
        _take(t, "safety_fraction", "float", "budget", required=False, default=SAFETY_FRACTION),
        _take(t, "damping_prefactor", "float", "budget", required=False, default=DAMPING_PREFACTOR),
    )


def _parse_comparison(t):
    keys = {"s", "lambda_laser", "n_kick", "two_photon", "L", "delta_z", "t"}
    _check_keys(t, keys, "comparison")
    d = ComparisonConfig()
    w = "comparison"
    return ComparisonConfig(
        s=_take(t, "s", "float", w, required=False, default=d.s),
        lambda_laser=_take(t, "lambda_laser", "float", w, required=False, default=d.lambda_laser),
        n_kick=_take(t, "n_kick", "int", w, required=False),
        two_photon=_take(t, "two_photon", "bool", w, required=False, default=False),
        L=_take(t, "L", "float", w, required=False, default=d.L),
        delta_z=_take(t, "delta_z", "float", w, required=False, default=d.delta_z),
        t=_take(t, "t", "float", w, required=False),
    )


TOP_KEYS = {
    "name", "t_requested", "n_rep", "baseline_length",
    "source", "trap", "condensate", "mode", "scheme", "budget", "comparison",
}


def scenario_from_dict(d):
    _check_keys(d, TOP_KEYS, "scenario")
    for section in ("source", "trap", "condensate", "mode", "scheme"):
        if section not in d:
            raise ConfigError(f"scenario: missing section [{section}]")
    try:
        return Scenario(
            name=_take(d, "name", "str", "scenario", required=False, default="scenario"),
            source=_parse_source(d["source"]),
            trap=_parse_trap(d["trap"]),
            condensate=_parse_condensate(d["condensate"]),
            mode=_parse_mode(d["mode"]),
            scheme=_parse_scheme(d["scheme"]),
            t_requested=_take(d, "t_requested", "float", "scenario"),
            n_rep=_take(d, "n_rep", "int", "scenario"),
            baseline_length=_take(d, "baseline_length", "float", "scenario", required=False),
            budget=_parse_budget(d.get("budget", {})),
            comparison=_parse_comparison(d.get("comparison", {})),
        )
    except ConfigError:
        raise
    except PhonogradError as exc:
        # Domain validation failures inside the file are input errors here.
        raise ConfigError(f"invalid scenario: {exc}") from exc


# ---------------------------------------------------------- serialisation


def _drop_none(d):
    return {k: v for k, v in d.items() if v is not None}


def scenario_to_dict(sc):
    """Canonical nested dict; ``scenario_from_dict`` inverts it exactly."""
    src = sc.source
    if src.kind is SourceKind.DIRECT:
        source = {"kind": src.kind.value, "epsilon": src.direct_epsilon, "field": src.direct_field}
    else:
        source = _drop_none(
            {"kind": src.kind.value, "M": src.M, "R": src.R, "sphere_radius": src.sphere_radius}
        )
    sp = sc.condensate.species
    try:
        registered = species_lookup(sp.name) == sp
    except PhonogradError:
        registered = False
    species = sp.name if registered else {
        "name": sp.name,
        "mass": sp.mass,
        "a_scatt": sp.a_scatt,
        "three_body_D_cgs": sp.three_body_D_cgs,
    }
    sch = sc.scheme
    cmp_ = sc.comparison
    return _drop_none(
        {
            "name": sc.name,
            "t_requested": sc.t_requested,
            "n_rep": sc.n_rep,
            "baseline_length": sc.baseline_length,
            "source": source,
            "trap": {"omega0": sc.trap.omega0},
            "condensate": {
                "species": species,
                "n_atoms": sc.condensate.n_atoms,
                "temperature": sc.condensate.temperature,
            },
            "mode": {"l": sc.mode.l, "branch": sc.mode.branch},
            "scheme": _drop_none(
                {
                    "kind": sch.kind.value,
                    "n_r": sch.n_r,
                    "r": sch.r,
                    "chi": sch.chi,
                    "n_bar": sch.n_bar,
                    "n_alpha": sch.n_alpha,
                }
            ),
            "budget": {
                "safety_fraction": sc.budget.safety_fraction,
                "damping_prefactor": sc.budget.damping_prefactor,
            },
            "comparison": _drop_none(
                {
                    "s": cmp_.s,
                    "lambda_laser": cmp_.lambda_laser,
                    "n_kick": cmp_.n_kick,
                    "two_photon": cmp_.two_photon,
                    "L": cmp_.L,
                    "delta_z": cmp_.delta_z,
                    "t": cmp_.t,
                }
            ),
        }
    )


def dumps(sc):
    return tomli_w.dumps(scenario_to_dict(sc))


def loads_dict(text, where="<string>"):
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def loads(text):
    return scenario_from_dict(loads_dict(text))


# -------------------------------------------------------------- overrides


def parse_override(item):
    """Split ``a.b=value``; the value is read as a TOML literal, else a bare string."""
    if "=" not in item:
        raise ConfigError(f"override {item!r} is not of the form key=value")
    path, raw = item.split("=", 1)
    path = path.strip()
    raw = raw.strip()
    if not path:
        raise ConfigError(f"override {item!r} has an empty key")
    try:
        value = tomllib.loads(f"v = {raw}")["v"]
    except tomllib.TOMLDecodeError:
        value = raw
    return path, value


def set_path(d, path, value):
    keys = path.split(".")
    node = d
    for k in keys[:-1]:
        nxt = node.setdefault(k, {})
        if not isinstance(nxt, dict):
            raise ConfigError(f"override path {path!r}: {k!r} is not a section")
        node = nxt
    node[keys[-1]] = value


def get_path(d, path):
    node = d
    for k in path.split("."):
        if not isinstance(node, dict) or k not in node:
            return None
        node = node[k]
    return node


# Mutually exclusive spellings of the same input; setting one drops the other.
_ALIASES = {
    "trap.omega0": "trap.frequency_hz",
    "trap.frequency_hz": "trap.omega0",
    "condensate.temperature": "condensate.temperature_nk",
    "condensate.temperature_nk": "condensate.temperature",
}


def apply_overrides(d, overrides):
    d = copy.deepcopy(d)
    for item in overrides:
        path, value = parse_override(item) if isinstance(item, str) else item
        alias = _ALIASES.get(path)
        if alias is not None:
            section, key = alias.split(".")
            d.get(section, {}).pop(key, None)
        set_path(d, path, value)
    return d


def with_overrides(sc, overrides):
    if not overrides:
        return sc
    return scenario_from_dict(apply_overrides(scenario_to_dict(sc), overrides))


# ---------------------------------------------------------------- presets


def preset_names():
    files = resources.files("phonograd").joinpath("presets").iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".toml"))


def preset_text(name):
    path = resources.files("phonograd").joinpath("presets", f"{name}.toml")
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r} (known: {', '.join(preset_names())})")
    return path.read_text(encoding="utf-8")


def load_preset(name):
    return loads(preset_text(name))


def load_scenario(ref, overrides=()):
    """Load a scenario from a preset name or a TOML file path."""
    p = Path(ref)
    if p.is_file():
        d = loads_dict(p.read_text(encoding="utf-8"), str(p))
    elif ref in preset_names():
        d = loads_dict(preset_text(ref), ref)
    else:
        raise ConfigError(f"{ref!r} is neither a file nor a preset")
    return scenario_from_dict(apply_overrides(d, overrides))

