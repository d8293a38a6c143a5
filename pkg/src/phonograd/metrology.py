"""Quantum Fisher information and Cramer-Rao error bounds.

A gradient imprints a phase Delta_phi = (d omega / d eps) * eps * t that is
linear in eps, so the relative error on eps equals the phase error
1 / sqrt(N_rep H). Absolute errors are computed from the slope directly,
which keeps them defined at eps = 0.
"""

import enum
import math
import warnings
from dataclasses import dataclass, field

from .errors import (
    GradientBlindMode,
    IncompleteScheme,
    InvalidQuantity,
    OutsideAsymptoticRegime,
    PhysicsWarning,
)
from .modes import ModePair, PhononMode
from .units import CONSTANTS, GAL


class SchemeKind(str, enum.Enum):
    SINGLE_MODE_SQUEEZED = "SingleModeSqueezed"
    SU2 = "SU2"
    SU11 = "SU11"
    PUMPED_UP_SU11 = "PumpedUpSU11"


# Factors quoted for H_scheme / H_single at fixed squeezed number.
QUOTED_FACTORS = {
    SchemeKind.SINGLE_MODE_SQUEEZED: 1.0,
    SchemeKind.SU2: 3.0 / 4.0,
    SchemeKind.SU11: 3.0 / 8.0,
    SchemeKind.PUMPED_UP_SU11: 1.0 / 16.0,
}

ASYMPTOTIC_MIN_NR = 100.0


@dataclass(frozen=True)
class MetrologyScheme:
    """Probe state and interferometer.

    Give either ``n_r`` or ``r`` (or both, consistently). ``chi`` is the
    squeezing phase; none of the QFI expressions depend on it.
    """

    kind: SchemeKind = SchemeKind.SINGLE_MODE_SQUEEZED
    n_r: float | None = None
    r: float | None = None
    chi: float = 0.0
    n_bar: float | None = None
    n_alpha: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", SchemeKind(self.kind))
        for name in ("n_r", "r", "n_bar", "n_alpha"):
            v = getattr(self, name)
            if v is not None and not (v >= 0 and math.isfinite(v)):
                raise InvalidQuantity(f"scheme.{name} must be finite and >= 0, got {v}")
        if self.n_r is not None and self.r is not None:
            implied = math.sinh(self.r) ** 2
            if not math.isclose(implied, self.n_r, rel_tol=1e-12, abs_tol=1e-300):
                raise InvalidQuantity(
                    f"inconsistent squeezing: n_r = {self.n_r} but sinh^2(r) = {implied}"
                )

    @property
    def squeezed_number(self):
        if self.n_r is not None:
            return self.n_r
        if self.r is not None:
            return math.sinh(self.r) ** 2
        return None

    @property
    def squeezing(self):
        if self.r is not None:
            return self.r
        if self.n_r is not None:
            return math.asinh(math.sqrt(self.n_r))
        return None


def qfi(scheme):
    """Phase QFI for the scheme (large-N forms for the two-mode schemes)."""
    kind = scheme.kind
    if kind is SchemeKind.SINGLE_MODE_SQUEEZED:
        n_r = scheme.squeezed_number
        if n_r is None:
            raise IncompleteScheme("SingleModeSqueezed needs n_r or r")
        return 8.0 * n_r * (n_r + 1.0)
    if kind in (SchemeKind.SU2, SchemeKind.SU11):
        if scheme.n_bar is None:
            raise IncompleteScheme(f"{kind.value} needs n_bar")
        n = scheme.n_bar
        prefactor = 8.0 if kind is SchemeKind.SU2 else 4.0
        return prefactor * n * (n + 2.0) / 3.0
    if kind is SchemeKind.PUMPED_UP_SU11:
        r = scheme.squeezing
        if scheme.n_alpha is None or r is None:
            raise IncompleteScheme("PumpedUpSU11 needs n_alpha and n_r or r")
        return scheme.n_alpha * math.exp(2.0 * r) / 4.0
    raise IncompleteScheme(f"unknown scheme kind {kind!r}")


@dataclass(frozen=True)
class SchemeComparison:
    kind: SchemeKind
    n_r: float
    computed: float
    quoted: float

    @property
    def discrepancy(self):
        """Relative deviation of the computed ratio from the quoted factor."""
        return self.computed / self.quoted - 1.0

    @property
    def flagged(self):
        return abs(self.discrepancy) > 0.01


def equivalent_scheme(kind, n_r, n_alpha=None):
    """Scheme with the same squeezed-particle number as a single mode with ``n_r``.

    Two-mode schemes are optimal with 2/3 of N_bar squeezed, so N_bar = 3 n_r / 2.
    The pumped-up scheme defaults to a pump of n_alpha = n_r.
    """
    kind = SchemeKind(kind)
    if kind is SchemeKind.SINGLE_MODE_SQUEEZED:
        return MetrologyScheme(kind, n_r=n_r)
    if kind in (SchemeKind.SU2, SchemeKind.SU11):
        return MetrologyScheme(kind, n_r=n_r, n_bar=1.5 * n_r)
    return MetrologyScheme(kind, n_r=n_r, n_alpha=n_r if n_alpha is None else n_alpha)


def scheme_comparison_factor(kind, n_r, n_alpha=None):
    if not n_r >= ASYMPTOTIC_MIN_NR:
        raise OutsideAsymptoticRegime(
            f"scheme factors need n_r >= {ASYMPTOTIC_MIN_NR:g}, got {n_r}"
        )
    kind = SchemeKind(kind)
    single = qfi(MetrologyScheme(n_r=n_r))
    ratio = qfi(equivalent_scheme(kind, n_r, n_alpha)) / single
    return SchemeComparison(kind, n_r, ratio, QUOTED_FACTORS[kind])


@dataclass(frozen=True)
class ErrorBound:
    qfi: float
    n_rep: int
    t: float
    epsilon: float
    phase_slope: float
    delta_phi: float
    delta_abs: float
    delta_rel: float | None
    delta_phi_shot: float
    delta_abs_shot: float
    delta_rel_shot: float | None
    notes: tuple = field(default=())


def gradient_error_bound(trap, mode, scheme, t, n_rep):
    """Cramer-Rao bound on the gradient for one mode or a mode pair.

    For a single mode the result equals

        delta = 2 omega0^2 / (alpha eps) / (sqrt(l) omega0 t sqrt(2 N_rep N_r (N_r + 1)))

    when the scheme is a single-mode squeezed vacuum.
    """
    if not (t > 0 and math.isfinite(t)):
        raise InvalidQuantity(f"interrogation time must be positive, got {t}")
    if isinstance(n_rep, bool) or int(n_rep) != n_rep or n_rep < 1:
        raise InvalidQuantity(f"n_rep must be an integer >= 1, got {n_rep}")
    n_rep = int(n_rep)
    if isinstance(mode, PhononMode):
        if mode.alpha == 0:
            raise GradientBlindMode(
                f"mode l={mode.l} {mode.branch.value} has no first-order gradient response"
            )
        slope = abs(mode.domega_deps) * t
    elif isinstance(mode, ModePair):
        slope = mode.ddelta_omega_deps * t
    else:
        raise TypeError(f"expected PhononMode or ModePair, got {type(mode).__name__}")

    H = qfi(scheme)
    eps = trap.epsilon
    dphi_shot = math.inf if H == 0 else 1.0 / math.sqrt(H)
    dphi = dphi_shot / math.sqrt(n_rep)
    dabs_shot = dphi_shot / slope
    dabs = dphi / slope
    notes = ()
    if eps == 0:
        warnings.warn(
            "zero gradient: relative error undefined, reporting absolute bounds only",
            PhysicsWarning,
            stacklevel=2,
        )
        notes = ("ZeroGradient",)
        drel = drel_shot = None
    else:
        drel = dabs / abs(eps)
        drel_shot = dabs_shot / abs(eps)
    return ErrorBound(
        qfi=H,
        n_rep=n_rep,
        t=t,
        epsilon=eps,
        phase_slope=slope,
        delta_phi=dphi,
        delta_abs=dabs,
        delta_rel=drel,
        delta_phi_shot=dphi_shot,
        delta_abs_shot=dabs_shot,
        delta_rel_shot=drel_shot,
        notes=notes,
    )


@dataclass(frozen=True)
class ForceEquivalent:
    baseline_length: float
    accel: float
    accel_shot: float

    @property
    def gal(self):
        return self.accel / GAL

    @property
    def gal_shot(self):
        return self.accel_shot / GAL

    def in_g(self, constants=CONSTANTS):
        return self.accel / constants.g_surface

    def in_g_shot(self, constants=CONSTANTS):
        return self.accel_shot / constants.g_surface


def differential_force_equivalent(bound, baseline_length):
    """Differential acceleration across ``baseline_length`` matching the gradient error."""
    if not (baseline_length > 0 and math.isfinite(baseline_length)):
        raise InvalidQuantity(f"baseline length must be positive, got {baseline_length}")
    return ForceEquivalent(
        baseline_length=baseline_length,
        accel=bound.delta_abs * baseline_length,
        accel_shot=bound.delta_abs_shot * baseline_length,
    )
