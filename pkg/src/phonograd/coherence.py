"""Lifetime limits on the interrogation time.

Three-body loss dn/dt = -D n^3 halves the peak density after
t_hl = 3 / (2 D n0^2). Landau damping of a low-lying phonon at temperature
T is estimated as gamma ~ sqrt(l) omega0 (k_B T / mu)^{3/2} (n0 a^3)^{1/2};
the law is order-of-magnitude only, so its prefactor is a parameter.
"""

import enum
import math
import warnings
from dataclasses import dataclass

from .errors import InvalidQuantity, PhysicsWarning
from .units import CONSTANTS

SAFETY_FRACTION = 0.1
DAMPING_PREFACTOR = 1.0


class LimitingFactor(str, enum.Enum):
    REQUESTED = "Requested"
    DAMPING = "Damping"
    HALF_LIFE = "HalfLife"


@dataclass(frozen=True)
class CoherenceBudget:
    t_halflife: float
    gamma: float
    t_damping: float
    t_requested: float
    t_granted: float
    limiting_factor: LimitingFactor
    safety_fraction: float


def three_body_half_life(n0, D):
    """Half-life in s for peak density ``n0`` (m^-3) and loss constant ``D`` (m^6/s)."""
    if D == 0:
        return math.inf
    if not n0 > 0:
        raise InvalidQuantity(f"peak density must be positive, got {n0}")
    if not D > 0:
        raise InvalidQuantity(f"three-body constant must be >= 0, got {D}")
    return 3.0 / (2.0 * D * n0**2)


def half_life(profile, species=None):
    """Density half-life of the condensate (s); infinite when D = 0."""
    species = species or profile.species
    return three_body_half_life(profile.n0, species.three_body_D)


def damping_rate(profile, mode, trap, prefactor=DAMPING_PREFACTOR, constants=CONSTANTS):
    T = profile.temperature
    if T == 0:
        return 0.0
    thermal = constants.k_B * T
    if thermal > profile.mu:
        warnings.warn(
            f"k_B T / mu = {thermal / profile.mu:.3g} > 1: damping law used outside "
            "its low-temperature range",
            PhysicsWarning,
            stacklevel=2,
        )
    gas = profile.n0 * profile.species.a_scatt**3
    return (
        prefactor
        * math.sqrt(mode.l)
        * trap.omega0
        * (thermal / profile.mu) ** 1.5
        * math.sqrt(gas)
    )


def time_budget(
    requested_t,
    profile,
    mode,
    trap,
    species=None,
    safety_fraction=SAFETY_FRACTION,
    damping_prefactor=DAMPING_PREFACTOR,
    constants=CONSTANTS,
):
    if not (requested_t > 0 and math.isfinite(requested_t)):
        raise InvalidQuantity(f"requested time must be positive, got {requested_t}")
    if not 0 < safety_fraction <= 1:
        raise InvalidQuantity(f"safety fraction must lie in (0, 1], got {safety_fraction}")
    t_hl = half_life(profile, species)
    gamma = damping_rate(profile, mode, trap, damping_prefactor, constants)
    t_damp = math.inf if gamma == 0 else 1.0 / gamma
    candidates = [
        (requested_t, LimitingFactor.REQUESTED),
        (safety_fraction * t_damp, LimitingFactor.DAMPING),
        (safety_fraction * t_hl, LimitingFactor.HALF_LIFE),
    ]
    # min() keeps the first entry on ties, so Requested wins a draw.
    granted, limit = min(candidates, key=lambda c: c[0])
    return CoherenceBudget(
        t_halflife=t_hl,
        gamma=gamma,
        t_damping=t_damp,
        t_requested=requested_t,
        t_granted=granted,
        limiting_factor=limit,
        safety_fraction=safety_fraction,
    )
