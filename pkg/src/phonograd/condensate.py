"""Thomas-Fermi ground state of a condensate in the perturbed trap."""

import enum
import math
import warnings
from dataclasses import dataclass

from .errors import InvalidQuantity, PhysicsWarning
from .units import CONSTANTS, AtomSpecies

TF_VALID = 100.0
TF_MARGINAL = 10.0


class TFValidity(str, enum.Enum):
    VALID = "valid"
    MARGINAL = "marginal"
    INVALID = "invalid"


@dataclass(frozen=True)
class CondensateSpec:
    species: AtomSpecies
    n_atoms: float
    temperature: float = 0.0

    def __post_init__(self):
        if not (self.n_atoms >= 1 and math.isfinite(self.n_atoms)):
            raise InvalidQuantity(f"atom number must be >= 1, got {self.n_atoms}")
        if not (self.temperature >= 0 and math.isfinite(self.temperature)):
            raise InvalidQuantity(f"temperature must be >= 0 K, got {self.temperature}")


@dataclass(frozen=True)
class CondensateProfile:
    R_tf: float
    mu: float
    n0: float
    U0: float
    lam: float
    tf_parameter: float
    a_bar_HO: float
    omega_bar: float
    omega_perp: float
    n_atoms: float
    temperature: float
    species: AtomSpecies

    @property
    def axial_radius(self):
        return self.R_tf / self.lam

    @property
    def validity(self):
        return classify_tf(self.tf_parameter)

    def atom_number(self):
        """Atom number implied by the parabolic profile, 8 pi R^3 mu / (15 U0 lambda)."""
        return 8.0 * math.pi * self.R_tf**3 * self.mu / (15.0 * self.U0 * self.lam)


def interaction_strength(species, constants=CONSTANTS):
    """Contact coupling U0 = 4 pi hbar^2 a / m (J m^3)."""
    return 4.0 * math.pi * constants.hbar**2 * species.a_scatt / species.mass


def classify_tf(tf_parameter):
    if tf_parameter >= TF_VALID:
        return TFValidity.VALID
    if tf_parameter >= TF_MARGINAL:
        return TFValidity.MARGINAL
    return TFValidity.INVALID


def solve_profile(spec, trap, constants=CONSTANTS):
    species = spec.species
    m = species.mass
    U0 = interaction_strength(species, constants)
    R_tf = (15.0 * spec.n_atoms * U0 * trap.lam / (4.0 * math.pi * m * trap.omega_perp**2)) ** 0.2
    mu = 0.5 * m * trap.omega_perp**2 * R_tf**2
    omega_bar = trap.omega_bar
    a_bar = math.sqrt(constants.hbar / (m * omega_bar))
    profile = CondensateProfile(
        R_tf=R_tf,
        mu=mu,
        n0=mu / U0,
        U0=U0,
        lam=trap.lam,
        tf_parameter=spec.n_atoms * species.a_scatt / a_bar,
        a_bar_HO=a_bar,
        omega_bar=omega_bar,
        omega_perp=trap.omega_perp,
        n_atoms=spec.n_atoms,
        temperature=spec.temperature,
        species=species,
    )
    validity = profile.validity
    if validity is not TFValidity.VALID:
        warnings.warn(
            f"Thomas-Fermi approximation {validity.value}: "
            f"N a/a_HO = {profile.tf_parameter:.3g}",
            PhysicsWarning,
            stacklevel=2,
        )
    return profile


def tf_validity(profile):
    return profile.validity, profile.tf_parameter


def density_at(profile, rho, z):
    """Parabolic density in m^-3, zero outside the Thomas-Fermi surface."""
    u = (rho * rho + (profile.lam * z) ** 2) / profile.R_tf**2
    if u >= 1.0:
        return 0.0
    return profile.mu * (1.0 - u) / profile.U0
