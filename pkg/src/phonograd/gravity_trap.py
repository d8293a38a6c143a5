"""A spherical mass superposed on an isotropic harmonic trap.

Expanding the Newtonian potential of a sphere at distance R along z to
second order splits the isotropic trap frequency omega0 into

    omega_perp^2 = omega0^2 + MG/R^3,   omega_z^2 = omega0^2 - 2MG/R^3,

and shifts the trap minimum by z_g = MG/(R^2 omega_z^2). The gradient
epsilon = 2MG/R^3 is the quantity the rest of the package estimates.
"""

import enum
import math
import warnings
from dataclasses import dataclass

from .errors import (
    InvalidQuantity,
    InvalidSource,
    PhysicsWarning,
    SingularGeometry,
    TrapUnstable,
)
from .units import CONSTANTS

# Below this R / sphere_radius the quadratic expansion is flagged as rough.
NEAR_CONTACT_RATIO = 1.2


class SourceKind(str, enum.Enum):
    POINT_EARTH = "PointEarth"
    SPHERE = "Sphere"
    DIRECT = "Direct"


@dataclass(frozen=True)
class GravitySource:
    kind: SourceKind
    M: float = 0.0
    R: float = math.inf
    sphere_radius: float | None = None
    direct_epsilon: float | None = None
    # Only used by Direct sources to position the trap minimum.
    direct_field: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", SourceKind(self.kind))
        if self.kind is SourceKind.DIRECT:
            if self.direct_epsilon is None or not math.isfinite(self.direct_epsilon):
                raise InvalidSource("Direct source needs a finite direct_epsilon")
            return
        if not (math.isfinite(self.M) and self.M >= 0):
            raise InvalidQuantity(f"source mass must be finite and >= 0, got {self.M}")
        if not self.R >= 0 or math.isnan(self.R):
            raise InvalidQuantity(f"source distance must be >= 0, got {self.R}")
        if self.kind is SourceKind.SPHERE:
            a = self.sphere_radius
            if a is None or not (a > 0 and math.isfinite(a)):
                raise InvalidSource("Sphere source needs a positive sphere_radius")
            if self.R < a:
                raise InvalidSource(
                    f"condensate inside the sphere: R={self.R} m < radius {a} m"
                )

    @classmethod
    def point(cls, M, R):
        return cls(SourceKind.POINT_EARTH, M=M, R=R)

    @classmethod
    def sphere(cls, M, R, sphere_radius):
        return cls(SourceKind.SPHERE, M=M, R=R, sphere_radius=sphere_radius)

    @classmethod
    def sphere_from_density(cls, density, sphere_radius, R):
        M = 4.0 / 3.0 * math.pi * sphere_radius**3 * density
        return cls.sphere(M, R, sphere_radius)

    @classmethod
    def direct(cls, epsilon, field=0.0):
        return cls(SourceKind.DIRECT, direct_epsilon=epsilon, direct_field=field)

    @property
    def mass_density(self):
        if self.kind is not SourceKind.SPHERE:
            return None
        return self.M / (4.0 / 3.0 * math.pi * self.sphere_radius**3)

    def field(self, constants=CONSTANTS):
        """Gravitational acceleration MG/R^2 at the trap centre (m/s^2)."""
        if self.kind is SourceKind.DIRECT:
            return self.direct_field
        if self.M == 0:
            return 0.0
        if self.R == 0:
            raise SingularGeometry("source distance R = 0")
        return self.M * constants.G / self.R**2


# Earth as a point mass; surface-gravity parametrisation gives 2g/R, within 0.2%.
EARTH_MASS = 5.972e24
EARTH_RADIUS = 6.371e6


def earth(R=EARTH_RADIUS):
    return GravitySource.point(EARTH_MASS, R)


def gradient_of(source, constants=CONSTANTS):
    """Gravity gradient epsilon_grad = 2MG/R^3 in s^-2."""
    if source.kind is SourceKind.DIRECT:
        return float(source.direct_epsilon)
    if source.M == 0:
        return 0.0
    if source.R == 0:
        raise SingularGeometry("source distance R = 0")
    return 2.0 * source.M * constants.G / source.R**3


def contact_scaling_ratio(source, constants=CONSTANTS):
    """Ratio of 2MG/R^3 to the near-contact estimate 8 rho_M G.

    Equals (pi/3)(sphere_radius/R)^3, so it is of order one when the
    condensate sits close to the sphere surface.
    """
    rho = source.mass_density
    if rho is None:
        raise InvalidSource("contact scaling is only defined for Sphere sources")
    return gradient_of(source, constants) / (8.0 * rho * constants.G)


@dataclass(frozen=True)
class TrapConfig:
    omega0: float

    def __post_init__(self):
        if not (self.omega0 > 0 and math.isfinite(self.omega0)):
            raise InvalidQuantity(f"trap frequency must be positive, got {self.omega0}")

    @classmethod
    def from_hz(cls, f):
        return cls(2.0 * math.pi * f)


@dataclass(frozen=True)
class PerturbedTrap:
    omega0: float
    omega_perp: float
    omega_z: float
    lam: float
    z_g: float
    epsilon: float
    field: float

    @property
    def omega_bar(self):
        return (self.omega_perp**2 * self.omega_z) ** (1.0 / 3.0)

    def offset(self, species):
        """Constant potential offset C = -m (MG/R^2)^2 / (2 omega_z^2) in J."""
        return -species.mass * self.field**2 / (2.0 * self.omega_z**2)

    @property
    def trap_to_gradient_ratio(self):
        """omega0^2 / epsilon, i.e. omega0^2 R^3 / 2MG for a mass source."""
        if self.epsilon == 0:
            return math.inf
        return self.omega0**2 / self.epsilon


def perturb_trap(trap, source, constants=CONSTANTS):
    if source.kind is SourceKind.SPHERE and source.R < NEAR_CONTACT_RATIO * source.sphere_radius:
        warnings.warn(
            f"R/sphere_radius = {source.R / source.sphere_radius:.3g} < {NEAR_CONTACT_RATIO}: "
            "quadratic expansion of the sphere potential is rough",
            PhysicsWarning,
            stacklevel=2,
        )
    eps = gradient_of(source, constants)
    w0_sq = trap.omega0**2
    perp_sq = w0_sq + 0.5 * eps
    z_sq = w0_sq - eps
    if z_sq <= 0:
        raise TrapUnstable(
            f"axial confinement lost: omega0^2 = {w0_sq:.6g} s^-2 <= epsilon = {eps:.6g} s^-2"
        )
    if perp_sq <= 0:
        raise TrapUnstable(
            f"radial confinement lost: omega0^2 + epsilon/2 = {perp_sq:.6g} s^-2 <= 0"
        )
    omega_perp = math.sqrt(perp_sq)
    omega_z = math.sqrt(z_sq)
    field = source.field(constants)
    return PerturbedTrap(
        omega0=trap.omega0,
        omega_perp=omega_perp,
        omega_z=omega_z,
        lam=omega_z / omega_perp,
        z_g=field / z_sq,
        epsilon=eps,
        field=field,
    )


def evaluate_potential(trap, species, rho, z):
    """Harmonic potential (m/2)(omega_perp^2 rho^2 + omega_z^2 z'^2) in J.

    ``z`` is measured from the shifted minimum; the constant offset is dropped.
    """
    for v in (rho, z):
        if not math.isfinite(v):
            raise InvalidQuantity(f"non-finite coordinate {v}")
    return 0.5 * species.mass * (trap.omega_perp**2 * rho**2 + trap.omega_z**2 * z**2)
