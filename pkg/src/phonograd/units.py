"""Physical constants, the atom species table and unit conversions.

Everything inside the package is strict SI (angular frequencies in rad/s).
Gal, Hz, nK and cgs densities only appear at the input/output boundary.
"""

import math
from dataclasses import dataclass
from types import MappingProxyType

from .errors import InvalidQuantity, UnknownSpecies


@dataclass(frozen=True)
class PhysicalConstants:
    G: float = 6.67430e-11  # m^3 kg^-1 s^-2 (CODATA 2018)
    hbar: float = 1.054571817e-34  # J s (exact)
    k_B: float = 1.380649e-23  # J/K (exact)
    g_surface: float = 9.80665  # m/s^2 (standard gravity)

    def __post_init__(self):
        for name in ("G", "hbar", "k_B", "g_surface"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidQuantity(f"constant {name} must be positive, got {value}")


CONSTANTS = PhysicalConstants()

ATOMIC_MASS_UNIT = 1.66053906660e-27  # kg
BOHR_RADIUS = 5.29177210903e-11  # m
GAL = 1e-2  # m/s^2
# Conversions divide or multiply by exact powers of ten (100, 1e6, 1e9) so that
# a round trip is within one ulp.
CM3 = 1e-6  # m^3
CM6 = 1e-12  # m^6


@dataclass(frozen=True)
class AtomSpecies:
    """An atomic species.

    ``three_body_D`` is stored in m^6/s; use :meth:`from_cgs` or
    :attr:`three_body_D_cgs` when working with the customary cm^6/s.
    """

    name: str
    mass: float
    a_scatt: float
    three_body_D: float = 0.0

    def __post_init__(self):
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise InvalidQuantity(f"{self.name}: mass must be positive")
        if not (self.a_scatt > 0 and math.isfinite(self.a_scatt)):
            raise InvalidQuantity(f"{self.name}: scattering length must be positive")
        if not (self.three_body_D >= 0 and math.isfinite(self.three_body_D)):
            raise InvalidQuantity(f"{self.name}: three-body constant must be >= 0")

    @classmethod
    def from_cgs(cls, name, mass, a_scatt, three_body_D_cgs=0.0):
        return cls(name, mass, a_scatt, three_body_D_cgs * CM6)

    @property
    def three_body_D_cgs(self):
        return self.three_body_D / CM6


_SPECIES = MappingProxyType(
    {
        # a_scatt = 5.2 nm (about 98 a0) reproduces the quoted 120 um radius.
        "Rb87": AtomSpecies.from_cgs(
            "Rb87",
            mass=86.909180527 * ATOMIC_MASS_UNIT,
            a_scatt=5.2e-9,
            three_body_D_cgs=5.8e-30,
        ),
    }
)


def species_lookup(name):
    try:
        return _SPECIES[name]
    except KeyError:
        known = ", ".join(sorted(_SPECIES))
        raise UnknownSpecies(f"unknown species {name!r} (known: {known})") from None


def species_names():
    return sorted(_SPECIES)


def _finite(x):
    x = float(x)
    if not math.isfinite(x):
        raise InvalidQuantity(f"non-finite quantity: {x}")
    return x


def to_gal(a):
    """Acceleration in m/s^2 to gal."""
    return _finite(a) * 100.0


def from_gal(a_gal):
    return _finite(a_gal) / 100.0


def to_g(a, constants=CONSTANTS):
    """Acceleration in m/s^2 as a multiple of standard gravity."""
    return _finite(a) / constants.g_surface


def hz_to_angular(f):
    return 2.0 * math.pi * _finite(f)


def angular_to_hz(omega):
    return _finite(omega) / (2.0 * math.pi)


def nk_to_kelvin(t_nk):
    return _finite(t_nk) / 1e9


def kelvin_to_nk(t):
    return _finite(t) * 1e9


def per_m3_to_per_cm3(n):
    return _finite(n) / 1e6


def per_cm3_to_per_m3(n):
    return _finite(n) * 1e6
