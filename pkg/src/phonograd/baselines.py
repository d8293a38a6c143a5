"""Atom-interferometric reference bounds at the condensate length scale.

Both comparators use the single-mode squeezed coherent probe with
H = 8 N_r (N_a + 2 N_r) and the phase-estimation bound
delta = 1 / (sqrt(N_rep H) * phase).
"""

import math
import warnings
from dataclasses import dataclass

from .errors import (
    InvalidQuantity,
    MixedGradient,
    PhysicsWarning,
    SetupTooSmall,
    SplitTooLarge,
    ZeroGradient,
)
from .units import CONSTANTS

DEFAULT_SETUP_SIZE = 600e-6
DEFAULT_LASER_WAVELENGTH = 1.56e-6
MAX_SPLIT_DIVISOR = 10


def coherent_squeezed_qfi(n_atoms, n_r):
    return 8.0 * n_r * (n_atoms + 2.0 * n_r)


def _check_particles(n_atoms, n_r, n_rep):
    if not (n_atoms > 0 and n_r > 0):
        raise InvalidQuantity("particle numbers must be positive")
    if n_r > n_atoms:
        raise InvalidQuantity(f"n_r = {n_r} exceeds n_atoms = {n_atoms}")
    if isinstance(n_rep, bool) or int(n_rep) != n_rep or n_rep < 1:
        raise InvalidQuantity(f"n_rep must be an integer >= 1, got {n_rep}")


def _positive(**kw):
    for name, v in kw.items():
        if not (v > 0 and math.isfinite(v)):
            raise InvalidQuantity(f"{name} must be positive, got {v}")


@dataclass(frozen=True)
class FreeFallBaseline:
    s: float
    lambda_laser: float
    k: float
    n_kick: int
    n_kick_limit: float
    t_free: float
    phi_tidal: float
    epsilon: float
    n_atoms: float
    n_r: float
    n_rep: int
    H: float
    delta_rel: float
    two_photon: bool
    kick_overridden: bool

    name = "free-fall"

    @property
    def delta_abs(self):
        return self.delta_rel * abs(self.epsilon)

    @property
    def delta_rel_shot(self):
        return self.delta_rel * math.sqrt(self.n_rep)

    @property
    def delta_abs_shot(self):
        return self.delta_abs * math.sqrt(self.n_rep)

    @property
    def kick_feasible(self):
        return self.n_kick <= self.n_kick_limit


def max_free_fall_time(s, constants=CONSTANTS):
    """Up-and-down flight time 2 sqrt(2 s / g) fitting in a setup of height ``s``."""
    return 2.0 * math.sqrt(2.0 * s / constants.g_surface)


def tidal_phase(n_kick, k, epsilon, t, species, constants=CONSTANTS):
    return constants.hbar * n_kick**2 * k**2 * epsilon * t**3 / (2.0 * species.mass)


def tidal_phase_ceiling(s, epsilon, species, constants=CONSTANTS):
    """Largest tidal phase reachable with a continuous kick order.

    Substituting n = m s / (hbar k t) gives phi = m s^2 eps t / (2 hbar), which
    is maximal at t = 2 sqrt(2 s / g).
    """
    t = max_free_fall_time(s, constants)
    return species.mass * s**2 * abs(epsilon) * t / (2.0 * constants.hbar)


def free_fall_bound(
    s,
    lambda_laser,
    epsilon,
    species,
    n_atoms,
    n_r,
    n_rep,
    n_kick=None,
    two_photon=False,
    constants=CONSTANTS,
):
    """Fundamental bound for a free-fall gradiometer scaled to size ``s``.

    The kick order is the largest even integer allowed by the setup size unless
    ``n_kick`` overrides it. ``two_photon`` counts each kick as 2 hbar k.
    """
    _positive(s=s, lambda_laser=lambda_laser)
    _check_particles(n_atoms, n_r, n_rep)
    t_free = max_free_fall_time(s, constants)
    k = 2.0 * math.pi / lambda_laser
    if two_photon:
        k *= 2.0
    limit = species.mass * s / (constants.hbar * k * t_free)
    overridden = n_kick is not None
    if overridden:
        if isinstance(n_kick, bool) or int(n_kick) != n_kick or n_kick < 2 or n_kick % 2:
            raise InvalidQuantity(f"n_kick must be an even integer >= 2, got {n_kick}")
        n_kick = int(n_kick)
        if n_kick > limit:
            warnings.warn(
                f"n_kick = {n_kick} exceeds the size-limited order {limit:.3g}",
                PhysicsWarning,
                stacklevel=2,
            )
    else:
        n_kick = 2 * int(limit // 2)
        if n_kick < 2:
            raise SetupTooSmall(
                f"setup of {s:g} m allows kick order {limit:.3g} < 2"
            )
    if epsilon == 0:
        raise ZeroGradient("tidal phase vanishes for a zero gradient")
    phi = abs(tidal_phase(n_kick, k, epsilon, t_free, species, constants))
    H = coherent_squeezed_qfi(n_atoms, n_r)
    return FreeFallBaseline(
        s=s,
        lambda_laser=lambda_laser,
        k=k,
        n_kick=n_kick,
        n_kick_limit=limit,
        t_free=t_free,
        phi_tidal=phi,
        epsilon=epsilon,
        n_atoms=n_atoms,
        n_r=n_r,
        n_rep=int(n_rep),
        H=H,
        delta_rel=1.0 / (math.sqrt(n_rep * H) * phi),
        two_photon=two_photon,
        kick_overridden=overridden,
    )


@dataclass(frozen=True)
class TrappedBaseline:
    L: float
    delta_z: float
    t: float
    delta_phi_signal: float
    epsilon: float
    n_atoms: float
    n_r: float
    n_rep: int
    H: float
    delta_rel: float

    name = "trapped"

    @property
    def delta_abs(self):
        return self.delta_rel * abs(self.epsilon)

    @property
    def delta_rel_shot(self):
        return self.delta_rel * math.sqrt(self.n_rep)

    @property
    def delta_abs_shot(self):
        return self.delta_abs * math.sqrt(self.n_rep)


def trapped_bound(L, delta_z, t, epsilon, species, n_atoms, n_r, n_rep, constants=CONSTANTS):
    """Two trapped interferometers a distance ``L`` apart, each split by ``delta_z``."""
    _positive(L=L, delta_z=delta_z, t=t)
    _check_particles(n_atoms, n_r, n_rep)
    # relative slack so that e.g. 60e-6 vs 600e-6/10 is not rejected on round-off
    if delta_z > L / MAX_SPLIT_DIVISOR * (1 + 1e-12):
        raise SplitTooLarge(f"split {delta_z:g} m exceeds L/10 = {L / 10:g} m")
    if epsilon == 0:
        raise ZeroGradient("differential phase vanishes for a zero gradient")
    dphi = species.mass * L * abs(epsilon) * delta_z * t / constants.hbar
    H = coherent_squeezed_qfi(n_atoms, n_r)
    return TrappedBaseline(
        L=L,
        delta_z=delta_z,
        t=t,
        delta_phi_signal=dphi,
        epsilon=epsilon,
        n_atoms=n_atoms,
        n_r=n_r,
        n_rep=int(n_rep),
        H=H,
        delta_rel=1.0 / (math.sqrt(n_rep * H) * dphi),
    )


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    epsilon: float
    delta_rel: float
    delta_abs: float
    delta_rel_shot: float
    delta_abs_shot: float
    # phononic delta_rel / this row's delta_rel; > 1 means this row is tighter
    gain_vs_phononic: float


def compare(phononic, baselines, rel_tol=1e-12):
    """Side-by-side table of the phonon bound and reference bounds."""
    if phononic.delta_rel is None:
        raise ZeroGradient("phononic bound has no relative error to compare")
    eps = phononic.epsilon
    rows = [
        ComparisonRow(
            "phononic",
            eps,
            phononic.delta_rel,
            phononic.delta_abs,
            phononic.delta_rel_shot,
            phononic.delta_abs_shot,
            1.0,
        )
    ]
    for b in baselines:
        if not math.isclose(b.epsilon, eps, rel_tol=rel_tol):
            raise MixedGradient(f"{b.name} uses epsilon = {b.epsilon}, phononic uses {eps}")
        rows.append(
            ComparisonRow(
                b.name,
                b.epsilon,
                b.delta_rel,
                b.delta_abs,
                b.delta_rel_shot,
                b.delta_abs_shot,
                phononic.delta_rel / b.delta_rel,
            )
        )
    return rows
