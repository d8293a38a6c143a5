"""Surface phonon modes of a Thomas-Fermi condensate.

Only the two analytic families with |m| = l and |m| = l - 1 are handled:

    omega_{l,l}^2   = l omega_perp^2
    omega_{l,l-1}^2 = (l - 1) omega_perp^2 + omega_z^2

Both are expanded to first order in the gradient; the exact value is kept
next to the approximation so the truncation error stays visible.
"""

import enum
import math
from dataclasses import dataclass

from .errors import InvalidMode


class Branch(str, enum.Enum):
    MAX_M = "MaxM"
    L_MINUS_ONE = "LMinusOne"


@dataclass(frozen=True)
class PhononMode:
    l: int
    branch: Branch
    omega_exact: float
    omega_approx: float
    alpha: float
    domega_deps: float
    epsilon: float
    omega0: float

    @property
    def is_dipole(self):
        """l = 1, m = 0: the trivial axial centre-of-mass oscillation."""
        return self.l == 1 and self.branch is Branch.L_MINUS_ONE

    @property
    def approx_error(self):
        return abs(self.omega_exact - self.omega_approx) / self.omega_exact


@dataclass(frozen=True)
class ModePair:
    l: int
    upper: PhononMode
    lower: PhononMode
    delta_omega_exact: float
    delta_omega_approx: float
    epsilon: float
    omega0: float

    @property
    def ddelta_omega_deps(self):
        """First-order slope of the frequency difference, 3/(4 sqrt(l) omega0)."""
        return 3.0 / (4.0 * math.sqrt(self.l) * self.omega0)

    def delta_phi(self, t, exact=False):
        return (self.delta_omega_exact if exact else self.delta_omega_approx) * t


def _check_l(l, minimum):
    if isinstance(l, bool) or int(l) != l:
        raise InvalidMode(f"angular momentum must be an integer, got {l!r}")
    if l < minimum:
        raise InvalidMode(f"angular momentum l = {l} below minimum {minimum}")
    return int(l)


def response_slope(l, branch, omega0):
    """d omega / d epsilon at epsilon = 0, in s."""
    if Branch(branch) is Branch.MAX_M:
        return math.sqrt(l) / (4.0 * omega0)
    return (l - 3) / (4.0 * omega0 * math.sqrt(l))


def alpha_of(l, branch):
    if Branch(branch) is Branch.MAX_M:
        return 1.0
    return abs((l - 3) / l)


def mode_frequency(l, branch, trap):
    l = _check_l(l, 1)
    branch = Branch(branch)
    if branch is Branch.MAX_M:
        exact_sq = l * trap.omega_perp**2
    else:
        exact_sq = (l - 1) * trap.omega_perp**2 + trap.omega_z**2
    slope = response_slope(l, branch, trap.omega0)
    return PhononMode(
        l=l,
        branch=branch,
        omega_exact=math.sqrt(exact_sq),
        omega_approx=math.sqrt(l) * trap.omega0 + slope * trap.epsilon,
        alpha=alpha_of(l, branch),
        domega_deps=slope,
        epsilon=trap.epsilon,
        omega0=trap.omega0,
    )


def gradient_response(mode):
    """Signed first-order frequency shift caused by the gradient (rad/s)."""
    return mode.domega_deps * mode.epsilon


def mode_pair_difference(l, trap):
    l = _check_l(l, 2)
    upper = mode_frequency(l, Branch.MAX_M, trap)
    lower = mode_frequency(l, Branch.L_MINUS_ONE, trap)
    # omega_upper^2 - omega_lower^2 = omega_perp^2 - omega_z^2 = 3 eps / 2;
    # dividing by the sum avoids cancelling two nearly equal frequencies.
    exact = 1.5 * trap.epsilon / (upper.omega_exact + lower.omega_exact)
    approx = 3.0 * trap.epsilon / (4.0 * math.sqrt(l) * trap.omega0)
    return ModePair(
        l=l,
        upper=upper,
        lower=lower,
        delta_omega_exact=exact,
        delta_omega_approx=approx,
        epsilon=trap.epsilon,
        omega0=trap.omega0,
    )
