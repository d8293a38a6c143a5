"""Independent high-precision reference computations (mpmath, 50 digits).

These re-derive quantities from the raw formulas without touching the
package, so a bug in the package cannot leak into the expected values.
"""

from mpmath import mp, mpf, pi, sqrt

mp.dps = 50

G = mpf("6.67430e-11")
HBAR = mpf("1.054571817e-34")
AMU = mpf("1.66053906660e-27")
RB87_MASS = mpf("86.909180527") * AMU


def gradient(M, R):
    return 2 * mpf(M) * G / mpf(R) ** 3


def trap_freqs_sq(omega0, eps):
    w0 = mpf(omega0)
    return w0**2 + eps / 2, w0**2 - eps


def stringari_pair_difference(l, omega0, eps):
    perp2, z2 = trap_freqs_sq(omega0, eps)
    return sqrt(l * perp2) - sqrt((l - 1) * perp2 + z2)


def two_pi(f):
    return 2 * pi * mpf(f)
