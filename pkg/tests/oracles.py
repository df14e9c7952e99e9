"""Reference implementations that share no code with the package.

Each oracle takes a different numerical route from the library: fixed-grid
Simpson in numpy, tanh-sinh quadrature in mpmath, or the spectral
representation of the vacuum-polarization correction to the Coulomb law.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

# CODATA 2018, typed in independently of the package
ALPHA = 7.2973525693e-3
EPS0 = 8.8541878128e-12
C = 299792458.0
MU0 = 1.0 / (EPS0 * C * C)


def simpson_loop(s: float, n: int = 1_000_000) -> float:
    """integral_0^1 x(1-x) ln(1 - s x(1-x)) dx by composite Simpson (s < 4)."""
    if n % 2:
        n += 1
    x = np.linspace(0.0, 1.0, n + 1)
    u = x * (1.0 - x)
    f = u * np.log1p(-s * u)
    h = 1.0 / n
    return float(h / 3.0 * (f[0] + f[-1] + 4.0 * f[1:-1:2].sum() + 2.0 * f[2:-1:2].sum()))


def mp_loop(s, dps: int = 30) -> complex:
    """Same integral by tanh-sinh, split at the roots when s > 4, Im ln(-a) = -pi."""
    with mpmath.workdps(dps):
        s = mpmath.mpf(s)
        if s <= 4:
            # at s = 4 the argument is the square (1 - 2x)^2
            f = lambda x: x * (1 - x) * (2 * mpmath.log(abs(1 - 2 * x)) if s == 4 else mpmath.log(1 - s * x * (1 - x)))  # noqa: E731
            return complex(mpmath.quad(f, [0, 0.5, 1]))
        r = mpmath.sqrt(1 - 4 / s)
        lo, hi = (1 - r) / 2, (1 + r) / 2
        re = mpmath.quad(lambda x: x * (1 - x) * mpmath.log(abs(1 - s * x * (1 - x))), [0, lo, hi, 1])
        prim = lambda x: x**2 / 2 - x**3 / 3  # noqa: E731
        return complex(re, -mpmath.pi * (prim(hi) - prim(lo)))


def delta_pi_oracle(s: float, weight: float = 1.0) -> complex:
    return 2.0 * ALPHA / math.pi * weight * mp_loop(s)


def uehling_correction(x: float, dps: int = 30) -> float:
    """(2 alpha/3 pi) integral_1^inf exp(-2 x t) (1 + 1/(2t^2)) sqrt(t^2-1)/t^2 dt."""
    with mpmath.workdps(dps):
        a = mpmath.mpf(ALPHA)
        f = lambda t: mpmath.exp(-2 * x * t) * (1 + 1 / (2 * t * t)) * mpmath.sqrt(t * t - 1) / (t * t)  # noqa: E731
        return float(2 * a / (3 * mpmath.pi) * mpmath.quad(f, [1, 2, 10, mpmath.inf]))


def landau_log10(mean_mass_gev: float, charge_sum: float) -> float:
    return math.log10(mean_mass_gev) + 3.0 * math.pi / (2.0 * ALPHA * charge_sum) / math.log(10.0)


def random_transverse(rng: np.random.Generator):
    k = rng.normal(size=3) * 10.0 ** rng.uniform(3, 9)
    e = rng.normal(size=3) + 1j * rng.normal(size=3)
    khat = k / np.linalg.norm(k)
    e = e - khat * (khat @ e)
    return k, e


def minkowski(a, b) -> complex:
    a, b = np.asarray(a), np.asarray(b)
    return complex(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3])
