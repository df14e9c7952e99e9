"""Potential of a static unit charge in the polarized vacuum.

In k-space the static potential is e / (k^2 eps0(k^2)) with the spacelike
invariant k^2 = -|k|^2. Transforming to r-space and subtracting the bare
Coulomb term leaves a dimensionless correction

    Phi(r) = e / (4 pi eps0 r) * [1 + (2/pi) integral_0^inf sin(q r)/q g(q) dq]

with g = delta_pi / (1 - delta_pi) (``full``) or g = delta_pi (``linearized``).
Lengths are measured in units of the electron's reduced Compton wavelength
hbar/(m_e c), wavenumbers in m_e c/hbar.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import mpmath

from .constants import EULER_GAMMA, SI, PhysicalConstants, Wavevector
from .errors import TruncationWarning
from .oscillatory import integrate_sin_over_t
from .polarization import POLE_TOLERANCE, check_pole, eps0_of_k2, loop_integral_spacelike
from .registry import ParticleRegistry, preset

# Beyond this many Compton lengths the correction is small enough relative to
# its partial sums that double precision loses the answer.
EXTENDED_PRECISION_RANGE = (4.0, 20.0)
EXTENDED_DIGITS = 32


class Method(str, Enum):
    NUMERIC_FULL = "numeric_full"
    NUMERIC_LINEARIZED = "numeric_linearized"
    ASYMPTOTIC_SMALL_R = "asymptotic_small_r"
    ASYMPTOTIC_LARGE_R = "asymptotic_large_r"


@dataclass(frozen=True)
class PotentialSample:
    r_over_compton: float
    phi_coulomb: float  # volts, for a charge +e at the origin
    correction: float
    method: Method
    abserr: float = 0.0
    intervals: int = 0
    converged: bool = True
    regime_ok: bool = True


def bare_coulomb(r: float, consts: PhysicalConstants = SI) -> float:
    return consts.e / (4.0 * math.pi * consts.eps0 * r)


def _sample(r: float, corr: float, method: Method, consts: PhysicalConstants, **extra) -> PotentialSample:
    if not r > 0.0:
        raise ValueError(f"r must be positive, got {r!r}")
    return PotentialSample(
        r_over_compton=r / consts.reduced_compton_wavelength,
        phi_coulomb=bare_coulomb(r, consts) * (1.0 + corr),
        correction=corr,
        method=method,
        **extra,
    )


def phi_k(kmag: float, reg: ParticleRegistry, consts: PhysicalConstants = SI) -> float:
    """e / (k^2 eps0(-k^2)) for a spatial wavenumber ``kmag`` in 1/m."""
    if not kmag > 0.0:
        raise ValueError(f"kmag must be positive, got {kmag!r}")
    k2 = Wavevector.from_si(-(kmag * kmag), consts)
    return consts.e / (kmag * kmag * eps0_of_k2(k2, reg, consts))


def _loop_spacelike_mp(a):
    if a < 0.5:
        total = mpmath.mpf(0)
        term = mpmath.mpf(1)
        n = 1
        while True:
            term *= a
            contrib = term * mpmath.beta(n + 2, n + 2) / n
            total += contrib if n % 2 else -contrib
            if contrib < mpmath.eps * abs(total) * mpmath.mpf("1e-2") or n > 400:
                return total
            n += 1
    b = mpmath.sqrt(1 + 4 / a)
    b_minus_1 = (4 / a) / (b + 1)
    return (mpmath.mpf(-5) / 3 + 4 / a + (1 - 2 / a) * b * mpmath.log((b + 1) / b_minus_1)) / 6


def _kernel(reg: ParticleRegistry, consts: PhysicalConstants, mode: str, x: float, extended: bool):
    """g(t / x) as a function of t = q r, for the sine integral."""
    me = consts.electron_mass_gev
    loops = [(w, (me / m) ** 2) for w, m in reg.loops()]
    linear = mode == "linearized"

    if extended:
        pref_mp = 2 * mpmath.mpf(consts.alpha) / mpmath.pi
        loops_mp = [(mpmath.mpf(w), mpmath.mpf(ratio)) for w, ratio in loops]
        x_mp = mpmath.mpf(x)

        def g(t):
            q2 = (t / x_mp) ** 2
            dpi = pref_mp * mpmath.fsum(w * _loop_spacelike_mp(q2 * ratio) for w, ratio in loops_mp)
            if linear:
                return dpi
            if abs(1 - dpi) < POLE_TOLERANCE:
                check_pole(complex(dpi))
            return dpi / (1 - dpi)

        return g

    pref = 2.0 * consts.alpha / math.pi

    def g(t: float) -> float:
        q2 = (t / x) ** 2
        dpi = pref * math.fsum(w * loop_integral_spacelike(q2 * ratio) for w, ratio in loops)
        if linear:
            return dpi
        check_pole(dpi)
        return dpi / (1.0 - dpi)

    return g


def phi_r(
    r: float,
    reg: ParticleRegistry | None = None,
    consts: PhysicalConstants = SI,
    mode: str = "full",
    *,
    tolerance: float = 0.0,
    rel_tolerance: float = 1e-12,
    max_intervals: int = 2000,
    digits: int | None = None,
) -> PotentialSample:
    """Screened potential at distance ``r`` (metres) by the oscillatory sine transform.

    ``tolerance`` is absolute and ``rel_tolerance`` relative, both on the
    dimensionless correction; the roundoff floor of the working precision
    always applies. ``digits`` forces an mpmath working precision; by default
    it is used only for EXTENDED_PRECISION_RANGE, where the correction is
    exponentially small.
    """
    if mode not in ("full", "linearized"):
        raise ValueError(f"mode must be 'full' or 'linearized', got {mode!r}")
    if not r > 0.0:
        raise ValueError(f"r must be positive, got {r!r}")
    reg = reg if reg is not None else preset("electron")
    x = r / consts.reduced_compton_wavelength
    if digits is None and EXTENDED_PRECISION_RANGE[0] < x <= EXTENDED_PRECISION_RANGE[1]:
        digits = EXTENDED_DIGITS
    g = _kernel(reg, consts, mode, x, extended=digits is not None)

    me = consts.electron_mass_gev
    # kernel structure sits near q ~ 2 m_j / m_e for each species
    breaks = sorted({x * 2.0 * m / me * f for _, m in reg.loops() for f in (0.1, 1.0, 10.0)})
    res = integrate_sin_over_t(
        g,
        breakpoints=breaks,
        tolerance=tolerance,
        rel_tolerance=rel_tolerance,
        max_intervals=max_intervals,
        digits=digits,
    )
    if not res.converged:
        warnings.warn(
            f"sine transform at r/lambda_C={x:g} stopped at q_max={res.intervals * math.pi / x:g} m_e c/hbar "
            f"without settling (abserr {res.abserr:.3g})",
            TruncationWarning,
            stacklevel=2,
        )
    method = Method.NUMERIC_FULL if mode == "full" else Method.NUMERIC_LINEARIZED
    return _sample(
        r,
        2.0 / math.pi * res.value,
        method,
        consts,
        abserr=2.0 / math.pi * res.abserr,
        intervals=res.intervals,
        converged=res.converged,
    )


def phi_small_r(r: float, consts: PhysicalConstants = SI) -> PotentialSample:
    """Electron-loop correction for r << hbar/(m_e c): (2 alpha/3 pi)(ln(1/x) - gamma - 5/6)."""
    x = r / consts.reduced_compton_wavelength
    corr = 2.0 * consts.alpha / (3.0 * math.pi) * (-math.log(x) - EULER_GAMMA - 5.0 / 6.0)
    return _sample(r, corr, Method.ASYMPTOTIC_SMALL_R, consts, regime_ok=x < 1.0)


def phi_large_r(r: float, consts: PhysicalConstants = SI) -> PotentialSample:
    """Electron-loop correction for r >> hbar/(m_e c): alpha/(4 sqrt(pi)) e^{-2x} / x^{3/2}."""
    x = r / consts.reduced_compton_wavelength
    corr = consts.alpha / (4.0 * math.sqrt(math.pi)) * math.exp(-2.0 * x) / x**1.5
    return _sample(r, corr, Method.ASYMPTOTIC_LARGE_R, consts, regime_ok=x > 1.0)
