"""Landau pole of the one-loop coupling and the semiclassical factor f.

The closed-form solve sets (alpha/3pi) * sum(q^2/e^2) * ln(Lambda^2/mbar^2) = 1,
i.e. hbar c Lambda_L = mbar c^2 * exp(3 pi / (2 alpha sum)). A bisection on
the per-species asymptotic delta_pi is available for registries where the mass
spread matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import bisect

from .constants import SI, PhysicalConstants
from .polarization import A_FACTOR
from .registry import ParticleRegistry


@dataclass(frozen=True)
class LandauResult:
    lambda_l_gev: float
    f_factor: float
    mean_mass_gev: float
    charge_sum: float
    alpha: float
    log_ratio: float  # ln(Lambda_L / mbar); kept so f does not round-trip through exp

    @property
    def log10_lambda_l_gev(self) -> float:
        return math.log10(self.mean_mass_gev) + self.log_ratio / math.log(10.0)


def _result(log_ratio: float, mean_mass: float, charge_sum: float, alpha: float) -> LandauResult:
    f = 2.0 * log_ratio / (12.0 * math.pi**2)
    try:
        lam = mean_mass * math.exp(log_ratio)
    except OverflowError:
        lam = math.inf
    return LandauResult(lam, f, mean_mass, charge_sum, alpha, log_ratio)


def solve_landau_pole(reg: ParticleRegistry, consts: PhysicalConstants = SI) -> LandauResult:
    charge_sum = reg.effective_charge_sum()
    log_ratio = 3.0 * math.pi / (2.0 * consts.alpha * charge_sum)
    return _result(log_ratio, reg.mean_mass_gev, charge_sum, consts.alpha)


def solve_landau_pole_numeric(
    reg: ParticleRegistry, consts: PhysicalConstants = SI, *, xtol: float = 1e-13
) -> LandauResult:
    """Root of the per-species asymptotic delta_pi(-Lambda^2) = 1, in ln Lambda.

    Includes the A factor and each species' own mass, so it differs from the
    closed form by design. Works in logs because Lambda^2 overflows a double for
    small charge sums.
    """
    loops = reg.loops()
    pref = consts.alpha / (3.0 * math.pi)

    def excess(log_lambda: float) -> float:
        return pref * math.fsum(w * (2.0 * log_lambda - math.log(A_FACTOR * m * m)) for w, m in loops) - 1.0

    lo = math.log(max(m for _, m in loops))
    while excess(lo) > 0.0:
        lo -= 10.0
    hi = lo + 1.0
    while excess(hi) < 0.0:
        hi = lo + 2.0 * (hi - lo)
    log_lambda = bisect(excess, lo, hi, xtol=xtol, maxiter=500)
    mean = reg.mean_mass_gev
    return _result(log_lambda - math.log(mean), mean, reg.effective_charge_sum(), consts.alpha)


def geometric_factor(res: LandauResult) -> float:
    """f = ln(Lambda_L^2 / mbar^2) / (12 pi^2)."""
    return res.f_factor


def semiclassical_closure(res: LandauResult) -> float:
    """f * 4 pi alpha * sum(q^2/e^2); equals 1 for the closed-form pole."""
    return res.f_factor * 4.0 * math.pi * res.alpha * res.charge_sum
