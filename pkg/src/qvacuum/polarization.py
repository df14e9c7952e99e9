"""One-loop vacuum polarizability and the running permittivity built from it.

Conventions
-----------
``delta_pi`` is dimensionless: eps0(k^2) = eps0 * (1 - delta_pi). Spacelike
k^2 gives delta_pi > 0, so eps0(k^2) < eps0 and alpha_eff > alpha.
Above a pair threshold (timelike s = k^2/m^2 > 4) the log argument turns
negative; k^2 + i*eta picks ln(-|a|) = ln|a| - i*pi, hence Im delta_pi <= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .constants import SI, PhysicalConstants, Wavevector
from .errors import ConvergenceError, LandauPoleError, SeriesDivergenceError
from .registry import ParticleRegistry

# A = exp(5/3) in the large-|k^2| logarithm.
A_FACTOR = math.exp(5.0 / 3.0)
POLE_TOLERANCE = 1e-9
QUAD_ABS_TOL = 1e-12


def threshold_roots(s: float) -> tuple[float, float] | None:
    """Roots of 1 - s x(1-x) in (0, 1), present only for s >= 4."""
    if s < 4.0:
        return None
    d = math.sqrt(max(0.0, 1.0 - 4.0 / s))
    lo = 0.5 * (1.0 - d)
    # 1 - d cancels for large s; use the product of roots x_lo * x_hi = 1/s.
    if lo < 1e-3:
        lo = (1.0 / s) / (0.5 * (1.0 + d))
    return lo, 1.0 - lo


def _primitive(x: float) -> float:
    # antiderivative of x(1-x)
    return x * x / 2.0 - x**3 / 3.0


# Above this |s| the logarithms ln|s| + ln x(1-x) are split off analytically.
LARGE_S = 1e3


def _log_gap(t: float) -> float:
    # ln|1 - t|
    return math.log1p(-t) if t < 1.0 else math.log(t - 1.0)


def _quad(f, lo: float, hi: float, tol: float, points, s: float) -> tuple[float, float]:
    value, abserr, _info, *rest = quad(f, lo, hi, epsabs=tol, epsrel=1e-12, limit=200, points=points, full_output=1)
    if rest:
        raise ConvergenceError(f"loop integral did not converge at s={s!r}: {rest[0]}", abserr)
    return value, abserr


def _loop_real_large(s: float, tol: float) -> tuple[float, float]:
    """Real part for |s| >= LARGE_S.

    ln|1 - s u| = ln|s| + ln u + ln|1 - 1/(s u)| with u = x(1-x). The first
    two integrate to ln|s|/6 - 5/18; the rest, written through the root
    x0 = 1/(s x1) of 1 - s u (negative when s < 0), is symmetric about 1/2
    and confined to a layer of width ~|x0| at each end.
    """
    x1 = 0.5 * (1.0 + math.sqrt(1.0 - 4.0 / s))
    x0 = 1.0 / (s * x1)

    def rest(x: float) -> float:
        return x * (1.0 - x) * (_log_gap(x0 / x) + _log_gap(x0 / (1.0 - x)))

    w = abs(x0)
    points = [p for p in (w, 10.0 * w, 100.0 * w, 1e4 * w) if p < 0.5]
    value, abserr = _quad(rest, 0.0, 0.5, 0.5 * tol, points, s)
    return math.log(abs(s)) / 6.0 - 5.0 / 18.0 + 2.0 * value, 2.0 * abserr


def loop_integral(s: float, tol: float = QUAD_ABS_TOL) -> tuple[complex, float]:
    """Integral over x in [0, 1] of x(1-x) ln[1 - s x(1-x)] and its error estimate.

    ``s`` is hbar^2 k^2 / (m c)^2 with sign. Returns ``(value, abserr)``.
    """
    if s == 0.0:
        return 0j, 0.0

    roots = threshold_roots(s)
    imag = 0.0
    if roots is not None:
        imag = -math.pi * (_primitive(roots[1]) - _primitive(roots[0]))
    if abs(s) >= LARGE_S:
        value, abserr = _loop_real_large(s, tol)
        return complex(value, imag), abserr

    def real_part(x: float) -> float:
        u = x * (1.0 - x)
        arg = -s * u
        if arg > -0.5:
            return u * math.log1p(arg)
        if roots is None:
            return u * math.log(1.0 + arg)
        # factorized 1 - s x(1-x) = s (x - x_lo)(x - x_hi) keeps digits near the roots
        gap = abs(x - roots[0]) * abs(x - roots[1])
        return u * (math.log(s) + math.log(max(gap, 1e-300)))

    points = sorted(set(roots)) if roots is not None else None
    value, abserr = _quad(real_part, 0.0, 1.0, tol, points, s)
    return complex(value, imag), abserr


def loop_integral_spacelike(a: float) -> float:
    """Closed form of the loop integral at s = -a, a >= 0.

    Used where the kernel is evaluated many times (Coulomb transform); the
    quadrature in ``loop_integral`` is the reference.
    """
    if a < 0.0:
        raise ValueError("closed form covers spacelike arguments only (a >= 0)")
    if a < 0.5:
        # ln(1+y) series; each term integrates to a Beta function B(n+2, n+2)
        total = 0.0
        term_a = 1.0
        for n in range(1, 60):
            term_a *= a
            beta = math.exp(2.0 * math.lgamma(n + 2) - math.lgamma(2 * n + 4))
            contrib = term_a * beta / n
            total += contrib if n % 2 else -contrib
            if contrib < 1e-18 * abs(total):
                break
        return total
    b = math.sqrt(1.0 + 4.0 / a)
    b_minus_1 = (4.0 / a) / (b + 1.0)
    return (-5.0 / 3.0 + 4.0 / a + (1.0 - 2.0 / a) * b * math.log((b + 1.0) / b_minus_1)) / 6.0


def _k2_value(k2: Wavevector | float) -> float:
    return k2.k2_gev2 if isinstance(k2, Wavevector) else float(k2)


def delta_pi_exact(
    k2: Wavevector | float,
    reg: ParticleRegistry,
    consts: PhysicalConstants = SI,
    *,
    tol: float = QUAD_ABS_TOL,
    return_error: bool = False,
):
    """One-loop delta_pi(k^2) summed over the registry, by adaptive quadrature.

    delta_pi = (2 alpha / pi) * sum_j w_j * loop_integral(k^2 / m_j^2), with
    w_j = multiplicity_j (q_j/e)^2. Override-only registries put the whole
    charge sum at the mean mass.
    """
    k2v = _k2_value(k2)
    pref = 2.0 * consts.alpha / math.pi
    total = 0j
    err = 0.0
    for weight, mass in reg.loops():
        val, e = loop_integral(k2v / (mass * mass), tol)
        total += weight * val
        err += weight * e
    total *= pref
    err *= pref
    return (total, err) if return_error else total


def delta_pi_asymptotic(k2: Wavevector | float, reg: ParticleRegistry, consts: PhysicalConstants = SI) -> float:
    """Large-|k^2| form: (alpha/3pi) sum_j w_j ln(|k^2| / (A m_j^2))."""
    k2v = abs(_k2_value(k2))
    if k2v == 0.0:
        raise ValueError("asymptotic form diverges at k^2 = 0")
    s = math.fsum(w * math.log(k2v / (A_FACTOR * m * m)) for w, m in reg.loops())
    return consts.alpha / (3.0 * math.pi) * s


def pi2_zero(
    cutoff_gev: float, reg: ParticleRegistry, include_A: bool = True, consts: PhysicalConstants = SI
) -> float:
    """On-shell polarizability with a momentum cut-off (energy hbar c Lambda in GeV).

    ``include_A`` sums per species with ln(Lambda^2 / (A m_j^2)); without it the
    whole charge sum uses the mean mass and no A factor.
    """
    scale = max(reg.max_mass_gev, reg.mean_mass_gev) if not include_A else reg.max_mass_gev
    if not cutoff_gev > scale:
        raise ValueError(f"cut-off {cutoff_gev!r} GeV must exceed the mass scale {scale!r} GeV")
    pref = consts.alpha / (3.0 * math.pi)
    if include_A:
        return pref * math.fsum(w * (2.0 * math.log(cutoff_gev / m) - 5.0 / 3.0) for w, m in reg.loops())
    return pref * reg.effective_charge_sum() * 2.0 * math.log(cutoff_gev / reg.mean_mass_gev)


def check_pole(delta_pi: complex) -> None:
    if abs(1.0 - delta_pi) < POLE_TOLERANCE:
        raise LandauPoleError(f"1 - delta_pi = {1.0 - delta_pi!r}: at the Landau pole", delta_pi)


def eps0_from_delta_pi(delta_pi: complex, consts: PhysicalConstants = SI) -> float:
    check_pole(delta_pi)
    return consts.eps0 * (1.0 - complex(delta_pi).real)


def alpha_eff_from_delta_pi(delta_pi: complex, consts: PhysicalConstants = SI) -> complex:
    check_pole(delta_pi)
    return consts.alpha / (1.0 - complex(delta_pi))


def eps0_of_k2(k2: Wavevector | float, reg: ParticleRegistry, consts: PhysicalConstants = SI) -> float:
    return eps0_from_delta_pi(delta_pi_exact(k2, reg, consts), consts)


def mu0_of_k2(k2: Wavevector | float, reg: ParticleRegistry, consts: PhysicalConstants = SI) -> float:
    return 1.0 / (consts.c**2 * eps0_of_k2(k2, reg, consts))


def alpha_eff(k2: Wavevector | float, reg: ParticleRegistry, consts: PhysicalConstants = SI) -> complex:
    return alpha_eff_from_delta_pi(delta_pi_exact(k2, reg, consts), consts)


@dataclass(frozen=True)
class PolarizationResult:
    k2: Wavevector
    delta_pi: complex
    eps0_of_k2: float
    mu0_of_k2: float
    alpha_eff: complex
    abserr: float = 0.0
    z3_at_cutoff: float | None = None


def polarize(
    k2: Wavevector | float,
    reg: ParticleRegistry,
    consts: PhysicalConstants = SI,
    *,
    cutoff_gev: float | None = None,
    tol: float = QUAD_ABS_TOL,
) -> PolarizationResult:
    """Everything the dielectric model derives from delta_pi at one k^2."""
    kv = k2 if isinstance(k2, Wavevector) else Wavevector(float(k2))
    dpi, err = delta_pi_exact(kv, reg, consts, tol=tol, return_error=True)
    eps = eps0_from_delta_pi(dpi, consts)
    z3 = None if cutoff_gev is None else 1.0 - pi2_zero(cutoff_gev, reg, True, consts)
    return PolarizationResult(
        k2=kv,
        delta_pi=dpi,
        eps0_of_k2=eps,
        mu0_of_k2=1.0 / (consts.c**2 * eps),
        alpha_eff=alpha_eff_from_delta_pi(dpi, consts),
        abserr=err,
        z3_at_cutoff=z3,
    )


@dataclass(frozen=True)
class PropagatorValue:
    """Physical photon propagator: diagonal * (-g^{mu nu}) removed, i.e. i D_F = diagonal * g.

    ``diagonal`` = -1 / (eps0 (1 - delta_pi) (k^2 + i eta)) with eps0 in F/m and
    k^2 in GeV^2.
    """

    k2: Wavevector
    eta: float
    diagonal: complex


def propagator_from_delta_pi(
    delta_pi: complex, k2_gev2: float, eta: float, consts: PhysicalConstants = SI
) -> complex:
    if not eta > 0.0:
        raise ValueError("eta must be positive")
    check_pole(delta_pi)
    return -1.0 / (consts.eps0 * (1.0 - complex(delta_pi)) * complex(k2_gev2, eta))


def propagator_series_from_delta_pi(
    delta_pi: complex, k2_gev2: float, eta: float, n_terms: int, consts: PhysicalConstants = SI
) -> complex:
    """Bare propagator times the partial sum 1 + dpi + ... + dpi^N."""
    if not eta > 0.0:
        raise ValueError("eta must be positive")
    if n_terms < 0:
        raise ValueError("n_terms must be non-negative")
    dpi = complex(delta_pi)
    if abs(dpi) >= 1.0:
        raise SeriesDivergenceError(f"|delta_pi| = {abs(dpi)!r} >= 1: the geometric series diverges")
    partial = 0j
    term = 1 + 0j
    for _ in range(n_terms + 1):
        partial += term
        term *= dpi
    return -partial / (consts.eps0 * complex(k2_gev2, eta))


def propagator(
    k2: Wavevector | float, eta: float, reg: ParticleRegistry, consts: PhysicalConstants = SI
) -> PropagatorValue:
    kv = k2 if isinstance(k2, Wavevector) else Wavevector(float(k2))
    dpi = delta_pi_exact(kv, reg, consts)
    return PropagatorValue(kv, eta, propagator_from_delta_pi(dpi, kv.k2_gev2, eta, consts))


def propagator_series(
    k2: Wavevector | float, eta: float, n_terms: int, reg: ParticleRegistry, consts: PhysicalConstants = SI
) -> complex:
    kv = k2 if isinstance(k2, Wavevector) else Wavevector(float(k2))
    dpi = delta_pi_exact(kv, reg, consts)
    return propagator_series_from_delta_pi(dpi, kv.k2_gev2, eta, n_terms, consts)
