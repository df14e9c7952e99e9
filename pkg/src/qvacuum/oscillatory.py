"""Semi-infinite sine integrals by zero partitioning and Wynn epsilon extrapolation.

    I = integral_0^inf sin(t)/t * h(t) dt

is split at the zeros t = n*pi of sin(t). The interval integrals alternate in
sign, and the epsilon algorithm is applied to the partial sums. ``h`` may grow
slowly (logarithmically), in which case the plain partial sums converge far
too slowly to be useful.

Double precision is the default. Passing ``digits`` switches the interval
integrals and the extrapolation to mpmath at that working precision, for
integrals that are tiny compared with their partial sums.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath
from scipy.integrate import quad

WINDOW = 40


@dataclass(frozen=True)
class OscillatoryResult:
    value: float
    abserr: float
    intervals: int
    converged: bool


def wynn_epsilon(seq: Sequence):
    """Extrapolated limit of ``seq`` and a crude error estimate.

    Works for floats and mpmath numbers. The estimate is taken from the even
    column whose last entries agree best, as in QUADPACK's qelg.
    """
    n = len(seq)
    if n == 0:
        raise ValueError("empty sequence")
    if n < 3:
        return seq[-1], abs(seq[-1] - seq[0]) if n == 2 else math.inf
    best = seq[-1]
    best_err = abs(seq[-1] - seq[-2]) + abs(seq[-1] - seq[-3])
    prev: list = [0] * (n + 1)
    cur: list = list(seq)
    col = 0
    while len(cur) > 1:
        nxt: list = []
        for i in range(len(cur) - 1):
            a, b = cur[i], cur[i + 1]
            if a is None or b is None or prev[i + 1] is None:
                nxt.append(None)
                continue
            d = b - a
            nxt.append(None if d == 0 else prev[i + 1] + 1 / d)
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0 and len(cur) >= 3 and None not in cur[-3:]:
            err = abs(cur[-1] - cur[-2]) + abs(cur[-1] - cur[-3])
            if err < best_err:
                best, best_err = cur[-1], err
    return best, best_err


def _interval_double(f, lo, hi, points, epsabs):
    inner = [p for p in points if lo < p < hi] or None
    val, err = quad(f, lo, hi, epsabs=epsabs, epsrel=1e-13, limit=200, points=inner)
    return val, err


def _interval_mp(f, lo, hi, points):
    nodes = [mpmath.mpf(lo)] + [mpmath.mpf(p) for p in points if lo < p < hi] + [mpmath.mpf(hi)]
    val, err = mpmath.quad(f, nodes, error=True, method="gauss-legendre")
    return val, err


def integrate_sin_over_t(
    h: Callable,
    *,
    breakpoints: Sequence[float] = (),
    tolerance: float = 0.0,
    rel_tolerance: float = 1e-12,
    min_intervals: int = 8,
    max_intervals: int = 2000,
    digits: int | None = None,
) -> OscillatoryResult:
    """integral_0^inf sin(t)/t * h(t) dt.

    ``breakpoints`` are t values where ``h`` changes character; they are passed
    to the interval quadrature. Convergence requires two successive
    extrapolations to agree within max(tolerance, rel_tolerance*|I|, roundoff
    floor), where the floor tracks the size of the partial sums.
    """
    points = sorted(p for p in breakpoints if p > 0.0)
    if digits is None:
        eps = 2.2e-16

        def f(t: float) -> float:
            if t == 0.0:
                return h(0.0)
            return math.sin(t) / t * h(t)

        zero = 0.0
        pi = math.pi
    else:
        eps = 10.0 ** (-digits)

        def f(t):
            if t == 0:
                return h(mpmath.mpf(0))
            return mpmath.sin(t) / t * h(t)

        zero = mpmath.mpf(0)

    ctx = mpmath.workdps(digits) if digits is not None else contextlib.nullcontext()
    with ctx:
        if digits is not None:
            pi = mpmath.pi
        total = zero
        sums = []
        quad_err = 0.0
        scale = 0.0
        last_est = None
        agree = 0
        est, err = zero, math.inf
        n = 0
        for n in range(max_intervals):
            lo, hi = n * pi, (n + 1) * pi
            if digits is None:
                val, e = _interval_double(f, lo, hi, points, epsabs=tolerance * 1e-3)
            else:
                val, e = _interval_mp(f, lo, hi, points)
            total += val
            quad_err += float(e)
            sums.append(total)
            scale = max(scale, abs(float(total)))
            if n + 1 < min_intervals:
                continue
            est, err = wynn_epsilon(sums[-WINDOW:])
            floor = 64.0 * eps * scale
            limit = max(tolerance, rel_tolerance * abs(float(est)), floor)
            if last_est is not None and abs(float(est - last_est)) <= limit:
                agree += 1
                if agree >= 2:
                    abserr = max(float(err), abs(float(est - last_est)), floor) + quad_err
                    return OscillatoryResult(float(est), abserr, n + 1, True)
            else:
                agree = 0
            last_est = est
        abserr = max(float(err), floor) if last_est is not None else math.inf
        return OscillatoryResult(float(est), abserr, n + 1, False)
