"""Independent reference computations the test suite checks the package
against.

Everything here is deliberately brute force: exact rational normal
equations, definitional correlation sums, and a linear-scan hold. None of
it shares code with the implementations under test.
"""

from __future__ import annotations

import math
from fractions import Fraction


def ols_cumsum_exact(values) -> tuple[Fraction, Fraction, Fraction]:
    """Exact normal-equations fit of cumsum(values) against the 0-based
    index. Integer inputs only; all arithmetic is rational."""
    n = len(values)
    assert n >= 2
    sums = []
    running = 0
    for v in values:
        assert isinstance(v, int)
        running += v
        sums.append(running)
    sx = n * (n - 1) // 2
    sxx = (n - 1) * n * (2 * n - 1) // 6
    sy = sum(sums)
    sxy = sum(i * s for i, s in enumerate(sums))
    syy = sum(s * s for s in sums)

    den = n * sxx - sx * sx
    slope = Fraction(n * sxy - sx * sy, den)
    intercept = (Fraction(sy) - slope * sx) / n
    ss_tot = Fraction(syy) - Fraction(sy * sy, n)
    ss_res = (
        Fraction(syy)
        + n * intercept**2
        + slope**2 * sxx
        - 2 * intercept * sy
        - 2 * slope * sxy
        + 2 * intercept * slope * sx
    )
    r_squared = Fraction(1) if ss_tot == 0 else 1 - ss_res / ss_tot
    return slope, intercept, r_squared


def pearson_exact(x, y) -> float | None:
    """Definitional sample correlation with exact rational sums; None when
    either input has zero variance."""
    n = len(x)
    fx = [Fraction(v) for v in x]
    fy = [Fraction(v) for v in y]
    sx, sy = sum(fx), sum(fy)
    num = n * sum(a * b for a, b in zip(fx, fy)) - sx * sy
    d1 = n * sum(a * a for a in fx) - sx * sx
    d2 = n * sum(b * b for b in fy) - sy * sy
    if d1 == 0 or d2 == 0:
        return None
    return float(num) / math.sqrt(float(d1) * float(d2))


def zoh_brute(times, values, period: float, duration: float, initial):
    """Hold by linear scan: for every grid point, search the entire event
    list for the last event at or before it."""
    out = []
    k = 0
    while k * period <= duration + 1e-9:
        t = k * period
        current = initial
        for et, ev in zip(times, values):
            if et <= t + 1e-9:
                current = ev
        out.append(current)
        k += 1
    return out


def mse_brute(a, b) -> float:
    n = min(len(a), len(b))
    return sum((u - v) ** 2 for u, v in zip(a[:n], b[:n])) / n
