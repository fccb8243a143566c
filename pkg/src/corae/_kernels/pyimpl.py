"""Pure-Python kernel implementations.

These are the fallback for corae._kernels._native and the reference the
compiled extension is benchmarked against. Summations use math.fsum so the
two backends agree to within a few ulps even on long series.
"""

from __future__ import annotations

import math
from itertools import accumulate


def cumsum_ols(values) -> tuple[float, float, float]:
    """Least-squares line through the cumulative sum of ``values`` against
    the 0-based sample index. Returns (slope, intercept, r_squared)."""
    n = len(values)
    sums = list(accumulate(values))
    mean_x = (n - 1) / 2.0
    mean_y = math.fsum(sums) / n
    # Exact closed form for sum((i - mean_x)**2), i = 0..n-1.
    sxx = n * (n * n - 1) / 12.0
    sxy = math.fsum((i - mean_x) * (y - mean_y) for i, y in enumerate(sums))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = math.fsum((y - intercept - slope * i) ** 2 for i, y in enumerate(sums))
    ss_tot = math.fsum((y - mean_y) ** 2 for y in sums)
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return slope, intercept, r_squared


def zoh_resample(times, values, period: float, duration: float, initial: float) -> list[float]:
    """Zero-order hold of the step function defined by (times, values) onto
    the grid k*period for k*period <= duration."""
    out: list[float] = []
    n = len(times)
    j = -1
    k = 0
    while True:
        t = k * period
        if t > duration + 1e-9:
            break
        while j + 1 < n and times[j + 1] <= t + 1e-9:
            j += 1
        out.append(values[j] if j >= 0 else initial)
        k += 1
    return out


def pearson(x, y) -> float:
    """Sample Pearson correlation; NaN when either input has zero variance."""
    n = len(x)
    mean_x = math.fsum(x) / n
    mean_y = math.fsum(y) / n
    dx = [v - mean_x for v in x]
    dy = [v - mean_y for v in y]
    num = math.fsum(a * b for a, b in zip(dx, dy))
    dxx = math.fsum(a * a for a in dx)
    dyy = math.fsum(b * b for b in dy)
    if dxx <= 0.0 or dyy <= 0.0:
        return math.nan
    # Perfectly (anti)correlated inputs must come out exactly +/-1.
    if num * num >= dxx * dyy:
        return math.copysign(1.0, num)
    return num / math.sqrt(dxx * dyy)


def mse(a, b) -> float:
    """Mean squared pointwise difference over equal-length sequences."""
    n = len(a)
    return math.fsum((u - v) ** 2 for u, v in zip(a, b)) / n
