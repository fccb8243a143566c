# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the analysis hot loops.

Mirrors pyimpl exactly (same formulas, Neumaier-compensated summation in
place of math.fsum). Built optionally; corae._kernels falls back to the
pure-Python implementation when this module is missing.
"""

from libc.math cimport copysign, fabs, sqrt, NAN


cdef struct CompSum:
    double s
    double c


cdef inline void comp_add(CompSum *acc, double x) nogil:
    cdef double t = acc.s + x
    if fabs(acc.s) >= fabs(x):
        acc.c += (acc.s - t) + x
    else:
        acc.c += (x - t) + acc.s
    acc.s = t


cdef inline double comp_total(CompSum *acc) nogil:
    return acc.s + acc.c


def cumsum_ols(double[:] values):
    """OLS fit of cumsum(values) against the 0-based sample index."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t i
    cdef double running = 0.0
    cdef double mean_x = (n - 1) / 2.0
    cdef double sxx = n * (<double> n * n - 1.0) / 12.0
    cdef CompSum total
    total.s = 0.0
    total.c = 0.0
    for i in range(n):
        running += values[i]
        comp_add(&total, running)
    cdef double mean_y = comp_total(&total) / n

    cdef CompSum sxy, ss_tot
    sxy.s = sxy.c = 0.0
    ss_tot.s = ss_tot.c = 0.0
    running = 0.0
    cdef double dy
    for i in range(n):
        running += values[i]
        dy = running - mean_y
        comp_add(&sxy, (i - mean_x) * dy)
        comp_add(&ss_tot, dy * dy)
    cdef double slope = comp_total(&sxy) / sxx
    cdef double intercept = mean_y - slope * mean_x

    cdef CompSum ss_res
    ss_res.s = ss_res.c = 0.0
    cdef double resid
    running = 0.0
    for i in range(n):
        running += values[i]
        resid = running - intercept - slope * i
        comp_add(&ss_res, resid * resid)
    cdef double tot = comp_total(&ss_tot)
    cdef double r_squared = 1.0 if tot == 0.0 else 1.0 - comp_total(&ss_res) / tot
    return slope, intercept, r_squared


def zoh_resample(double[:] times, double[:] values, double period,
                 double duration, double initial):
    """Zero-order hold onto the grid k*period for k*period <= duration."""
    cdef Py_ssize_t n = times.shape[0]
    cdef Py_ssize_t m = <Py_ssize_t> ((duration + 1e-9) / period) + 1
    cdef list out = [0.0] * m
    cdef Py_ssize_t j = -1
    cdef Py_ssize_t k
    cdef double t
    for k in range(m):
        t = k * period
        while j + 1 < n and times[j + 1] <= t + 1e-9:
            j += 1
        out[k] = values[j] if j >= 0 else initial
    return out


def pearson(double[:] x, double[:] y):
    """Sample Pearson correlation; NaN when either input has zero variance."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i
    cdef CompSum sx, sy
    sx.s = sx.c = 0.0
    sy.s = sy.c = 0.0
    for i in range(n):
        comp_add(&sx, x[i])
        comp_add(&sy, y[i])
    cdef double mean_x = comp_total(&sx) / n
    cdef double mean_y = comp_total(&sy) / n

    cdef CompSum num, dxx, dyy
    num.s = num.c = 0.0
    dxx.s = dxx.c = 0.0
    dyy.s = dyy.c = 0.0
    cdef double a, b
    for i in range(n):
        a = x[i] - mean_x
        b = y[i] - mean_y
        comp_add(&num, a * b)
        comp_add(&dxx, a * a)
        comp_add(&dyy, b * b)
    cdef double cov = comp_total(&num)
    cdef double vx = comp_total(&dxx)
    cdef double vy = comp_total(&dyy)
    if vx <= 0.0 or vy <= 0.0:
        return NAN
    if cov * cov >= vx * vy:
        return copysign(1.0, cov)
    return cov / sqrt(vx * vy)


def mse(double[:] a, double[:] b):
    """Mean squared pointwise difference over equal-length buffers."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i
    cdef CompSum acc
    acc.s = acc.c = 0.0
    cdef double d
    for i in range(n):
        d = a[i] - b[i]
        comp_add(&acc, d * d)
    return comp_total(&acc) / n
