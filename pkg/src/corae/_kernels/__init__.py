"""Kernel backend selection.

Prefers the compiled extension (corae._kernels._native) and falls back to
the pure-Python implementation when it is not built. Set CORAE_PURE_KERNELS=1
to force the fallback, e.g. for benchmarking one backend against the other.
"""

from __future__ import annotations

import os
from array import array

if os.environ.get("CORAE_PURE_KERNELS") == "1":
    from . import pyimpl as _impl

    BACKEND = "python"
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]

        BACKEND = "native"
    except ImportError:
        from . import pyimpl as _impl

        BACKEND = "python"

_NATIVE = BACKEND == "native"


def _doubles(seq):
    if _NATIVE and not isinstance(seq, array):
        return array("d", seq)
    return seq


def cumsum_ols(values) -> tuple[float, float, float]:
    return _impl.cumsum_ols(_doubles(values))


def zoh_resample(times, values, period: float, duration: float, initial: float) -> list[float]:
    return _impl.zoh_resample(_doubles(times), _doubles(values), period, duration, initial)


def pearson(x, y) -> float:
    return _impl.pearson(_doubles(x), _doubles(y))


def mse(a, b) -> float:
    return _impl.mse(_doubles(a), _doubles(b))
