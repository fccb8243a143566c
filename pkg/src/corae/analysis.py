"""Session metrics over logged rating streams.

The pipeline: resample a log to a fixed-period series (zero-order hold,
default 10 Hz), take the cumulative sum, fit a least-squares line against
the sample index. The slope of that line is the interpersonal-perception
summary of the session. Alongside it: Pearson correlation for comparing the
slopes against one-shot survey ratings, interaction statistics (click rate,
rating range) and mean-squared-error disagreement between the two raters of
a dyad.

The regression abscissa is the sample index, not wall time. Under a constant
rating c the cumulative sum is exactly linear with slope c, which gives the
summary an interpretable unit (scale units per sample) and makes the slope
stable under refinement of the resampling period. slope / period is the
cumulative-sum growth rate per second; it scales with the sampling rate, so
it only compares sessions resampled at one fixed period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate

from . import _kernels
from .model import Cause, SessionLog


class AnalysisError(ValueError):
    pass


class UndefinedCorrelationError(AnalysisError):
    """Correlation requested against a zero-variance input."""


@dataclass
class RatingSeries:
    """Fixed-period rating samples starting at ``origin`` seconds."""

    values: list[int]
    period: float = 0.1
    origin: float = 0.0


@dataclass(frozen=True)
class IPResult:
    """Least-squares fit through the cumulative rating sum.

    slope is in scale units per sample and does not depend on the
    resampling period beyond discretization error.
    """

    slope: float
    intercept: float
    r_squared: float


def resample(log: SessionLog, period: float = 0.1) -> RatingSeries:
    """Zero-order hold of a log's rating trace onto the grid k*period,
    spanning [0, media_duration]. A slider trace is a right-continuous step
    function, so the value at each grid point is the rating of the latest
    event at or before it; before the first event the neutral value holds.
    """
    if period <= 0:
        raise AnalysisError(f"period must be positive, got {period}")
    if not log.events:
        raise AnalysisError("cannot resample an empty log")
    times = [e.timecode.to_seconds() for e in log.events]
    values = [float(e.rating) for e in log.events]
    out = _kernels.zoh_resample(
        times, values, period, log.media_duration, float(log.scale.neutral_value)
    )
    return RatingSeries(values=[int(v) for v in out], period=period)


def cumulative_sum(series: RatingSeries) -> list[int]:
    return list(accumulate(series.values))


def interpersonal_perception(series: RatingSeries) -> IPResult:
    """Slope, intercept and R^2 of the OLS line through cumsum(values)
    against the 0-based sample index.

    R^2 is defined as 1 for a zero-variance cumulative sum with zero
    residuals (the all-neutral session is a legitimate degenerate input).
    """
    if len(series.values) < 2:
        raise AnalysisError(
            f"need at least 2 samples to fit, got {len(series.values)}"
        )
    slope, intercept, r_squared = _kernels.cumsum_ols([float(v) for v in series.values])
    return IPResult(slope=slope, intercept=intercept, r_squared=r_squared)


def pearson(x, y) -> float:
    """Sample Pearson correlation coefficient, in [-1, 1]."""
    if len(x) != len(y):
        raise AnalysisError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise AnalysisError("need at least 2 points")
    r = _kernels.pearson([float(v) for v in x], [float(v) for v in y])
    if math.isnan(r):
        raise UndefinedCorrelationError("an input has zero variance")
    return r


def click_rate(log: SessionLog) -> float:
    """Mean time between successive rating changes, in seconds.

    Interval ticks and playback toggles do not count; only events where the
    rating actually moved.
    """
    times = [
        e.timecode.to_seconds() for e in log.events if e.cause is Cause.RATING_CHANGE
    ]
    if len(times) < 2:
        raise AnalysisError("click rate needs at least two rating changes")
    diffs = [b - a for a, b in zip(times, times[1:])]
    return math.fsum(diffs) / len(diffs)


def rating_range(log: SessionLog) -> int:
    """Max minus min rating over every event of the session."""
    if not log.events:
        raise AnalysisError("rating range of an empty log")
    ratings = [e.rating for e in log.events]
    return max(ratings) - min(ratings)


def dyad_disagreement(a: RatingSeries, b: RatingSeries) -> float:
    """Mean squared difference between two raters' series, truncated to the
    common prefix (annotation durations differ in practice)."""
    if a.period != b.period:
        raise AnalysisError(f"period mismatch: {a.period} vs {b.period}")
    n = min(len(a.values), len(b.values))
    if n == 0:
        raise AnalysisError("series have no overlap")
    return _kernels.mse(
        [float(v) for v in a.values[:n]], [float(v) for v in b.values[:n]]
    )


@dataclass
class SurveyValidation:
    """Correlation between per-session slopes and one-shot survey ratings."""

    r: float
    ip_slopes: list[float]


def validate_against_survey(
    sessions: list[tuple[SessionLog, int]], period: float = 0.1
) -> SurveyValidation:
    """Correlate each session's cumulative-sum slope with the static rating
    given for the same partner."""
    if len(sessions) < 3:
        raise AnalysisError(f"need at least 3 sessions, got {len(sessions)}")
    slopes = [
        interpersonal_perception(resample(log, period)).slope for log, _ in sessions
    ]
    statics = [float(rating) for _, rating in sessions]
    return SurveyValidation(r=pearson(slopes, statics), ip_slopes=slopes)


@dataclass
class SessionMetrics:
    """One report row."""

    token: str
    ip: IPResult
    click_rate: float | None
    rating_range: int


def session_metrics(log: SessionLog, period: float = 0.1) -> SessionMetrics:
    series = resample(log, period)
    ip = interpersonal_perception(series)
    changes = sum(1 for e in log.events if e.cause is Cause.RATING_CHANGE)
    return SessionMetrics(
        token=log.session_token,
        ip=ip,
        click_rate=click_rate(log) if changes >= 2 else None,
        rating_range=rating_range(log),
    )


REPORT_HEADER = "token\tip_slope\tip_intercept\tr_squared\tclick_rate\trating_range"


def format_report(rows: list[SessionMetrics]) -> str:
    """Flat tabular report, one row per session, sorted by token."""
    lines = [REPORT_HEADER]
    for m in sorted(rows, key=lambda m: m.token):
        click = "" if m.click_rate is None else repr(m.click_rate)
        lines.append(
            f"{m.token}\t{m.ip.slope!r}\t{m.ip.intercept!r}\t"
            f"{m.ip.r_squared!r}\t{click}\t{m.rating_range}"
        )
    return "\n".join(lines) + "\n"


def format_cumsum_series(series: RatingSeries) -> str:
    """Per-session cumulative-sum trace for plotting: sample index, time in
    seconds, cumulative sum."""
    lines = ["index\ttime_seconds\tcumulative_sum"]
    for i, s in enumerate(cumulative_sum(series)):
        lines.append(f"{i}\t{i * series.period!r}\t{s}")
    return "\n".join(lines) + "\n"
