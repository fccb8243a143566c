"""Shared domain types: rating scales, frame-accurate timecodes, annotation
events, session logs and project templates.

All types here are plain values. Once constructed they are safe to share
across threads; nothing mutates after __post_init__ validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

DEFAULT_FPS = 30


@dataclass(frozen=True)
class RatingScale:
    """Bounded, discretized, labeled rating dimension.

    The default instance runs -7..+7 in steps of 1 (15 admissible values)
    with a neutral resting point at 0.
    """

    min_value: int = -7
    max_value: int = 7
    step: int = 1
    negative_label: str = "Disagreeable"
    positive_label: str = "Agreeable"
    neutral_value: int = 0

    def __post_init__(self):
        if self.step < 1:
            raise ValueError(f"step must be >= 1, got {self.step}")
        if not (self.min_value < self.neutral_value < self.max_value):
            raise ValueError(
                "scale requires min_value < neutral_value < max_value, got "
                f"{self.min_value} / {self.neutral_value} / {self.max_value}"
            )
        if (self.max_value - self.min_value) % self.step != 0:
            raise ValueError("scale span must be divisible by step")
        if (self.neutral_value - self.min_value) % self.step != 0:
            raise ValueError("neutral_value must sit on the step grid")
        if not self.negative_label or not self.positive_label:
            raise ValueError("scale labels must be non-empty")

    def is_admissible(self, value: int) -> bool:
        return (
            self.min_value <= value <= self.max_value
            and (value - self.min_value) % self.step == 0
        )

    def admissible_values(self) -> range:
        return range(self.min_value, self.max_value + 1, self.step)

    @property
    def point_count(self) -> int:
        return (self.max_value - self.min_value) // self.step + 1

    def as_dict(self) -> dict:
        return {
            "min_value": self.min_value,
            "max_value": self.max_value,
            "step": self.step,
            "neutral_value": self.neutral_value,
            "negative_label": self.negative_label,
            "positive_label": self.positive_label,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RatingScale":
        return cls(
            min_value=d["min_value"],
            max_value=d["max_value"],
            step=d["step"],
            negative_label=d["negative_label"],
            positive_label=d["positive_label"],
            neutral_value=d["neutral_value"],
        )


DEFAULT_SCALE = RatingScale()


@dataclass(frozen=True, order=False)
class TimeCode:
    """Frame-accurate media position at a fixed frame rate.

    Text form is ``HH:MM:SS:FF`` with zero-padded two-digit fields; the frame
    field widens beyond two digits only for frame rates above 100 fps.
    """

    hours: int
    minutes: int
    seconds: int
    frame: int
    fps: int = DEFAULT_FPS

    def __post_init__(self):
        if self.fps <= 0:
            raise ValueError(f"fps must be positive, got {self.fps}")
        if self.hours < 0:
            raise ValueError(f"hours must be non-negative, got {self.hours}")
        if not 0 <= self.minutes <= 59:
            raise ValueError(f"minutes out of range: {self.minutes}")
        if not 0 <= self.seconds <= 59:
            raise ValueError(f"seconds out of range: {self.seconds}")
        if not 0 <= self.frame < self.fps:
            raise ValueError(f"frame out of range for {self.fps} fps: {self.frame}")

    @property
    def total_frames(self) -> int:
        whole = self.hours * 3600 + self.minutes * 60 + self.seconds
        return whole * self.fps + self.frame

    def to_seconds(self) -> float:
        whole = self.hours * 3600 + self.minutes * 60 + self.seconds
        return whole + self.frame / self.fps

    def _key(self):
        # Cross-rate comparison via exact integer cross-multiplication.
        return (self.total_frames, self.fps)

    def __lt__(self, other: "TimeCode") -> bool:
        a, b = self._key(), other._key()
        return a[0] * b[1] < b[0] * a[1]

    def __le__(self, other: "TimeCode") -> bool:
        a, b = self._key(), other._key()
        return a[0] * b[1] <= b[0] * a[1]

    def __gt__(self, other: "TimeCode") -> bool:
        return other < self

    def __ge__(self, other: "TimeCode") -> bool:
        return other <= self

    def __str__(self) -> str:
        width = max(2, len(str(self.fps - 1)))
        return (
            f"{self.hours:02d}:{self.minutes:02d}:{self.seconds:02d}:"
            f"{self.frame:0{width}d}"
        )

    @classmethod
    def zero(cls, fps: int = DEFAULT_FPS) -> "TimeCode":
        return cls(0, 0, 0, 0, fps)

    @classmethod
    def parse(cls, text: str, fps: int = DEFAULT_FPS) -> "TimeCode":
        parts = text.split(":")
        if len(parts) != 4 or not all(p.isdigit() and p != "" for p in parts):
            raise ValueError(f"malformed timecode: {text!r}")
        h, m, s, f = (int(p) for p in parts)
        return cls(h, m, s, f, fps)


def timecode_to_seconds(tc: TimeCode) -> float:
    """Real seconds represented by a timecode: h*3600 + m*60 + s + frame/fps."""
    return tc.to_seconds()


# Positions within BOUNDARY_EPS frames of a frame boundary snap up, absorbing
# the rounding incurred when a frame-exact position travels through a float.
BOUNDARY_EPS = 1e-9


def seconds_to_timecode(t: float, fps: int = DEFAULT_FPS) -> TimeCode:
    """Timecode of the frame containing media position ``t`` (floor(t*fps))."""
    if fps <= 0:
        raise ValueError(f"fps must be positive, got {fps}")
    if t < 0:
        raise ValueError(f"negative media position: {t}")
    total = math.floor(t * fps + BOUNDARY_EPS)
    frame = total % fps
    whole = total // fps
    return TimeCode(whole // 3600, (whole // 60) % 60, whole % 60, frame, fps)


class Cause(str, Enum):
    """Why an annotation datum was logged."""

    INTERVAL_TICK = "interval_tick"
    RATING_CHANGE = "rating_change"
    PLAYBACK_TOGGLE = "playback_toggle"


@dataclass(frozen=True)
class AnnotationEvent:
    """One logged rating datum."""

    rating: int
    timecode: TimeCode
    cause: Cause
    wall_clock: float | None = None


class ProjectState(str, Enum):
    DRAFT = "draft"
    STAGED = "staged"
    PUBLISHED = "published"


@dataclass
class ProjectTemplate:
    """Researcher-facing study configuration.

    media_entries maps a participant slot name to the media file served to
    that slot's annotator.
    """

    project_id: str
    scale: RatingScale = DEFAULT_SCALE
    instructions: str = ""
    logging_interval: float = 1.0
    identifier_prompt_enabled: bool = True
    media_entries: dict[str, str] = field(default_factory=dict)
    state: ProjectState = ProjectState.DRAFT
    fps: int = DEFAULT_FPS

    def __post_init__(self):
        if not self.project_id:
            raise ValueError("project_id must be non-empty")
        if self.logging_interval <= 0:
            raise ValueError("logging_interval must be positive")
        if self.fps <= 0:
            raise ValueError("fps must be positive")
        if self.state is ProjectState.PUBLISHED and not self.media_entries:
            raise ValueError("a published template needs media entries")


@dataclass
class SessionLog:
    """Ordered event stream plus session metadata for one annotator."""

    session_token: str
    project_id: str
    scale: RatingScale
    media_duration: float
    events: list[AnnotationEvent] = field(default_factory=list)
    participant_id: str | None = None
    logging_interval: float = 1.0
    fps: int = DEFAULT_FPS
