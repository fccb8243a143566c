"""Session state machine enforcing the annotation interaction contract.

Central rules: the rating starts neutral at timecode zero, may only move
while the video is playing, moves one scale step at a time, stays inside the
scale bounds, and the current value is re-logged at every logging-interval
boundary crossed during playback.

validate_log replays the same contract over a parsed log so the server can
reject streams a well-behaved client could never have produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .model import (
    AnnotationEvent,
    Cause,
    ProjectState,
    ProjectTemplate,
    SessionLog,
    TimeCode,
    seconds_to_timecode,
)

_EPS = 1e-9


class EngineError(ValueError):
    """An operation was invoked outside its precondition."""


class Rejection(Enum):
    """Signal returned when an input is legal but has no effect."""

    PAUSED = "paused"
    BOUND = "bound"
    FINISHED = "finished"


@dataclass(frozen=True)
class EngineState:
    """Snapshot of the mutable session state."""

    current_rating: int
    playing: bool
    media_position: TimeCode
    last_interval_tick: float
    finished: bool


class RatingEngine:
    """One annotation session. Instances are externally synchronized: a
    single logical input stream drives each engine; independent sessions run
    in parallel freely.
    """

    def __init__(
        self,
        template: ProjectTemplate,
        media_duration: float,
        session_token: str = "",
        participant_id: str | None = None,
    ):
        if template.state is not ProjectState.PUBLISHED:
            raise EngineError(
                f"template {template.project_id!r} is {template.state.value}, "
                "only published templates start sessions"
            )
        if media_duration <= 0:
            raise EngineError(f"media_duration must be positive: {media_duration}")
        self.template = template
        self.scale = template.scale
        self.fps = template.fps
        self.logging_interval = template.logging_interval
        self.media_duration = float(media_duration)
        self.session_token = session_token
        self.participant_id = participant_id

        self.current_rating = self.scale.neutral_value
        self.playing = False
        self.media_position = TimeCode.zero(self.fps)
        self.last_interval_tick = 0.0
        self.finished = False
        # The frame containing media_duration; reaching it ends the session.
        # Durations rarely fall on a frame boundary, so comparing raw seconds
        # would leave the final fraction of a frame unreachable.
        self._end_frame = seconds_to_timecode(self.media_duration, self.fps).total_frames
        # Head event: neutral value at timecode zero (interval boundary 0).
        self.events: list[AnnotationEvent] = [
            AnnotationEvent(self.current_rating, self.media_position, Cause.INTERVAL_TICK)
        ]

    @property
    def state(self) -> EngineState:
        return EngineState(
            current_rating=self.current_rating,
            playing=self.playing,
            media_position=self.media_position,
            last_interval_tick=self.last_interval_tick,
            finished=self.finished,
        )

    def _emit(self, cause: Cause, timecode: TimeCode, wall_clock: float | None) -> AnnotationEvent:
        event = AnnotationEvent(self.current_rating, timecode, cause, wall_clock)
        self.events.append(event)
        return event

    def toggle_playback(self, wall_clock: float | None = None) -> AnnotationEvent | Rejection:
        if self.finished:
            return Rejection.FINISHED
        self.playing = not self.playing
        return self._emit(Cause.PLAYBACK_TOGGLE, self.media_position, wall_clock)

    def adjust(self, direction: int, wall_clock: float | None = None) -> AnnotationEvent | Rejection:
        if direction not in (1, -1):
            raise EngineError(f"direction must be +1 or -1, got {direction}")
        if not self.playing:
            return Rejection.PAUSED
        target = self.current_rating + direction * self.scale.step
        if not self.scale.is_admissible(target):
            return Rejection.BOUND
        self.current_rating = target
        return self._emit(Cause.RATING_CHANGE, self.media_position, wall_clock)

    def advance(self, new_position: TimeCode, wall_clock: float | None = None) -> list[AnnotationEvent]:
        """Move playback forward, logging an interval tick for every
        logging-interval boundary crossed in (old position, new position].
        """
        if not self.playing:
            raise EngineError("cannot advance while paused")
        if new_position < self.media_position:
            raise EngineError(
                f"position moved backwards: {self.media_position} -> {new_position}"
            )
        old_s = self.media_position.to_seconds()
        new_s = min(new_position.to_seconds(), self.media_duration)

        emitted: list[AnnotationEvent] = []
        interval = self.logging_interval
        k = int(old_s / interval + _EPS) + 1
        while k * interval <= new_s + _EPS:
            boundary = k * interval
            tick_tc = seconds_to_timecode(min(boundary, self.media_duration), self.fps)
            emitted.append(self._emit(Cause.INTERVAL_TICK, tick_tc, wall_clock))
            self.last_interval_tick = boundary
            k += 1

        if new_position.total_frames >= self._end_frame:
            self.media_position = seconds_to_timecode(self.media_duration, self.fps)
            self.finished = True
            self.playing = False
        else:
            self.media_position = new_position
        return emitted

    def to_log(self) -> SessionLog:
        return SessionLog(
            session_token=self.session_token,
            project_id=self.template.project_id,
            scale=self.scale,
            media_duration=self.media_duration,
            events=list(self.events),
            participant_id=self.participant_id,
            logging_interval=self.logging_interval,
            fps=self.fps,
        )


def init(template: ProjectTemplate, media_duration: float, **kwargs) -> RatingEngine:
    """Start a session for a published template."""
    return RatingEngine(template, media_duration, **kwargs)


class ViolationKind(str, Enum):
    STEP_JUMP = "step_jump"
    PAUSED_CHANGE = "paused_change"
    NON_MONOTONE = "non_monotone"
    INADMISSIBLE_RATING = "inadmissible_rating"
    MISSING_TICK = "missing_tick"
    MISSING_HEAD = "missing_head"


# A missing interval tick degrades timing density but leaves the rating
# trace itself intact (playback stalls produce the same signature), so it is
# reported as a warning rather than a fatal defect.
FATAL_KINDS = frozenset(ViolationKind) - {ViolationKind.MISSING_TICK}


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    index: int
    detail: str

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "index": self.index, "detail": self.detail}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def fatal(self) -> bool:
        return any(v.kind in FATAL_KINDS for v in self.violations)

    def of_kind(self, kind: ViolationKind) -> list[Violation]:
        return [v for v in self.violations if v.kind is kind]

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "fatal": self.fatal,
            "violations": [v.as_dict() for v in self.violations],
        }


def validate_log(log: SessionLog) -> ValidationReport:
    """Replay a log against the session contract and report every violation.

    Checked: neutral head event at timecode zero, monotone timecodes,
    admissible values, single-step rating changes, no changes while paused,
    and interval-tick density during playback (gap between consecutive
    events while playing must not exceed logging_interval + one frame).
    """
    report = ValidationReport()
    add = report.violations.append
    events = log.events
    scale = log.scale

    if not events:
        add(Violation(ViolationKind.MISSING_HEAD, 0, "log has no events"))
        return report

    head = events[0]
    if head.rating != scale.neutral_value or head.timecode.total_frames != 0:
        add(
            Violation(
                ViolationKind.MISSING_HEAD,
                0,
                f"first event must be neutral ({scale.neutral_value}) at "
                f"timecode zero, got {head.rating} at {head.timecode}",
            )
        )

    max_gap = log.logging_interval + 1.0 / log.fps + _EPS
    playing = False
    prev = None
    prev_seconds = 0.0
    for i, event in enumerate(events):
        if not scale.is_admissible(event.rating):
            add(
                Violation(
                    ViolationKind.INADMISSIBLE_RATING,
                    i,
                    f"rating {event.rating} is not admissible on "
                    f"[{scale.min_value}, {scale.max_value}] step {scale.step}",
                )
            )
        t = event.timecode.to_seconds()
        if prev is not None:
            if event.timecode.total_frames < prev.timecode.total_frames:
                add(
                    Violation(
                        ViolationKind.NON_MONOTONE,
                        i,
                        f"timecode {event.timecode} precedes {prev.timecode}",
                    )
                )
            if playing and t - prev_seconds > max_gap:
                add(
                    Violation(
                        ViolationKind.MISSING_TICK,
                        i,
                        f"{t - prev_seconds:.4f}s of playback without an "
                        f"interval tick (limit {max_gap:.4f}s)",
                    )
                )
            if event.cause is Cause.RATING_CHANGE:
                delta = abs(event.rating - prev.rating)
                if delta != scale.step:
                    add(
                        Violation(
                            ViolationKind.STEP_JUMP,
                            i,
                            f"rating moved {prev.rating} -> {event.rating}, "
                            f"expected a single step of {scale.step}",
                        )
                    )
        if event.cause is Cause.RATING_CHANGE and not playing:
            add(
                Violation(
                    ViolationKind.PAUSED_CHANGE,
                    i,
                    "rating changed while playback was paused",
                )
            )
        if event.cause is Cause.PLAYBACK_TOGGLE:
            playing = not playing
        prev = event
        prev_seconds = t

    return report
