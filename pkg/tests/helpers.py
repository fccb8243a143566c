"""Shared session builders for the test suite: templates, engine-driven
random legal sessions, and targeted log mutations."""

from __future__ import annotations

import dataclasses
import random

from corae.engine import RatingEngine
from corae.model import (
    DEFAULT_SCALE,
    AnnotationEvent,
    Cause,
    ProjectState,
    ProjectTemplate,
    RatingScale,
    SessionLog,
    seconds_to_timecode,
)

SMALL_SCALE = RatingScale(-3, 3, 1, "Cold", "Warm", 0)
COARSE_SCALE = RatingScale(0, 10, 2, "Withdrawn", "Engaged", 4)


def make_template(
    project_id: str = "proj",
    scale: RatingScale = DEFAULT_SCALE,
    logging_interval: float = 1.0,
    fps: int = 30,
    state: ProjectState = ProjectState.PUBLISHED,
    slots: tuple[str, ...] = ("A", "B"),
    instructions: str = "Rate how your partner came across, moment to moment.",
    identifier_prompt: bool = True,
) -> ProjectTemplate:
    return ProjectTemplate(
        project_id=project_id,
        scale=scale,
        instructions=instructions,
        logging_interval=logging_interval,
        identifier_prompt_enabled=identifier_prompt,
        media_entries={slot: f"{slot.lower()}.mp4" for slot in slots},
        state=state,
        fps=fps,
    )


def drive_random_session(
    rng: random.Random,
    template: ProjectTemplate | None = None,
    duration: float = 30.0,
    max_actions: int = 60,
    token: str = "tok",
    participant_id: str | None = None,
    bias: float = 0.0,
) -> RatingEngine:
    """Drive an engine with a random sequence of legal inputs.

    ``bias`` in [-1, 1] skews adjustments toward one end of the scale, which
    the synthetic study generator uses to give sessions distinct levels.
    """
    if template is None:
        template = make_template()
    engine = RatingEngine(
        template, duration, session_token=token, participant_id=participant_id
    )
    fps = template.fps
    for _ in range(max_actions):
        if engine.finished:
            break
        if not engine.playing:
            # Occasionally poke the slider while paused; legal, rejected.
            if rng.random() < 0.15:
                engine.adjust(rng.choice((1, -1)))
            engine.toggle_playback()
            continue
        roll = rng.random()
        if roll < 0.45:
            direction = 1 if rng.random() < 0.5 + 0.5 * bias else -1
            engine.adjust(direction)
        elif roll < 0.85:
            current = engine.media_position.to_seconds()
            target = current + rng.uniform(0.05, 2.4)
            engine.advance(seconds_to_timecode(min(target, duration), fps))
        else:
            engine.toggle_playback()
    return engine


def random_log(rng: random.Random, **kwargs) -> SessionLog:
    return drive_random_session(rng, **kwargs).to_log()


def finished_session(
    rng: random.Random,
    template: ProjectTemplate | None = None,
    duration: float = 20.0,
    token: str = "tok",
    participant_id: str | None = None,
    bias: float = 0.0,
) -> RatingEngine:
    """Like drive_random_session but always runs playback to the end."""
    if template is None:
        template = make_template()
    engine = drive_random_session(
        rng,
        template=template,
        duration=duration,
        max_actions=80,
        token=token,
        participant_id=participant_id,
        bias=bias,
    )
    while not engine.finished:
        if not engine.playing:
            engine.toggle_playback()
        current = engine.media_position.to_seconds()
        engine.advance(
            seconds_to_timecode(min(current + 2.0, duration), template.fps)
        )
    return engine


# -- log mutations -----------------------------------------------------------


def _clone(log: SessionLog, events: list[AnnotationEvent]) -> SessionLog:
    return dataclasses.replace(log, events=events)


def inject_step_jump(log: SessionLog) -> SessionLog:
    """Make one rating change jump two steps instead of one."""
    step = log.scale.step
    for i, event in enumerate(log.events):
        if event.cause is not Cause.RATING_CHANGE or i == 0:
            continue
        prev = log.events[i - 1].rating
        for target in (prev + 2 * step, prev - 2 * step):
            if log.scale.is_admissible(target):
                events = list(log.events)
                events[i] = dataclasses.replace(event, rating=target)
                return _clone(log, events)
    raise AssertionError("log has no mutable rating change")


def inject_paused_change(log: SessionLog) -> SessionLog:
    """Insert a rating change before playback ever starts."""
    head = log.events[0]
    step = log.scale.step
    target = head.rating + step
    if not log.scale.is_admissible(target):
        target = head.rating - step
    intruder = AnnotationEvent(target, head.timecode, Cause.RATING_CHANGE)
    events = [head, intruder] + list(log.events[1:])
    return _clone(log, events)


def remove_tick(log: SessionLog) -> SessionLog:
    """Drop an interval tick whose removal opens a playback gap larger than
    logging_interval + one frame."""
    limit = log.logging_interval + 1.0 / log.fps
    for i in range(1, len(log.events) - 1):
        event = log.events[i]
        if event.cause is not Cause.INTERVAL_TICK:
            continue
        before, after = log.events[i - 1], log.events[i + 1]
        if before.cause is Cause.PLAYBACK_TOGGLE or after.cause is Cause.PLAYBACK_TOGGLE:
            continue
        gap = after.timecode.to_seconds() - before.timecode.to_seconds()
        if gap > limit + 2.0 / log.fps:
            events = list(log.events)
            del events[i]
            return _clone(log, events)
    raise AssertionError("log has no removable interval tick")
