"""Bit-exact serialization of session logs.

Two formats:

* Canonical: the system of record. A key-ordered JSON document carrying the
  session header (scale, interval, fps, duration, identifiers) plus every
  event with its cause. Encoding the same log twice yields identical bytes,
  and decode(encode(log)) == log for every valid log.
* Flat export: an ordered array of single-pair objects, each mapping the
  rating (as a decimal string) to the ``HH:MM:SS:FF`` timecode. Playback
  toggles are stripped; only interval ticks and rating changes appear. A
  plain object keyed by rating cannot represent repeated values, hence the
  array of single-pair objects.
"""

from __future__ import annotations

import json

from .engine import ValidationReport, validate_log
from .model import AnnotationEvent, Cause, RatingScale, SessionLog, TimeCode

FORMAT_VERSION = "1"

_HEADER_KEYS = {
    "format_version",
    "session_token",
    "participant_id",
    "project_id",
    "scale",
    "logging_interval",
    "fps",
    "media_duration",
    "events",
}
_SCALE_KEYS = {
    "min_value",
    "max_value",
    "step",
    "neutral_value",
    "negative_label",
    "positive_label",
}
_EVENT_KEYS = {"rating", "timecode", "cause", "wall_clock"}
_CAUSE_TAGS = {c.value: c for c in Cause}


class CodecError(Exception):
    """Base class for log (de)serialization failures."""

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        if index is not None:
            message = f"events[{index}]: {message}"
        super().__init__(message)


class MalformedDocumentError(CodecError):
    pass


class MalformedTimecodeError(CodecError):
    pass


class UnknownCauseError(CodecError):
    pass


class InadmissibleRatingError(CodecError):
    pass


class InvalidLogError(CodecError):
    """The log fails contract validation; the report rides along."""

    def __init__(self, report: ValidationReport):
        self.report = report
        first = report.violations[0]
        super().__init__(
            f"log rejected: {len(report.violations)} violation(s), first is "
            f"{first.kind.value} at event {first.index}: {first.detail}"
        )


def _dump(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")


def encode_canonical(log: SessionLog, validate: bool = True) -> bytes:
    """Serialize a log to the canonical byte-stable JSON document."""
    if validate:
        report = validate_log(log)
        if report.fatal:
            raise InvalidLogError(report)
    doc = {
        "format_version": FORMAT_VERSION,
        "session_token": log.session_token,
        "participant_id": log.participant_id,
        "project_id": log.project_id,
        "scale": log.scale.as_dict(),
        "logging_interval": float(log.logging_interval),
        "fps": int(log.fps),
        "media_duration": float(log.media_duration),
        "events": [
            {
                "rating": event.rating,
                "timecode": str(event.timecode),
                "cause": event.cause.value,
                "wall_clock": None if event.wall_clock is None else float(event.wall_clock),
            }
            for event in log.events
        ],
    }
    return _dump(doc)


def _require(doc: dict, key: str, kinds, what: str):
    if key not in doc:
        raise MalformedDocumentError(f"{what} is missing key {key!r}")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, kinds):
        raise MalformedDocumentError(f"{what} key {key!r} has wrong type: {value!r}")
    return value


def decode_canonical(data: bytes | str) -> SessionLog:
    """Parse canonical bytes back into a SessionLog.

    Tolerates insignificant whitespace, nothing else: wrong field types,
    unknown cause tags, out-of-range ratings and malformed timecodes are
    each rejected with the offending record index.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocumentError(f"not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocumentError("top-level value must be an object")
    unknown = set(doc) - _HEADER_KEYS
    if unknown:
        raise MalformedDocumentError(f"unknown header keys: {sorted(unknown)}")

    version = _require(doc, "format_version", str, "header")
    if version != FORMAT_VERSION:
        raise MalformedDocumentError(f"unsupported format_version {version!r}")

    token = _require(doc, "session_token", str, "header")
    project_id = _require(doc, "project_id", str, "header")
    participant_id = doc.get("participant_id")
    if participant_id is not None and not isinstance(participant_id, str):
        raise MalformedDocumentError(
            f"header key 'participant_id' has wrong type: {participant_id!r}"
        )
    logging_interval = float(_require(doc, "logging_interval", (int, float), "header"))
    if logging_interval <= 0:
        raise MalformedDocumentError(f"logging_interval must be positive: {logging_interval}")
    fps = _require(doc, "fps", int, "header")
    media_duration = float(_require(doc, "media_duration", (int, float), "header"))

    scale_doc = _require(doc, "scale", dict, "header")
    if set(scale_doc) != _SCALE_KEYS:
        raise MalformedDocumentError("scale descriptor has wrong keys")
    for key in ("min_value", "max_value", "step", "neutral_value"):
        _require(scale_doc, key, int, "scale")
    for key in ("negative_label", "positive_label"):
        _require(scale_doc, key, str, "scale")
    try:
        scale = RatingScale.from_dict(scale_doc)
        if fps <= 0:
            raise ValueError(f"fps must be positive, got {fps}")
    except ValueError as exc:
        raise MalformedDocumentError(str(exc)) from exc

    raw_events = _require(doc, "events", list, "header")
    events: list[AnnotationEvent] = []
    for i, record in enumerate(raw_events):
        if not isinstance(record, dict):
            raise MalformedDocumentError("event record must be an object", index=i)
        if set(record) != _EVENT_KEYS:
            raise MalformedDocumentError(
                f"event record keys must be {sorted(_EVENT_KEYS)}", index=i
            )
        rating = record["rating"]
        if isinstance(rating, bool) or not isinstance(rating, int):
            raise MalformedDocumentError(f"rating must be an integer: {rating!r}", index=i)
        if not scale.is_admissible(rating):
            raise InadmissibleRatingError(
                f"rating {rating} outside scale "
                f"[{scale.min_value}, {scale.max_value}] step {scale.step}",
                index=i,
            )
        raw_tc = record["timecode"]
        if not isinstance(raw_tc, str):
            raise MalformedTimecodeError(f"timecode must be a string: {raw_tc!r}", index=i)
        try:
            timecode = TimeCode.parse(raw_tc, fps)
        except ValueError as exc:
            raise MalformedTimecodeError(str(exc), index=i) from exc
        raw_cause = record["cause"]
        cause = _CAUSE_TAGS.get(raw_cause)
        if cause is None:
            raise UnknownCauseError(f"unknown cause tag {raw_cause!r}", index=i)
        wall_clock = record["wall_clock"]
        if wall_clock is not None:
            if isinstance(wall_clock, bool) or not isinstance(wall_clock, (int, float)):
                raise MalformedDocumentError(
                    f"wall_clock must be a number or null: {wall_clock!r}", index=i
                )
            wall_clock = float(wall_clock)
        events.append(AnnotationEvent(rating, timecode, cause, wall_clock))

    return SessionLog(
        session_token=token,
        project_id=project_id,
        scale=scale,
        media_duration=media_duration,
        events=events,
        participant_id=participant_id,
        logging_interval=logging_interval,
        fps=fps,
    )


def export_flat(log: SessionLog) -> bytes:
    """Flat export: one {"rating": "timecode"} pair per slider datum, in
    event order, toggles stripped."""
    entries = [
        {str(event.rating): str(event.timecode)}
        for event in log.events
        if event.cause is not Cause.PLAYBACK_TOGGLE
    ]
    return _dump(entries)


def log_filename(project_id: str, session_token: str) -> str:
    """Collision-free name for a stored canonical log."""
    return f"{project_id}_{session_token}.corae.json"
