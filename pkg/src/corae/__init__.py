"""corae: continuous retrospective affect annotation of recorded dyadic
interactions.

Participants replay a partner's video and rate perceived approach or
withdrawal moment-to-moment on a bounded stepped scale; the platform logs
frame-accurate rating streams, serves the sessions over HTTP, and computes
the interpersonal-perception analytics.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .analysis import (
    AnalysisError,
    IPResult,
    RatingSeries,
    SurveyValidation,
    UndefinedCorrelationError,
    click_rate,
    cumulative_sum,
    dyad_disagreement,
    interpersonal_perception,
    pearson,
    rating_range,
    resample,
    validate_against_survey,
)
from .codec import (
    CodecError,
    InadmissibleRatingError,
    InvalidLogError,
    MalformedDocumentError,
    MalformedTimecodeError,
    UnknownCauseError,
    decode_canonical,
    encode_canonical,
    export_flat,
    log_filename,
)
from .engine import (
    EngineError,
    EngineState,
    RatingEngine,
    Rejection,
    ValidationReport,
    Violation,
    ViolationKind,
    validate_log,
)
from .model import (
    DEFAULT_FPS,
    DEFAULT_SCALE,
    AnnotationEvent,
    Cause,
    ProjectState,
    ProjectTemplate,
    RatingScale,
    SessionLog,
    TimeCode,
    seconds_to_timecode,
    timecode_to_seconds,
)
from .store import ProjectStore
from .template import TemplateError, format_template, parse_template

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "AnnotationEvent",
    "Cause",
    "CodecError",
    "DEFAULT_FPS",
    "DEFAULT_SCALE",
    "EngineError",
    "EngineState",
    "IPResult",
    "InadmissibleRatingError",
    "InvalidLogError",
    "KERNEL_BACKEND",
    "MalformedDocumentError",
    "MalformedTimecodeError",
    "ProjectState",
    "ProjectStore",
    "ProjectTemplate",
    "RatingEngine",
    "RatingScale",
    "RatingSeries",
    "Rejection",
    "SessionLog",
    "SurveyValidation",
    "TemplateError",
    "TimeCode",
    "UndefinedCorrelationError",
    "UnknownCauseError",
    "ValidationReport",
    "Violation",
    "ViolationKind",
    "click_rate",
    "cumulative_sum",
    "decode_canonical",
    "dyad_disagreement",
    "encode_canonical",
    "export_flat",
    "format_template",
    "interpersonal_perception",
    "log_filename",
    "parse_template",
    "pearson",
    "rating_range",
    "resample",
    "seconds_to_timecode",
    "timecode_to_seconds",
    "validate_against_survey",
    "validate_log",
]
