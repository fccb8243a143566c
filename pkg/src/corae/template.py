"""Plain-text project template files.

One ``key = value`` pair per line, ``#`` starts a comment. Media entries use
``media.<slot> = <file>``. Newlines inside the instructions text are escaped
as ``\\n``. Format is versioned via the ``template_format`` key.
"""

from __future__ import annotations

from .model import DEFAULT_FPS, ProjectState, ProjectTemplate, RatingScale

TEMPLATE_FORMAT = "1"

_BOOLS = {"true": True, "false": False}


class TemplateError(ValueError):
    pass


def _unescape(text: str) -> str:
    return text.replace("\\n", "\n").replace("\\\\", "\\")


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\n", "\\n")


def parse_template(text: str, default_project_id: str | None = None) -> ProjectTemplate:
    pairs: dict[str, str] = {}
    media: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise TemplateError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key.startswith("media."):
            slot = key[len("media.") :]
            if not slot or not value:
                raise TemplateError(f"line {lineno}: bad media entry {raw!r}")
            media[slot] = value
        elif key in pairs:
            raise TemplateError(f"line {lineno}: duplicate key {key!r}")
        else:
            pairs[key] = value

    def take(key: str, default: str | None = None) -> str:
        if key in pairs:
            return pairs.pop(key)
        if default is None:
            raise TemplateError(f"missing required key {key!r}")
        return default

    def take_int(key: str, default: int) -> int:
        raw = take(key, str(default))
        try:
            return int(raw)
        except ValueError:
            raise TemplateError(f"key {key!r} must be an integer, got {raw!r}") from None

    def take_bool(key: str, default: bool) -> bool:
        raw = take(key, "true" if default else "false").lower()
        if raw not in _BOOLS:
            raise TemplateError(f"key {key!r} must be true or false, got {raw!r}")
        return _BOOLS[raw]

    version = take("template_format", TEMPLATE_FORMAT)
    if version != TEMPLATE_FORMAT:
        raise TemplateError(f"unsupported template_format {version!r}")

    project_id = take("project_id", default_project_id or "")
    raw_state = take("state", ProjectState.DRAFT.value)
    try:
        state = ProjectState(raw_state)
    except ValueError:
        raise TemplateError(f"unknown state {raw_state!r}") from None
    raw_interval = take("logging_interval", "1.0")
    try:
        logging_interval = float(raw_interval)
    except ValueError:
        raise TemplateError(f"logging_interval must be a number, got {raw_interval!r}") from None

    scale_args = dict(
        min_value=take_int("scale_min", -7),
        max_value=take_int("scale_max", 7),
        step=take_int("scale_step", 1),
        neutral_value=take_int("scale_neutral", 0),
        negative_label=take("negative_label", "Disagreeable"),
        positive_label=take("positive_label", "Agreeable"),
    )
    instructions = _unescape(take("instructions", ""))
    identifier_prompt = take_bool("identifier_prompt", True)
    fps = take_int("fps", DEFAULT_FPS)

    if pairs:
        raise TemplateError(f"unknown keys: {sorted(pairs)}")
    try:
        scale = RatingScale(**scale_args)
        return ProjectTemplate(
            project_id=project_id,
            scale=scale,
            instructions=instructions,
            logging_interval=logging_interval,
            identifier_prompt_enabled=identifier_prompt,
            media_entries=media,
            state=state,
            fps=fps,
        )
    except ValueError as exc:
        raise TemplateError(str(exc)) from None


def format_template(template: ProjectTemplate) -> str:
    """Deterministic text form; media entries sorted by slot."""
    scale = template.scale
    lines = [
        f"template_format = {TEMPLATE_FORMAT}",
        f"project_id = {template.project_id}",
        f"state = {template.state.value}",
        f"scale_min = {scale.min_value}",
        f"scale_max = {scale.max_value}",
        f"scale_step = {scale.step}",
        f"scale_neutral = {scale.neutral_value}",
        f"negative_label = {scale.negative_label}",
        f"positive_label = {scale.positive_label}",
        f"instructions = {_escape(template.instructions)}",
        f"logging_interval = {template.logging_interval!r}",
        f"identifier_prompt = {'true' if template.identifier_prompt_enabled else 'false'}",
        f"fps = {template.fps}",
    ]
    for slot in sorted(template.media_entries):
        lines.append(f"media.{slot} = {template.media_entries[slot]}")
    return "\n".join(lines) + "\n"
