import pytest

from helpers import make_template
from corae.model import ProjectState
from corae.template import TemplateError, format_template, parse_template

MINIMAL = """
# dyadic discussion study
project_id = demo
media.A = a.mp4
media.B = b.mp4
"""


def test_minimal_template_uses_defaults():
    t = parse_template(MINIMAL)
    assert t.project_id == "demo"
    assert t.scale.point_count == 15
    assert t.logging_interval == 1.0
    assert t.identifier_prompt_enabled is True
    assert t.state is ProjectState.DRAFT
    assert t.fps == 30
    assert t.media_entries == {"A": "a.mp4", "B": "b.mp4"}


def test_round_trip():
    template = make_template(instructions="line one\nline two")
    parsed = parse_template(format_template(template))
    assert parsed == template


def test_project_id_fallback():
    t = parse_template("media.A = a.mp4", default_project_id="fallback")
    assert t.project_id == "fallback"


@pytest.mark.parametrize(
    "text",
    [
        "project_id = p\nscale_min = x",
        "project_id = p\nmystery = 1",
        "project_id = p\nstate = shipped",
        "project_id = p\nproject_id = q",
        "project_id = p\nlogging_interval = 0",
        "project_id = p\nidentifier_prompt = maybe",
        "just a line without equals",
        "project_id = p\nmedia. = a.mp4",
        "project_id = p\ntemplate_format = 9",
    ],
)
def test_bad_templates_rejected(text):
    with pytest.raises(TemplateError):
        parse_template(text)


def test_instructions_escape_newlines():
    template = make_template(instructions="a\nb\\c")
    text = format_template(template)
    assert "\na" not in text.split("instructions")[1].split("\n")[0]
    assert parse_template(text).instructions == "a\nb\\c"


def test_format_is_deterministic():
    template = make_template(slots=("B", "A", "C"))
    assert format_template(template) == format_template(template)
