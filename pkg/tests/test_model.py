import pytest
from hypothesis import given, strategies as st

from corae.model import (
    DEFAULT_SCALE,
    ProjectState,
    ProjectTemplate,
    RatingScale,
    TimeCode,
    seconds_to_timecode,
    timecode_to_seconds,
)


class TestRatingScale:
    def test_default_scale_has_15_points(self):
        assert DEFAULT_SCALE.point_count == 15
        assert list(DEFAULT_SCALE.admissible_values()) == list(range(-7, 8))

    def test_labels(self):
        assert DEFAULT_SCALE.negative_label == "Disagreeable"
        assert DEFAULT_SCALE.positive_label == "Agreeable"

    @pytest.mark.parametrize("value,ok", [(-7, True), (7, True), (0, True), (8, False), (-8, False)])
    def test_admissibility(self, value, ok):
        assert DEFAULT_SCALE.is_admissible(value) is ok

    def test_step_grid(self):
        scale = RatingScale(0, 10, 2, "low", "high", 4)
        assert scale.is_admissible(6)
        assert not scale.is_admissible(5)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(min_value=0, max_value=0),
            dict(min_value=2, max_value=-2),
            dict(step=0),
            dict(step=3),  # span 14 not divisible by 3
            dict(negative_label=""),
            dict(neutral_value=7),
        ],
    )
    def test_invalid_scales_rejected(self, kwargs):
        base = dict(
            min_value=-7, max_value=7, step=1,
            negative_label="a", positive_label="b", neutral_value=0,
        )
        base.update(kwargs)
        with pytest.raises(ValueError):
            RatingScale(**base)

    def test_dict_round_trip(self):
        assert RatingScale.from_dict(DEFAULT_SCALE.as_dict()) == DEFAULT_SCALE


class TestTimeCode:
    def test_zero(self):
        assert timecode_to_seconds(TimeCode.zero()) == 0.0

    def test_ninety_and_a_half_seconds(self):
        assert timecode_to_seconds(TimeCode(0, 1, 30, 15)) == 90.5

    def test_one_hour_last_frame(self):
        assert timecode_to_seconds(TimeCode(1, 0, 0, 29)) == pytest.approx(
            3600 + 29 / 30, abs=1e-12
        )

    def test_seconds_to_timecode_zero(self):
        assert seconds_to_timecode(0.0) == TimeCode.zero()

    def test_seconds_to_timecode_inverse(self):
        assert seconds_to_timecode(90.5) == TimeCode(0, 1, 30, 15)

    def test_partial_frame_floors(self):
        # floor(0.034 * 30) = 1
        assert seconds_to_timecode(0.034) == TimeCode(0, 0, 0, 1)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            seconds_to_timecode(-0.1)

    def test_bad_fps_rejected(self):
        with pytest.raises(ValueError):
            seconds_to_timecode(1.0, 0)

    @pytest.mark.parametrize(
        "h,m,s,f",
        [(-1, 0, 0, 0), (0, 60, 0, 0), (0, 0, 60, 0), (0, 0, 0, 30), (0, 0, 0, -1)],
    )
    def test_field_ranges_enforced(self, h, m, s, f):
        with pytest.raises(ValueError):
            TimeCode(h, m, s, f, 30)

    def test_text_form(self):
        assert str(TimeCode(1, 2, 3, 4)) == "01:02:03:04"
        assert str(TimeCode(0, 0, 0, 0)) == "00:00:00:00"

    def test_parse_round_trip(self):
        tc = TimeCode(0, 12, 34, 29)
        assert TimeCode.parse(str(tc), 30) == tc

    @pytest.mark.parametrize("text", ["00:00:61:00", "0:0:0", "aa:bb:cc:dd", "00:00:00:-1", ""])
    def test_parse_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            TimeCode.parse(text, 30)

    @given(
        st.integers(0, 3),
        st.integers(0, 59),
        st.integers(0, 59),
        st.integers(0, 29),
    )
    def test_round_trip_property(self, h, m, s, f):
        tc = TimeCode(h, m, s, f, 30)
        assert seconds_to_timecode(timecode_to_seconds(tc), 30) == tc

    @given(
        st.tuples(st.integers(0, 2), st.integers(0, 59), st.integers(0, 59), st.integers(0, 29)),
        st.tuples(st.integers(0, 2), st.integers(0, 59), st.integers(0, 59), st.integers(0, 29)),
    )
    def test_ordering_matches_seconds(self, a, b):
        ta = TimeCode(*a, 30)
        tb = TimeCode(*b, 30)
        assert (ta < tb) == (timecode_to_seconds(ta) < timecode_to_seconds(tb))
        assert (ta < tb) == (tuple(a) < tuple(b))

    def test_frame_field_width_tracks_fps(self):
        assert str(TimeCode(0, 0, 1, 100, fps=120)) == "00:00:01:100"


class TestProjectTemplate:
    def test_zero_interval_rejected(self):
        with pytest.raises(ValueError):
            ProjectTemplate(project_id="p", logging_interval=0.0)

    def test_published_needs_media(self):
        with pytest.raises(ValueError):
            ProjectTemplate(project_id="p", state=ProjectState.PUBLISHED)

    def test_published_with_media_ok(self):
        t = ProjectTemplate(
            project_id="p", state=ProjectState.PUBLISHED, media_entries={"A": "a.mp4"}
        )
        assert t.state is ProjectState.PUBLISHED
