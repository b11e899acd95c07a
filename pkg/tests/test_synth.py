"""
Tests for synthetic shapes and their analytic sliding-line oracles.
"""
import math

import pytest

from slpr.core.codec import decoded_points, encode, sliding_positions
from slpr.core.geom import point_to_boundary_distance, polygon_area
from slpr.core.synth import (
    BASE_TOLERANCE,
    expand_specs,
    generate,
    oracle_intersections,
    resolve_params,
    sample_corpus,
    sampling_tolerance,
)
from slpr.exceptions import InvalidSpec, NoIntersection
from slpr.models.geometry import AxisRect
from slpr.models.shape import ShapeKind, ShapeSpec
from slpr.models.target import SlidingAxis

RECT_SPEC = ShapeSpec(kind=ShapeKind.RECT, seed=1,
                      params={"x_min": 10.0, "y_min": 20.0, "x_max": 50.0, "y_max": 40.0})
DIAMOND_SPEC = ShapeSpec(kind=ShapeKind.ROTATED_QUAD, seed=2, params={
    "cx": 0.5, "cy": 0.5, "width": math.sqrt(0.5), "height": math.sqrt(0.5), "angle": 45.0, "jitter": 0.0,
})
FLAT_BAND_SPEC = ShapeSpec(kind=ShapeKind.SINE_BAND, seed=3, params={
    "x0": 10.0, "y0": 100.0, "length": 200.0, "height": 20.0, "amplitude": 0.0, "period": 150.0,
})


class TestGenerate:
    """Test cases for shape generation."""

    def test_rect(self):
        """Test the rectangle polygon."""
        assert generate(RECT_SPEC) == AxisRect(10, 20, 50, 40).to_polygon()

    def test_diamond_quad(self):
        """Test a 45 degree square without jitter."""
        expected = [(0.5, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 0.5)]
        for vertex, corner in zip(generate(DIAMOND_SPEC).vertices, expected):
            assert vertex.as_tuple() == pytest.approx(corner, abs=1e-12)

    def test_flat_band_is_rectangle(self):
        """Test that a zero-amplitude band is a rectangle."""
        band = generate(FLAT_BAND_SPEC)
        assert len(band) == 256
        assert polygon_area(band) == pytest.approx(4000.0)

    def test_deterministic(self):
        """Test that seeds determine shapes and corpora."""
        spec = ShapeSpec(kind=ShapeKind.SINE_BAND, seed=99)
        assert generate(spec) == generate(spec)
        assert sample_corpus(10, seed=5) == sample_corpus(10, seed=5)

    def test_explicit_parameter_keeps_the_others(self):
        """Test that fixing one parameter leaves the seeded ones unchanged."""
        base = resolve_params(ShapeSpec(kind=ShapeKind.ROTATED_QUAD, seed=8))
        fixed = resolve_params(ShapeSpec(kind=ShapeKind.ROTATED_QUAD, seed=8, params={"angle": 10.0}))
        assert fixed["angle"] == 10.0
        assert {k: v for k, v in fixed.items() if k != "angle"} == {k: v for k, v in base.items() if k != "angle"}

    @pytest.mark.parametrize("spec", [
        ShapeSpec(kind=ShapeKind.ROTATED_QUAD, params={"jitter": 0.3}),
        ShapeSpec(kind=ShapeKind.SINE_BAND, params={"samples": 10}),
        ShapeSpec(kind=ShapeKind.SINE_BAND, params={"samples": 60.5}),
        ShapeSpec(kind=ShapeKind.RECT, params={"x_min": 5.0, "x_max": 1.0}),
    ])
    def test_invalid_specs(self, spec):
        """Test rejection of out-of-range parameters."""
        with pytest.raises(InvalidSpec):
            generate(spec)

    def test_unknown_parameter(self):
        """Test rejection of a parameter the kind does not have."""
        with pytest.raises(InvalidSpec):
            ShapeSpec.from_record("kind=rect seed=1 radius=3")


class TestOracle:
    """Test cases for the analytic sliding-line oracles."""

    def test_rect(self):
        """Test the rectangle oracle and a line outside it."""
        assert oracle_intersections(RECT_SPEC, SlidingAxis.VERTICAL_SLIDING, 30.0) == (10.0, 50.0)
        assert oracle_intersections(RECT_SPEC, SlidingAxis.HORIZONTAL_SLIDING, 30.0) == (20.0, 40.0)
        with pytest.raises(NoIntersection):
            oracle_intersections(RECT_SPEC, SlidingAxis.VERTICAL_SLIDING, 45.0)

    def test_diamond(self):
        """Test the diamond oracle on the first line."""
        low, high = oracle_intersections(DIAMOND_SPEC, SlidingAxis.VERTICAL_SLIDING, 0.125)
        assert (low, high) == pytest.approx((0.375, 0.625), abs=1e-9)

    def test_flat_band(self):
        """Test the flat band oracle and a missing line."""
        assert oracle_intersections(FLAT_BAND_SPEC, SlidingAxis.VERTICAL_SLIDING, 100.0) == (10.0, 210.0)
        assert oracle_intersections(FLAT_BAND_SPEC, SlidingAxis.HORIZONTAL_SLIDING, 60.0) == (90.0, 110.0)
        with pytest.raises(NoIntersection):
            oracle_intersections(FLAT_BAND_SPEC, SlidingAxis.HORIZONTAL_SLIDING, 300.0)

    def test_tolerances(self):
        """Test the sampling tolerances per kind and axis."""
        assert sampling_tolerance(RECT_SPEC, SlidingAxis.VERTICAL_SLIDING) == BASE_TOLERANCE
        step = 200.0 / 127
        assert sampling_tolerance(FLAT_BAND_SPEC, SlidingAxis.VERTICAL_SLIDING) == pytest.approx(step + BASE_TOLERANCE)
        assert sampling_tolerance(FLAT_BAND_SPEC, SlidingAxis.HORIZONTAL_SLIDING) == BASE_TOLERANCE

    def test_encoder_agrees_with_oracle(self):
        """Test encoder output against the oracles on 1,000 seeded shapes."""
        for spec in sample_corpus(1000, seed=0):
            polygon = generate(spec)
            target = encode(polygon, 7)
            for axis, pairs in ((SlidingAxis.VERTICAL_SLIDING, target.x_pairs()),
                                (SlidingAxis.HORIZONTAL_SLIDING, target.y_pairs())):
                tolerance = sampling_tolerance(spec, axis)
                for position, pair in zip(sliding_positions(target.rect, 7, axis), pairs):
                    expected = oracle_intersections(spec, axis, position)
                    assert pair == pytest.approx(expected, abs=tolerance), spec.to_record()
            for point in decoded_points(target):
                assert point_to_boundary_distance(polygon, point) < 1e-6


class TestCorpus:
    """Test cases for seeded corpora and spec records."""

    def test_sample_corpus_cycles_kinds(self):
        """Test that kinds cycle and seeds differ."""
        specs = sample_corpus(6, seed=1)
        assert [s.kind for s in specs] == [ShapeKind.RECT, ShapeKind.ROTATED_QUAD, ShapeKind.SINE_BAND] * 2
        assert len({s.seed for s in specs}) == 6

    def test_shared_params_are_filtered(self):
        """Test that shared parameters only reach kinds that have them."""
        specs = sample_corpus(2, kinds=[ShapeKind.SINE_BAND, ShapeKind.RECT], params={"samples": 64})
        assert specs[0].params == {"samples": 64.0}
        assert specs[1].params == {}

    def test_expand_specs(self):
        """Test template expansion and its determinism."""
        templates = [ShapeSpec(kind=ShapeKind.SINE_BAND, seed=1, params={"amplitude": 3.0}),
                     ShapeSpec(kind=ShapeKind.RECT, seed=2)]
        specs = expand_specs(templates, 5)
        assert [s.kind for s in specs] == [ShapeKind.SINE_BAND, ShapeKind.RECT] * 2 + [ShapeKind.SINE_BAND]
        assert all(s.params == {"amplitude": 3.0} for s in specs[0::2])
        assert specs == expand_specs(templates, 5)

    def test_expand_needs_templates(self):
        """Test rejection of an empty template list."""
        with pytest.raises(InvalidSpec):
            expand_specs([], 3)

    def test_record_round_trip(self):
        """Test the key=value record form."""
        assert ShapeSpec.from_record(DIAMOND_SPEC.to_record()) == DIAMOND_SPEC
