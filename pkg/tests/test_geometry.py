"""
Tests for polygon and rectangle primitives.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st
from shapely import contains_xy

from slpr.core.geom import (
    contains_polygon,
    point_to_boundary_distance,
    polygon_area,
    polygon_bbox,
    polygon_intersection_area,
    polygon_iou,
    polygon_iou_many,
    polygon_signed_area,
    rect_iou,
    to_shapely,
    to_svg_path,
    validate,
)
from slpr.exceptions import DegeneratePolygon, InvalidRect
from slpr.models.geometry import AxisRect, Point, Polygon

UNIT_SQUARE = Polygon.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)])
DIAMOND = Polygon.from_coords([(0.5, 0), (1, 0.5), (0.5, 1), (0, 0.5)])


def rect_polygon(x_min, y_min, x_max, y_max) -> Polygon:
    return AxisRect(x_min, y_min, x_max, y_max).to_polygon()


def star_polygon(rng: np.random.Generator, vertices: int = 8, centre=None) -> Polygon:
    """Polygon star-shaped about ``centre``: one vertex per angular sector, random radii."""
    if centre is None:
        centre = rng.uniform(20.0, 80.0, size=2)
    sector = 2.0 * math.pi / vertices
    angles = sector * np.arange(vertices) + rng.uniform(0.0, 0.9 * sector, size=vertices)
    radii = rng.uniform(3.0, 20.0, size=vertices)
    offsets = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    return Polygon.from_coords(np.asarray(centre) + offsets)


class TestPolygonModel:
    """Construction invariants of the value types."""

    def test_too_few_vertices(self):
        """Test rejection of a two-vertex polygon."""
        with pytest.raises(DegeneratePolygon):
            Polygon.from_coords([(0, 0), (1, 1)])

    def test_consecutive_duplicates_rejected(self):
        """Test rejection of repeated consecutive vertices."""
        with pytest.raises(DegeneratePolygon):
            Polygon.from_coords([(0, 0), (1, 0), (1, 0), (0, 1)])

    def test_wraparound_duplicate_rejected(self):
        """Test rejection of a last vertex equal to the first."""
        with pytest.raises(DegeneratePolygon):
            Polygon.from_coords([(0, 0), (1, 0), (1, 1), (0, 0)])

    def test_non_finite_point_rejected(self):
        """Test rejection of NaN coordinates."""
        with pytest.raises(DegeneratePolygon):
            Point(float("nan"), 0.0)

    def test_empty_rect_rejected(self):
        """Test rejection of a zero-width rectangle."""
        with pytest.raises(InvalidRect):
            AxisRect(0, 0, 0, 1)

    def test_rect_helpers(self):
        """Test the derived rectangle properties."""
        rect = AxisRect(0, 0, 4, 1)
        assert rect.width == 4
        assert rect.height == 1
        assert rect.aspect == 0.25
        assert rect.area == 4
        assert len(rect.to_polygon()) == 4


class TestArea:
    """Test cases for polygon areas and validation."""

    def test_unit_square(self):
        """Test the unit square area."""
        assert polygon_area(UNIT_SQUARE) == 1.0

    def test_orientation_independent(self):
        """Test that reversing the ring flips only the signed area."""
        reversed_square = Polygon.from_coords(UNIT_SQUARE.coords[::-1])
        assert polygon_area(reversed_square) == 1.0
        assert polygon_signed_area(reversed_square) == -polygon_signed_area(UNIT_SQUARE)

    def test_triangle(self):
        """Test a right triangle area."""
        assert polygon_area(Polygon.from_coords([(0, 0), (2, 0), (0, 2)])) == 2.0

    def test_collinear_is_degenerate(self):
        """Test that collinear vertices have no area."""
        with pytest.raises(DegeneratePolygon):
            polygon_area(Polygon.from_coords([(0, 0), (1, 1), (2, 2)]))

    def test_validate_rejects_bowtie(self):
        """Test rejection of a self-intersecting ring."""
        bowtie = Polygon.from_coords([(0, 0), (1, 1), (1, 0), (0, 1)])
        with pytest.raises(DegeneratePolygon):
            validate(bowtie)

    def test_validate_accepts_simple(self):
        """Test that a simple polygon passes through unchanged."""
        assert validate(DIAMOND) is DIAMOND


class TestBoundingBox:
    """Test cases for the minimal axis rectangle."""

    def test_diamond(self):
        """Test the diamond bounding box."""
        assert polygon_bbox(DIAMOND) == AxisRect(0, 0, 1, 1)

    def test_offset_rect(self):
        """Test an offset rectangle is its own box."""
        square = Polygon.from_coords([(2, 3), (5, 3), (5, 4), (2, 4)])
        assert polygon_bbox(square) == AxisRect(2, 3, 5, 4)

    def test_vertical_sliver(self):
        """Test a thin vertical sliver."""
        sliver = Polygon.from_coords([(0, 0), (0.1, 0), (0.1, 10), (0, 10)])
        assert polygon_bbox(sliver) == AxisRect(0, 0, 0.1, 10)

    @hyp_settings(max_examples=80, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_contains_polygon_and_is_minimal(self, seed):
        """Test that the box contains the polygon and every side touches a vertex."""
        polygon = star_polygon(np.random.default_rng(seed))
        rect = polygon_bbox(polygon)
        assert contains_polygon(rect.to_polygon(), polygon)
        xs, ys = polygon.coords[:, 0], polygon.coords[:, 1]
        assert (xs.min(), ys.min(), xs.max(), ys.max()) == rect.as_tuple()


class TestIntersectionAndIoU:
    """Test cases for intersection areas and IoU."""

    def test_identical(self):
        """Test IoU 1 for identical polygons."""
        assert polygon_intersection_area(UNIT_SQUARE, UNIT_SQUARE) == pytest.approx(1.0)
        assert polygon_iou(UNIT_SQUARE, UNIT_SQUARE) == pytest.approx(1.0)

    def test_half_shift(self):
        """Test a half-overlapping pair."""
        shifted = UNIT_SQUARE.translate(0.5, 0)
        assert polygon_intersection_area(UNIT_SQUARE, shifted) == pytest.approx(0.5)
        assert polygon_iou(UNIT_SQUARE, shifted) == pytest.approx(1 / 3)

    def test_inscribed_diamond(self):
        """Test the diamond inscribed in the unit square."""
        assert polygon_intersection_area(UNIT_SQUARE, DIAMOND) == pytest.approx(0.5)

    def test_disjoint(self):
        """Test IoU 0 for disjoint polygons."""
        assert polygon_iou(UNIT_SQUARE, UNIT_SQUARE.translate(5, 5)) == 0.0

    def test_non_convex(self):
        """Test a non-convex L-shape."""
        # L-shape made of three unit cells
        ell = Polygon.from_coords([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
        assert polygon_area(ell) == 3.0
        assert polygon_iou(ell, UNIT_SQUARE) == pytest.approx(1 / 3)

    def test_rect_iou(self):
        """Test the closed-form rectangle IoU."""
        assert rect_iou(AxisRect(0, 0, 2, 2), AxisRect(0, 0, 2, 2)) == 1.0
        assert rect_iou(AxisRect(0, 0, 2, 2), AxisRect(1, 0, 3, 2)) == pytest.approx(1 / 3)
        assert rect_iou(AxisRect(0, 0, 1, 1), AxisRect(1, 0, 2, 1)) == 0.0

    def test_many_matches_scalar(self):
        """Test that the batched IoU equals the scalar IoU bit for bit."""
        others = [UNIT_SQUARE.translate(dx, 0.25) for dx in (-0.75, -0.25, 0.0, 0.5, 3.0)]
        batch = polygon_iou_many(DIAMOND, others)
        assert list(batch) == [polygon_iou(DIAMOND, o) for o in others]

    def test_many_empty(self):
        """Test the batched IoU against no polygons."""
        assert polygon_iou_many(UNIT_SQUARE, []).shape == (0,)

    def test_monte_carlo_agreement(self):
        """Test IoU against a Monte-Carlo estimate on a fixed pair."""
        rng = np.random.default_rng(7)
        a = rect_polygon(0, 0, 3, 2)
        b = Polygon.from_coords([(1, -1), (4, 0.5), (2, 3)])
        points = rng.uniform([-1, -2], [5, 4], size=(200_000, 2))
        in_a = contains_xy(to_shapely(a), points[:, 0], points[:, 1])
        in_b = contains_xy(to_shapely(b), points[:, 0], points[:, 1])
        estimate = (in_a & in_b).sum() / (in_a | in_b).sum()
        assert polygon_iou(a, b) == pytest.approx(estimate, abs=0.01)

    def test_monte_carlo_random_pairs(self):
        """Test IoU against Monte-Carlo estimates on 100 random star-shaped pairs."""
        rng = np.random.default_rng(2024)
        agreeing = 0
        for _ in range(100):
            a, b = star_polygon(rng), star_polygon(rng)
            both = np.vstack([a.coords, b.coords])
            points = rng.uniform(both.min(axis=0), both.max(axis=0), size=(200_000, 2))
            in_a = contains_xy(to_shapely(a), points[:, 0], points[:, 1])
            in_b = contains_xy(to_shapely(b), points[:, 0], points[:, 1])
            estimate = (in_a & in_b).sum() / max((in_a | in_b).sum(), 1)
            agreeing += abs(polygon_iou(a, b) - estimate) <= 0.01
        assert agreeing >= 95

    @hyp_settings(max_examples=60, deadline=None)
    @given(
        st.tuples(st.floats(-50, 50), st.floats(-50, 50), st.floats(0.5, 40), st.floats(0.5, 40)),
        st.tuples(st.floats(-50, 50), st.floats(-50, 50), st.floats(0.5, 40), st.floats(0.5, 40)),
    )
    def test_iou_symmetric_and_bounded(self, first, second):
        """Test that IoU is symmetric and within [0, 1]."""
        a = rect_polygon(first[0], first[1], first[0] + first[2], first[1] + first[3])
        b = rect_polygon(second[0], second[1], second[0] + second[2], second[1] + second[3])
        forward = polygon_iou(a, b)
        assert forward == polygon_iou(b, a)
        assert 0.0 <= forward <= 1.0


class TestHelpers:
    """Test cases for distance, containment and SVG helpers."""

    def test_point_to_boundary_distance(self):
        """Test distances from the centre and from a border point."""
        assert point_to_boundary_distance(UNIT_SQUARE, Point(0.5, 0.5)) == pytest.approx(0.5)
        assert point_to_boundary_distance(UNIT_SQUARE, Point(1.0, 0.3)) == pytest.approx(0.0)

    def test_contains_polygon(self):
        """Test containment in both directions."""
        assert contains_polygon(UNIT_SQUARE, DIAMOND)
        assert not contains_polygon(DIAMOND, UNIT_SQUARE)

    @hyp_settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1), st.floats(0.2, 0.95))
    def test_shrunk_polygon_is_contained(self, seed, factor):
        """Test that a star polygon scaled about its kernel centre lies inside itself."""
        rng = np.random.default_rng(seed)
        centre = rng.uniform(20.0, 80.0, size=2)
        outer = star_polygon(rng, centre=centre)
        inner = outer.scale(factor, origin=tuple(centre))
        assert contains_polygon(outer, inner)
        assert polygon_intersection_area(outer, inner) == pytest.approx(polygon_area(inner), rel=1e-9)

    def test_svg_path(self):
        """Test the SVG path dump."""
        assert "<path" in to_svg_path(UNIT_SQUARE)

    def test_translate_and_scale(self):
        """Test translating then scaling about a corner."""
        moved = UNIT_SQUARE.translate(2, 3).scale(2.0, origin=(2, 3))
        assert polygon_bbox(moved) == AxisRect(2, 3, 4, 5)
        assert math.isclose(polygon_area(moved), 4.0)
