from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from icchord.geom import (
    Line,
    RationalPoint,
    Segment,
    SlabPosition,
    bounding_box,
    line_intersection,
    perpendicular_foot_on_vertical,
    pt,
    slab_of,
    slab_position,
    upper_envelope,
)
from icchord.reduction import build_arrangement

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
points = st.builds(RationalPoint, rationals, rationals)


class TestSlab:
    def test_horizontal_segment(self):
        slab = slab_of(Segment(pt(0, 0), pt(1, 0)))
        assert slab_position(slab, pt(F(1, 2), 7)) is SlabPosition.STRICTLY_INSIDE
        assert slab_position(slab, pt(0, -3)) is SlabPosition.ON_BOUNDARY
        assert slab_position(slab, pt(2, 0)) is SlabPosition.OUTSIDE

    def test_vertical_segment(self):
        slab = slab_of(Segment(pt(0, 0), pt(0, 1)))
        assert slab_position(slab, pt(100, F(1, 2))) is SlabPosition.STRICTLY_INSIDE
        assert slab_position(slab, pt(-9, 1)) is SlabPosition.ON_BOUNDARY
        assert slab_position(slab, pt(0, 2)) is SlabPosition.OUTSIDE

    def test_diagonal_boundaries(self):
        slab = slab_of(Segment(pt(0, 0), pt(1, 1)))
        assert set(slab.boundary_lines()) == {Line.from_coefficients(1, 1, 0), Line.from_coefficients(1, 1, 2)}

    def test_zero_length_rejected(self):
        with pytest.raises(ValueError):
            Segment(pt(1, 1), pt(1, 1))

    @given(points, points, points)
    def test_position_symmetric_in_orientation(self, a, b, p):
        if a == b:
            return
        assert slab_position(slab_of(Segment(a, b)), p) == slab_position(slab_of(Segment(b, a)), p)


class TestLines:
    def test_vertical_meets_oblique(self):
        assert line_intersection(Line.vertical(5), Line.through(pt(0, 1), pt(20, -4))) == pt(5, F(-1, 4))

    def test_axes(self):
        assert line_intersection(Line.vertical(0), Line.horizontal(0)) == pt(0, 0)

    def test_parallel(self):
        assert line_intersection(Line.horizontal(1), Line.horizontal(2)) is None

    def test_canonical_form(self):
        assert Line.from_coefficients(F(1, 2), F(-1, 3), 1) == Line.from_coefficients(-3, 2, -6)

    def test_degenerate(self):
        with pytest.raises(ValueError):
            Line.from_coefficients(0, 0, 1)

    @given(points, points, points, points)
    def test_intersection_lies_on_both(self, a, b, c, d):
        if a == b or c == d:
            return
        l1, l2 = Line.through(a, b), Line.through(c, d)
        p = line_intersection(l1, l2)
        if p is not None:
            assert l1.contains(p) and l2.contains(p)


class TestPerpendicularFoot:
    def test_examples(self):
        assert perpendicular_foot_on_vertical(pt(5, F(-1, 4)), Line.point_slope(pt(5, F(-1, 4)), F(-1, 4)), F(39, 8)) == pt(
            F(39, 8), F(-3, 4)
        )
        assert perpendicular_foot_on_vertical(pt(0, 0), Line.point_slope(pt(0, 0), -1), 0) == pt(0, 0)
        assert perpendicular_foot_on_vertical(pt(5, -16), Line.point_slope(pt(5, -16), -4), F(39, 8)) == pt(
            F(39, 8), F(-513, 32)
        )


class TestEnvelope:
    def test_single_line(self):
        env = upper_envelope([Line.horizontal(0)])
        assert len(env.pieces) == 1
        assert env.pieces[0].left is None and env.pieces[0].right is None

    def test_two_lines(self):
        l1 = Line.through(pt(0, 1), pt(4, 0))
        l2 = Line.through(pt(0, 2), pt(3, 0))
        env = upper_envelope([l1, l2])
        assert env.order() == [1, 0]
        assert env.pieces[0].right == pt(F(12, 5), F(2, 5))

    def test_arrangement_order_right_to_left(self):
        layout = build_arrangement(2)
        env = upper_envelope([l.line for l in layout.lines])
        assert env.order()[::-1] == [0, 1, 2, 3]

    @given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=6), rationals)
    def test_height_matches_piece(self, coeffs, x):
        lines = list({Line.point_slope(pt(0, c), m) for m, c in coeffs})
        env = upper_envelope(lines)
        piece = env.piece_at(x)
        assert env.lines[piece.line_id].y_at(x) == env.height(x)


def test_bounding_box():
    assert bounding_box([pt(1, 2), pt(-1, 5), pt(0, 0)]) == (-1, 0, 1, 5)
