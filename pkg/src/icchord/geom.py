"""Exact rational plane geometry: points, segments, lines, slabs, upper envelopes.

Every coordinate is a :class:`fractions.Fraction`; no predicate ever touches a float.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional, Sequence

Rational = Fraction


def Q(value, den=1) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if den != 1:
        return Fraction(value, den)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return Fraction(value)


class RationalPoint(NamedTuple):
    x: Fraction
    y: Fraction

    def __sub__(self, other):  # type: ignore[override]
        return RationalPoint(self.x - other.x, self.y - other.y)

    def __add__(self, other):  # type: ignore[override]
        return RationalPoint(self.x + other.x, self.y + other.y)

    def scale(self, k) -> "RationalPoint":
        return RationalPoint(self.x * k, self.y * k)

    def dot(self, other) -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other) -> Fraction:
        return self.x * other.y - self.y * other.x

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def __repr__(self) -> str:
        return f"P({self.x}, {self.y})"


def pt(x, y) -> RationalPoint:
    return RationalPoint(Q(x), Q(y))


def dist2(p: RationalPoint, q: RationalPoint) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def orient(a: RationalPoint, b: RationalPoint, c: RationalPoint) -> int:
    """Sign of the turn a -> b -> c (+1 left, -1 right, 0 collinear)."""
    v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Segment:
    a: RationalPoint
    b: RationalPoint

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"zero-length segment at {self.a}")

    @property
    def direction(self) -> RationalPoint:
        return self.b - self.a

    def length2(self) -> Fraction:
        return self.direction.norm2()

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)


class Line(NamedTuple):
    """The line ``a*x + b*y = c`` with integer coefficients in canonical form."""

    a: int
    b: int
    c: int

    @classmethod
    def from_coefficients(cls, a, b, c) -> "Line":
        a, b, c = Q(a), Q(b), Q(c)
        if a == 0 and b == 0:
            raise ValueError("degenerate line: a = b = 0")
        den = 1
        for v in (a, b, c):
            den = den * v.denominator // gcd(den, v.denominator)
        ia, ib, ic = (int(v * den) for v in (a, b, c))
        g = gcd(gcd(abs(ia), abs(ib)), abs(ic))
        ia, ib, ic = ia // g, ib // g, ic // g
        if ia < 0 or (ia == 0 and ib < 0):
            ia, ib, ic = -ia, -ib, -ic
        return cls(ia, ib, ic)

    @classmethod
    def through(cls, p: RationalPoint, q: RationalPoint) -> "Line":
        if p == q:
            raise ValueError("a line needs two distinct points")
        a = q.y - p.y
        b = p.x - q.x
        return cls.from_coefficients(a, b, a * p.x + b * p.y)

    @classmethod
    def vertical(cls, x) -> "Line":
        return cls.from_coefficients(1, 0, x)

    @classmethod
    def horizontal(cls, y) -> "Line":
        return cls.from_coefficients(0, 1, y)

    @classmethod
    def point_slope(cls, p: RationalPoint, slope) -> "Line":
        slope = Q(slope)
        # y - py = m (x - px)  ->  -m x + y = py - m px
        return cls.from_coefficients(-slope, 1, p.y - slope * p.x)

    @property
    def is_vertical(self) -> bool:
        return self.b == 0

    @property
    def slope(self) -> Fraction:
        if self.b == 0:
            raise ValueError("vertical line has no slope")
        return Fraction(-self.a, self.b)

    @property
    def intercept(self) -> Fraction:
        if self.b == 0:
            raise ValueError("vertical line has no intercept")
        return Fraction(self.c, self.b)

    def y_at(self, x) -> Fraction:
        return (self.c - self.a * Q(x)) / Fraction(self.b)

    def side(self, p: RationalPoint) -> int:
        v = self.a * p.x + self.b * p.y - self.c
        return (v > 0) - (v < 0)

    def contains(self, p: RationalPoint) -> bool:
        return self.a * p.x + self.b * p.y == self.c


def line_intersection(l1: Line, l2: Line) -> Optional[RationalPoint]:
    det = l1.a * l2.b - l2.a * l1.b
    if det == 0:
        return None
    x = Fraction(l1.c * l2.b - l2.c * l1.b, det)
    y = Fraction(l1.a * l2.c - l2.a * l1.c, det)
    return RationalPoint(x, y)


def perpendicular_foot_on_vertical(p: RationalPoint, through: Line, vertical_x) -> RationalPoint:
    """Point at ``x = vertical_x`` on the perpendicular to ``through`` at ``p``."""
    if not through.contains(p):
        raise ValueError(f"{p} does not lie on {through}")
    vx = Q(vertical_x)
    # the perpendicular runs along the normal (a, b)
    if through.a == 0:
        if vx != p.x:
            raise ValueError("perpendicular to a horizontal line never reaches another vertical")
        return p
    t = (vx - p.x) / through.a
    return RationalPoint(vx, p.y + t * through.b)


class SlabPosition(enum.Enum):
    STRICTLY_INSIDE = "inside"
    ON_BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Slab:
    """Closed strip between the perpendiculars to ``base`` at its endpoints."""

    base: Segment

    def boundary_lines(self) -> tuple[Line, Line]:
        d = self.base.direction
        a, b = self.base.a, self.base.b
        return (
            Line.from_coefficients(d.x, d.y, d.dot(a)),
            Line.from_coefficients(d.x, d.y, d.dot(b)),
        )

    def position(self, p: RationalPoint) -> SlabPosition:
        return slab_position(self, p)


def slab_of(seg: Segment) -> Slab:
    return Slab(seg)


def slab_position(slab: Slab, p: RationalPoint) -> SlabPosition:
    d = slab.base.direction
    lo = (p - slab.base.a).dot(d)
    hi = (p - slab.base.b).dot(d)
    if lo > 0 and hi < 0:
        return SlabPosition.STRICTLY_INSIDE
    if lo == 0 or hi == 0:
        return SlabPosition.ON_BOUNDARY
    return SlabPosition.OUTSIDE


def segment_meets_open_slab(slab: Slab, seg: Segment) -> bool:
    """True when some point of ``seg`` lies strictly inside ``slab``."""
    d = slab.base.direction
    lo = slab.base.a.dot(d)
    hi = slab.base.b.dot(d)
    u = seg.a.dot(d)
    v = seg.b.dot(d)
    return max(lo, min(u, v)) < min(hi, max(u, v)) or lo < u < hi or lo < v < hi


class EnvelopePiece(NamedTuple):
    line_id: int
    left: Optional[RationalPoint]
    right: Optional[RationalPoint]

    def midpoint(self) -> RationalPoint:
        if self.left is None or self.right is None:
            raise ValueError("unbounded envelope piece has no midpoint")
        return RationalPoint((self.left.x + self.right.x) / 2, (self.left.y + self.right.y) / 2)


@dataclass(frozen=True)
class UpperEnvelope:
    """Left-to-right chain of maximal pieces; ``None`` ends are unbounded."""

    lines: tuple[Line, ...]
    pieces: tuple[EnvelopePiece, ...]
    lower: bool = False

    def height(self, x) -> Fraction:
        ys = (l.y_at(x) for l in self.lines)
        return min(ys) if self.lower else max(ys)

    def piece_at(self, x) -> EnvelopePiece:
        x = Q(x)
        for piece in self.pieces:
            if (piece.left is None or piece.left.x <= x) and (piece.right is None or x <= piece.right.x):
                return piece
        raise AssertionError("envelope pieces do not cover the real line")

    def order(self) -> list[int]:
        return [p.line_id for p in self.pieces]

    def clipped(self, x_min, x_max) -> list[EnvelopePiece]:
        """Pieces restricted to ``x_min <= x <= x_max``; degenerate pieces dropped."""
        x_min, x_max = Q(x_min), Q(x_max)
        out = []
        for piece in self.pieces:
            lx = x_min if piece.left is None else max(x_min, piece.left.x)
            rx = x_max if piece.right is None else min(x_max, piece.right.x)
            if lx < rx:
                line = self.lines[piece.line_id]
                out.append(
                    EnvelopePiece(
                        piece.line_id,
                        RationalPoint(lx, line.y_at(lx)),
                        RationalPoint(rx, line.y_at(rx)),
                    )
                )
        return out


def upper_envelope(lines: Sequence[Line]) -> UpperEnvelope:
    if not lines:
        raise ValueError("upper envelope of no lines")
    lines = tuple(lines)
    for l in lines:
        if l.is_vertical:
            raise ValueError(f"vertical line {l} has no place on an upper envelope")
    # one representative per slope: highest intercept, smallest id on ties
    best: dict[Fraction, int] = {}
    for i, l in enumerate(lines):
        m = l.slope
        j = best.get(m)
        if j is None or l.intercept > lines[j].intercept:
            best[m] = i
    order = sorted(best.values(), key=lambda i: lines[i].slope)

    def breakpoint_x(i: int, j: int) -> Fraction:
        li, lj = lines[i], lines[j]
        return (lj.intercept - li.intercept) / (li.slope - lj.slope)

    hull: list[int] = []
    for i in order:
        while len(hull) >= 2 and breakpoint_x(hull[-2], i) <= breakpoint_x(hull[-2], hull[-1]):
            hull.pop()
        hull.append(i)

    pieces = []
    left = None
    for k, i in enumerate(hull):
        right = None
        if k + 1 < len(hull):
            x = breakpoint_x(i, hull[k + 1])
            right = RationalPoint(x, lines[i].y_at(x))
        pieces.append(EnvelopePiece(i, left, right))
        left = right
    return UpperEnvelope(lines, tuple(pieces))


def lower_envelope(lines: Sequence[Line]) -> UpperEnvelope:
    """Chain visible from (0, -inf), returned in the same left-to-right form."""
    flipped = [Line.from_coefficients(l.a, -l.b, l.c) for l in lines]
    env = upper_envelope(flipped)
    pieces = tuple(
        EnvelopePiece(
            p.line_id,
            None if p.left is None else RationalPoint(p.left.x, -p.left.y),
            None if p.right is None else RationalPoint(p.right.x, -p.right.y),
        )
        for p in env.pieces
    )
    return UpperEnvelope(tuple(lines), pieces, lower=True)


def bounding_box(points) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return min(xs), min(ys), max(xs), max(ys)
