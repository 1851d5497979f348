"""Increasing-chord, self-approaching and greedy tests on polygonal vertex paths.

A polygonal path is increasing-chord exactly when, for every edge ``(u, w)``
with direction ``d = w - u``, every vertex after ``w`` lies in the closed
half-plane ``(q - w) . d >= 0`` and every vertex before ``u`` lies in
``(q - u) . d <= 0``.  Half-planes are convex, so testing vertices suffices.
Touching the boundary is allowed.
"""
from __future__ import annotations

import enum
import math
from typing import Iterable, Sequence

from .geom import RationalPoint, Q, dist2, orient


class Direction(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class InvalidPath(ValueError):
    pass


class VertexPath(tuple):
    """Immutable sequence of at least two distinct exact points."""

    def __new__(cls, points: Iterable):
        pts = tuple(p if isinstance(p, RationalPoint) else RationalPoint(Q(p[0]), Q(p[1])) for p in points)
        if len(pts) < 2:
            raise InvalidPath("a path needs at least two vertices")
        if len(set(pts)) != len(pts):
            raise InvalidPath("repeated vertex on path")
        for a, b, c in zip(pts, pts[1:], pts[2:]):
            # collinear fold-back: the third vertex retreats along the second edge
            if orient(a, b, c) == 0 and (c - b).dot(b - a) < 0:
                raise InvalidPath(f"path folds back on itself at {b}")
        return super().__new__(cls, pts)

    def reversed(self) -> "VertexPath":
        return VertexPath(self[::-1])


def as_path(path) -> VertexPath:
    return path if isinstance(path, VertexPath) else VertexPath(path)


def _forward_ok(pts: Sequence[RationalPoint]) -> bool:
    n = len(pts)
    for i in range(n - 1):
        w = pts[i + 1]
        dx = w.x - pts[i].x
        dy = w.y - pts[i].y
        for j in range(i + 2, n):
            q = pts[j]
            if (q.x - w.x) * dx + (q.y - w.y) * dy < 0:
                return False
    return True


def _backward_ok(pts: Sequence[RationalPoint]) -> bool:
    n = len(pts)
    for i in range(1, n - 1):
        u = pts[i]
        dx = pts[i + 1].x - u.x
        dy = pts[i + 1].y - u.y
        for j in range(i):
            q = pts[j]
            if (q.x - u.x) * dx + (q.y - u.y) * dy > 0:
                return False
    return True


def is_increasing_chord(path) -> bool:
    pts = as_path(path)
    return _forward_ok(pts) and _backward_ok(pts)


def is_self_approaching(path, direction: Direction = Direction.FORWARD) -> bool:
    pts = as_path(path)
    if direction is Direction.BACKWARD:
        pts = pts[::-1]
    return _forward_ok(pts)


def ic_violation(path):
    """First violated half-plane as ``(edge_index, vertex_index)``, or None."""
    pts = as_path(path)
    n = len(pts)
    for i in range(n - 1):
        u, w = pts[i], pts[i + 1]
        d = w - u
        for j in range(n):
            if j > i + 1 and (pts[j] - w).dot(d) < 0:
                return i, j
            if j < i and (pts[j] - u).dot(d) > 0:
                return i, j
    return None


def is_ic_extension(base, extended) -> bool:
    base = as_path(base)
    extended = as_path(extended)
    if len(extended) < len(base) or tuple(extended[: len(base)]) != tuple(base):
        raise InvalidPath("base is not a prefix of the extended path")
    return is_increasing_chord(extended)


def is_greedy_path(path) -> bool:
    pts = as_path(path)
    target = pts[-1]
    d = [dist2(p, target) for p in pts]
    return all(d[i] > d[i + 1] for i in range(len(d) - 1))


def path_length(path) -> float:
    pts = as_path(path)
    return math.fsum(math.sqrt(dist2(a, b)) for a, b in zip(pts, pts[1:]))


def dilation(path) -> float:
    pts = as_path(path)
    if pts[0] == pts[-1]:
        raise InvalidPath("dilation of a closed path is undefined")
    return path_length(pts) / math.sqrt(dist2(pts[0], pts[-1]))


DILATION_BOUND = 2 * math.pi / 3
