"""Backend selection for the increasing-chord kernels.

The compiled module is used when it imports and the coordinates fit in the
int64 fast path; ``ICCHORD_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os
from array import array
from fractions import Fraction
from math import lcm

from . import _kernel_py

try:
    if os.environ.get("ICCHORD_PURE_PYTHON"):
        raise ImportError
    from . import _kernel as _compiled
except ImportError:  # pragma: no cover - depends on build
    _compiled = None

# products of differences must stay below 2**63
INT64_BOUND = 1 << 29

HAVE_COMPILED = _compiled is not None


class ScaledPoints:
    """Integer images of exact points under one positive common scale factor."""

    def __init__(self, points, prefer_compiled: bool = True):
        den = 1
        for p in points:
            den = lcm(den, Fraction(p.x).denominator, Fraction(p.y).denominator)
        self.scale = den
        self.xs = [int(p.x * den) for p in points]
        self.ys = [int(p.y * den) for p in points]
        big = max((max(abs(x), abs(y)) for x, y in zip(self.xs, self.ys)), default=0)
        self.fast = prefer_compiled and HAVE_COMPILED and big < INT64_BOUND
        self.backend = "compiled" if self.fast else "python"

    def buffers(self, size: int):
        if self.fast:
            return array("q", [0] * size), array("q", [0] * size)
        return [0] * size, [0] * size

    def extend_ok(self, bx, by, n, v) -> bool:
        if self.fast:
            return _compiled.extend_ok(bx, by, n, self.xs[v], self.ys[v])
        return _kernel_py.extend_ok(bx, by, n, self.xs[v], self.ys[v])

    def path_ok(self, vertices) -> bool:
        n = len(vertices)
        bx, by = self.buffers(n)
        for k, v in enumerate(vertices):
            bx[k] = self.xs[v]
            by[k] = self.ys[v]
        if self.fast:
            return _compiled.path_ok(bx, by, n)
        return _kernel_py.path_ok(bx, by, n)
