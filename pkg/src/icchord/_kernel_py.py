"""Pure-Python increasing-chord kernels over integer coordinates.

Coordinates are the drawing's points scaled by a common denominator, so every
sign test below is exact.  ``_kernel.pyx`` mirrors these functions.
"""


def extend_ok(xs, ys, n, px, py):
    """Can the increasing-chord path ``xs[:n], ys[:n]`` be extended by ``(px, py)``?"""
    if n < 2:
        return True
    ux = xs[n - 1]
    uy = ys[n - 1]
    dx = px - ux
    dy = py - uy
    for j in range(n - 1):
        if (xs[j] - ux) * dx + (ys[j] - uy) * dy > 0:
            return False
    for i in range(n - 1):
        wx = xs[i + 1]
        wy = ys[i + 1]
        if (px - wx) * (wx - xs[i]) + (py - wy) * (wy - ys[i]) < 0:
            return False
    return True


def path_ok(xs, ys, n):
    for k in range(2, n):
        if not extend_ok(xs, ys, k, xs[k], ys[k]):
            return False
    return True
