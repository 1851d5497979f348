# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled increasing-chord kernels; int64 coordinates bounded by 2**29."""


def extend_ok(long long[:] xs, long long[:] ys, Py_ssize_t n, long long px, long long py):
    cdef Py_ssize_t i, j
    cdef long long ux, uy, dx, dy, wx, wy
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


def path_ok(long long[:] xs, long long[:] ys, Py_ssize_t n):
    cdef Py_ssize_t k
    for k in range(2, n):
        if not extend_ok(xs, ys, k, xs[k], ys[k]):
            return False
    return True
