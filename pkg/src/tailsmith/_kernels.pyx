# cython: language_level=3
"""Compiled ramp evaluation and Monte Carlo event counting."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

UPPER = 0
LOWER = 1
TWO_SIDED = 2


cdef void _ramp(const double* xp, double* op, Py_ssize_t n, double shift, double c, bint down) noexcept nogil:
    # Arithmetic first, then two pure selects.  Each pass vectorises; the
    # fused version branches per element and mispredicts on random input.
    cdef Py_ssize_t i
    cdef double lo = shift - c, hi = shift + c, w = 2.0 * c
    cdef double below = 1.0 if down else 0.0
    cdef double above = 1.0 - below
    if down:
        for i in range(n):
            op[i] = ((shift - xp[i]) + c) / w
    else:
        for i in range(n):
            op[i] = ((xp[i] - shift) + c) / w
    for i in range(n):
        op[i] = below if xp[i] <= lo else op[i]
    for i in range(n):
        op[i] = above if xp[i] >= hi else op[i]


cdef _run_ramp(x, double shift, double c, bint down):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xv.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    if n:
        with nogil:
            _ramp(&xv[0], &ov[0], n, shift, c, down)
    return out.reshape(np.shape(x))


def ramp_up(x, double shift, double c):
    return _run_ramp(x, shift, c, False)


def ramp_down(x, double shift, double c):
    return _run_ramp(x, shift, c, True)


def fold_ramp(x, double center, double shift, double c):
    return _run_ramp(np.abs(np.asarray(x, dtype=np.float64) - center), shift, c, False)


cdef Py_ssize_t _count(const double* xp, const double* up, Py_ssize_t n, double a, double c,
                       int kind, double center) noexcept nogil:
    # one loop per (kind, smoothed) pair keeps each body a plain reduction
    cdef Py_ssize_t i, hits = 0
    cdef double lo = center - a, hi = center + a
    if up == NULL:
        if kind == 0:
            for i in range(n):
                hits += xp[i] >= a
        elif kind == 1:
            for i in range(n):
                hits += xp[i] <= a
        else:
            for i in range(n):
                hits += (xp[i] <= lo) | (xp[i] >= hi)
    else:
        if kind == 0:
            for i in range(n):
                hits += xp[i] + c * (2.0 * up[i] - 1.0) >= a
        elif kind == 1:
            for i in range(n):
                hits += xp[i] + c * (2.0 * up[i] - 1.0) <= a
        else:
            for i in range(n):
                hits += ((xp[i] + c * (2.0 * up[i] - 1.0) <= lo)
                         | (xp[i] + c * (2.0 * up[i] - 1.0) >= hi))
    return hits


def count_event(x, u, double a, double c, int kind, double center):
    """Count draws with X + c*(2u - 1) in the tail event (``u`` may be None)."""
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef const double[::1] uv
    cdef Py_ssize_t n = xv.shape[0]
    cdef Py_ssize_t hits = 0
    cdef const double* up = NULL
    if kind < 0 or kind > 2:
        raise ValueError(f"unknown tail kind code {kind}")
    if u is not None:
        uv = np.ascontiguousarray(u, dtype=np.float64).ravel()
        if uv.shape[0] != n:
            raise ValueError("x and u must have the same length")
        if n:
            up = &uv[0]
    if n:
        with nogil:
            hits = _count(&xv[0], up, n, a, c, kind, center)
    return int(hits)
