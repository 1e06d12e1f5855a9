"""Pure numpy versions of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module; used when the
extension is not built or ``TAILSMITH_PURE=1`` is set.
"""
import numpy as np

UPPER, LOWER, TWO_SIDED = 0, 1, 2


def ramp_up(x, shift, c):
    x = np.asarray(x, dtype=np.float64)
    out = ((x - shift) + c) / (2.0 * c)
    out[x <= shift - c] = 0.0
    out[x >= shift + c] = 1.0
    return out


def ramp_down(x, shift, c):
    x = np.asarray(x, dtype=np.float64)
    out = ((shift - x) + c) / (2.0 * c)
    out[x <= shift - c] = 1.0
    out[x >= shift + c] = 0.0
    return out


def fold_ramp(x, center, shift, c):
    return ramp_up(np.abs(np.asarray(x, dtype=np.float64) - center), shift, c)


def count_event(x, u, a, c, kind, center):
    """Count draws with X + c*(2u - 1) in the tail event (``u`` may be None)."""
    y = np.asarray(x, dtype=np.float64)
    if u is not None:
        y = y + c * (2.0 * np.asarray(u, dtype=np.float64) - 1.0)
    if kind == UPPER:
        hit = y >= a
    elif kind == LOWER:
        hit = y <= a
    elif kind == TWO_SIDED:
        hit = (y <= center - a) | (y >= center + a)
    else:
        raise ValueError(f"unknown tail kind code {kind}")
    return int(np.count_nonzero(hit))
