"""Select the compiled kernels when available, else the numpy fallback.

Set ``TAILSMITH_PURE=1`` to force the fallback.
"""
import os

from . import _fallback

if os.environ.get("TAILSMITH_PURE") == "1":
    kernels = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _fallback
        BACKEND = "python"

ramp_up = kernels.ramp_up
ramp_down = kernels.ramp_down
fold_ramp = kernels.fold_ramp
count_event = kernels.count_event

UPPER, LOWER, TWO_SIDED = _fallback.UPPER, _fallback.LOWER, _fallback.TWO_SIDED
