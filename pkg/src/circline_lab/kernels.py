"""Backend selection for the grid kernels.

The compiled extension is used when it imports; set ``CIRCLINE_LAB_PURE=1``
to force the numpy fallback.  ``BACKEND`` names the active one.
"""
import os

import numpy as np

from . import _fallback

try:
    if os.environ.get("CIRCLINE_LAB_PURE", "") not in ("", "0"):
        raise ImportError("pure backend requested")
    from . import _kernels as _impl
    BACKEND = "compiled"
except ImportError:
    _impl = _fallback
    BACKEND = "python"


def _c(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def winding_numbers(poly, pts):
    return _impl.winding_numbers(_c(poly), _c(np.atleast_2d(pts)))


def polygon_crossings(poly, limit=-1):
    return _impl.polygon_crossings(_c(poly), limit)


def nearest_sample(samples, pts):
    return _impl.nearest_sample(_c(samples), _c(np.atleast_2d(pts)))
