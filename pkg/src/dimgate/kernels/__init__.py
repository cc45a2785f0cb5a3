"""Distance kernels with a compiled fast path and a numpy fallback.

The backend is selected once at import time: the compiled extension when
importable, otherwise the pure-numpy implementation.  Set the environment
variable ``DIMGATE_PURE_PYTHON=1`` to force the fallback regardless of
what is installed.  ``BACKEND`` names the selected implementation.
"""
import os

from . import numpy_impl

BACKEND = "python"
point_dists = numpy_impl.point_dists
pairwise_condensed = numpy_impl.pairwise_condensed

if not os.environ.get("DIMGATE_PURE_PYTHON"):
    try:
        from . import _native
    except ImportError:
        pass
    else:
        BACKEND = "native"
        point_dists = _native.point_dists
        pairwise_condensed = _native.pairwise_condensed

__all__ = ["BACKEND", "point_dists", "pairwise_condensed", "numpy_impl"]
