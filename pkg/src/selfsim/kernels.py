"""Backend selection for the pointwise kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback.  Setting ``SELFSIM_PURE_PYTHON=1`` forces the fallback.
"""
import os

from selfsim import _kernels_py

if os.environ.get("SELFSIM_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from selfsim import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

apply_pieces = _impl.apply_pieces
first_mismatch = _impl.first_mismatch

# bits left for the result of a single piece application
SAFE_BITS = 62
