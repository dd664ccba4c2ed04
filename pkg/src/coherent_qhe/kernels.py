"""Select the RK4 kernel backend at import time.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded. Set ``COHERENT_QHE_PURE=1`` to force the fallback.
"""
import os

from . import _fallback

BACKEND = "python"
if not os.environ.get("COHERENT_QHE_PURE"):
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _fallback
    else:
        BACKEND = "compiled"
else:
    _impl = _fallback

rk4_mean = _impl.rk4_mean
rk4_chain = _impl.rk4_chain

__all__ = ["BACKEND", "rk4_mean", "rk4_chain"]
