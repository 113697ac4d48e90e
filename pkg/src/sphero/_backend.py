"""Select the kernel implementation at import time.

The compiled ``_ckernels`` extension is used when it is importable; setting
``SPHERO_PURE_PYTHON=1`` forces the pure-Python reference kernels.
"""
import os

if os.environ.get("SPHERO_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as kernels
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
