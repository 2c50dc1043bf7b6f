"""Select the integration kernel at import time.

The compiled extension is preferred when present; setting the environment
variable ``SPINGATE_PURE=1`` forces the numpy fallback (used by the kernel
benchmark and as an escape hatch on platforms without a compiler).
"""

from __future__ import annotations

import os

from . import _rk4_py

if os.environ.get("SPINGATE_PURE"):
    kernel = _rk4_py
else:
    try:
        from . import _rk4 as kernel  # type: ignore[no-redef]
    except ImportError:
        kernel = _rk4_py

rk4_run = kernel.rk4_run


def backend_name() -> str:
    """Name of the active kernel, ``"cython"`` or ``"python"``."""
    return kernel.BACKEND
