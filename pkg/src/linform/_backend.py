"""Pick the compiled kernels when built, else the numpy fallback.

Set ``LINFORM_PURE=1`` to force the fallback.
"""

import os

if os.environ.get("LINFORM_PURE"):
    from . import _fallback as kernels

    BACKEND = "numpy"
else:
    try:
        from . import _kernels as kernels

        BACKEND = "cython"
    except ImportError:
        from . import _fallback as kernels

        BACKEND = "numpy"

DEFAULT_BUDGET = 10**8


def budget() -> int:
    """Enumeration budget in inner iterations; LINFORM_BUDGET overrides."""
    raw = os.environ.get("LINFORM_BUDGET")
    return int(float(raw)) if raw else DEFAULT_BUDGET


__all__ = ["kernels", "BACKEND", "budget"]
