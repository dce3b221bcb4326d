"""Backend selection for the transform hot kernels.

Prefers the compiled extension; falls back to the pure numpy implementation
when the extension is missing or when RANKMRA_PURE_PYTHON is set (any
non-empty value).
"""

from __future__ import annotations

import os

if os.environ.get("RANKMRA_PURE_PYTHON"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _speedups as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "python"


def backend_name() -> str:
    """Name of the active kernel backend: "cython" or "python"."""
    return BACKEND
