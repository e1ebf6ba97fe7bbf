"""Backend selection for the term-map kernels.

The compiled backend (hfib._kernels_c, built from Cython) is preferred
when it imported cleanly; otherwise the pure-Python backend is used.
Set HFIB_BACKEND=python to force the fallback, HFIB_BACKEND=c to fail
loudly when the extension is missing.  The choice is made once at
import; `BACKEND` records which one won.
"""

from __future__ import annotations

import os

_requested = os.environ.get("HFIB_BACKEND", "auto")
if _requested not in ("auto", "c", "python"):
    raise ValueError(
        f"HFIB_BACKEND must be 'auto', 'c' or 'python', got {_requested!r}"
    )

if _requested == "python":
    from hfib._kernels_py import kadd, kmul, kpow, kscale

    BACKEND = "python"
else:
    try:
        from hfib._kernels_c import kadd, kmul, kpow, kscale

        BACKEND = "c"
    except ImportError:
        if _requested == "c":
            raise
        from hfib._kernels_py import kadd, kmul, kpow, kscale

        BACKEND = "python"

__all__ = ["BACKEND", "kadd", "kmul", "kpow", "kscale"]
