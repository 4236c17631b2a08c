"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python kernels when
it is not built.  Set ``GCRSOLVER_PURE_PY=1`` to force the fallback (used
by the benchmark and the backend-parity tests).
"""

import os

from gcrsolver import _kernels_py

if os.environ.get("GCRSOLVER_PURE_PY"):
    _impl = _kernels_py
else:
    try:
        from gcrsolver import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
vl_label = _impl.vl_label


def available_backends() -> dict:
    """Name -> kernel module, for benchmarks and parity tests."""
    out = {"python": _kernels_py}
    try:
        from gcrsolver import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
