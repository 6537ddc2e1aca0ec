"""Kernel backend selection.

The compiled Cython extension is used when importable; otherwise the
numpy fallback takes over. Set ``PLATETRACE_FORCE_PYTHON=1`` to force the
fallback (used by the backend-agreement tests and the benchmark).
"""

import os

_force_python = os.environ.get("PLATETRACE_FORCE_PYTHON", "") not in ("", "0")

COMPILED = False
if not _force_python:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        from . import _kernels_py as _impl
else:
    from . import _kernels_py as _impl

median_filter = _impl.median_filter
box_filter = _impl.box_filter
sobel_magnitude = _impl.sobel_magnitude
label_components = _impl.label_components


def backend_name() -> str:
    return "compiled" if COMPILED else "python"
