"""Select the phase-sum kernel implementation at import time.

The compiled Cython core is preferred when its extension module built;
otherwise the pure numpy fallback takes over transparently.  Set
SPINPAIR_BACKEND=python or SPINPAIR_BACKEND=compiled to force a choice
(forcing the compiled core raises if the extension is unavailable).
"""

from __future__ import annotations

import os

from . import _core_py

_requested = os.environ.get("SPINPAIR_BACKEND", "").strip().lower()

try:
    from . import _core
except ImportError:
    _core = None

if _requested == "python":
    _impl = _core_py
elif _requested == "compiled":
    if _core is None:
        raise ImportError(
            "SPINPAIR_BACKEND=compiled but the spinpair._core extension is not built"
        )
    _impl = _core
elif _requested:
    raise ValueError(f"unknown SPINPAIR_BACKEND value {_requested!r}")
else:
    _impl = _core if _core is not None else _core_py

weighted_phase_sums = _impl.weighted_phase_sums


def backend_name() -> str:
    """'compiled' when the Cython core is active, else 'python'."""
    return "compiled" if _impl is _core else "python"


def available_backends() -> tuple[str, ...]:
    names = ["python"]
    if _core is not None:
        names.insert(0, "compiled")
    return tuple(names)
