"""Kernel backend selection.

The compiled extension (``_fast``, Cython) is preferred when importable; the
numpy reference backend (``_ref``) is the fallback.  ``CHEEGER_BACKEND`` in
the environment forces one of ``pure`` / ``compiled`` (the latter raising if
the extension is missing, so misconfiguration is loud).
"""

from __future__ import annotations

import os

from . import _ref

_forced = os.environ.get("CHEEGER_BACKEND", "").strip().lower()

if _forced == "pure":
    _impl = _ref
    BACKEND = "pure"
elif _forced == "compiled":
    from . import _fast as _impl  # type: ignore[attr-defined]

    BACKEND = "compiled"
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _ref
        BACKEND = "pure"

kenmotsu_x = _impl.kenmotsu_x
kenmotsu_arc = _impl.kenmotsu_arc
kenmotsu_vol = _impl.kenmotsu_vol
kenmotsu_x_many = _impl.kenmotsu_x_many
graph_x = _impl.graph_x
graph_arclen = _impl.graph_arclen
graph_area = _impl.graph_area
graph_vol = _impl.graph_vol
profile_ode = _impl.profile_ode


def backend() -> str:
    """Name of the active kernel backend: 'compiled' or 'pure'."""
    return BACKEND


__all__ = [
    "BACKEND",
    "backend",
    "kenmotsu_x",
    "kenmotsu_arc",
    "kenmotsu_vol",
    "kenmotsu_x_many",
    "graph_x",
    "graph_arclen",
    "graph_area",
    "graph_vol",
    "profile_ode",
]
