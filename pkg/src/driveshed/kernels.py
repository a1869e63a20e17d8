"""Kernel backend selection.

Imports the compiled extension when present, otherwise the pure-Python
reference twin. Set ``DRIVESHED_PURE=1`` to force the fallback (the
benchmark uses this to time both).
"""

from __future__ import annotations

import os

if os.environ.get("DRIVESHED_PURE"):
    from . import _reference as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _reference as _impl

BACKEND: str = _impl.BACKEND

point_in_rings = _impl.point_in_rings
segments_intersect = _impl.segments_intersect
rings_cross = _impl.rings_cross
any_vertex_inside = _impl.any_vertex_inside
dijkstra_budget = _impl.dijkstra_budget
