"""Kernel backend selection.

The compiled extension is preferred when importable; set
``MINORFORGE_KERNELS=pure`` to force the pure-Python lane (useful for
debugging and for the lane-comparison benchmark).
"""

import os

from . import pure as _pure

_choice = os.environ.get("MINORFORGE_KERNELS", "auto").lower()

if _choice == "pure":
    _impl = _pure
elif _choice in ("auto", "compiled", "c"):
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice in ("compiled", "c"):
            raise
        _impl = _pure
else:
    raise ValueError(f"MINORFORGE_KERNELS={_choice!r} (expected auto, compiled, or pure)")

BACKEND = _impl.BACKEND
bfs_dist = _impl.bfs_dist
ball_ratio_scan = _impl.ball_ratio_scan
sweep_neighbor_sizes = _impl.sweep_neighbor_sizes
greedy_min_boundary = _impl.greedy_min_boundary

pure = _pure

__all__ = [
    "BACKEND",
    "bfs_dist",
    "ball_ratio_scan",
    "sweep_neighbor_sizes",
    "greedy_min_boundary",
    "pure",
]
