"""Selects the compiled polygon kernels when available, numpy fallback otherwise."""

try:
    from ._polyops import (  # type: ignore[attr-defined]
        BACKEND,
        area_centroid,
        cap_area,
        clip_halfplane,
        polar_vertices,
        shift_vertices,
        support,
        supports,
    )
except ImportError:
    from ._polyops_py import (
        BACKEND,
        area_centroid,
        cap_area,
        clip_halfplane,
        polar_vertices,
        shift_vertices,
        support,
        supports,
    )

__all__ = [
    "BACKEND",
    "area_centroid",
    "cap_area",
    "clip_halfplane",
    "polar_vertices",
    "shift_vertices",
    "support",
    "supports",
]
