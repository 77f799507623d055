"""Planar scene description and the geometric kernels of the image method.

Propagation is computed in a single horizontal plane at antenna height; every
scenario in this package places both terminals, reflector centers, and the
blocker chest center at one common height, so in-plane distances equal 3-D
distances.  Room heights are carried only as metadata (``plane_height_m``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Mapping, Optional, Sequence

import numpy as np

if TYPE_CHECKING:  # pragma: no cover - type-only imports, avoids cycles
    from .channel import FrequencyPlan
    from .diffraction import BlockerScreen
    from .materials import Material
    from .reflectarray import GroovePanel

#: hits closer than this along a ray are treated as self-intersections
RAY_T_MIN = 1e-6
#: absolute geometric tolerance in meters
GEOM_TOL = 1e-9


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


def distance(a: Point2, b: Point2) -> float:
    return math.hypot(b.x - a.x, b.y - a.y)


def bearing_deg(a: Point2, b: Point2) -> float:
    """Azimuth of the direction a -> b, counterclockwise from +x, in [0, 360)."""
    return math.degrees(math.atan2(b.y - a.y, b.x - a.x)) % 360.0


def _cross(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


class SegmentKind(str, Enum):
    WALL = "wall"
    FLAT_PANEL = "flat_panel"
    REFLECTARRAY_PANEL = "reflectarray_panel"
    ABSORBER_SCREEN = "absorber_screen"


#: segment kinds that block rays (absorbers attenuate instead of blocking)
OPAQUE_KINDS = (SegmentKind.WALL, SegmentKind.FLAT_PANEL, SegmentKind.REFLECTARRAY_PANEL)
#: segment kinds that act as specular mirrors in the image method
MIRROR_KINDS = (SegmentKind.WALL, SegmentKind.FLAT_PANEL)


@dataclass(frozen=True)
class Segment:
    """Oriented wall/panel/screen segment; a and b must be distinct.

    Degenerate segments are reported by :func:`validate_scene` rather than
    rejected here, so scene files can be diagnosed as a whole.
    """

    a: Point2
    b: Point2
    material_id: str
    kind: SegmentKind = SegmentKind.WALL

    @property
    def length(self) -> float:
        return distance(self.a, self.b)

    def tangent(self) -> np.ndarray:
        t = self.b.as_array() - self.a.as_array()
        return t / np.linalg.norm(t)

    def normal(self) -> np.ndarray:
        """Unit left normal of the a -> b direction."""
        t = self.tangent()
        return np.array([-t[1], t[0]])

    def midpoint(self) -> Point2:
        return Point2(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))


def intersect(
    ray_origin: Point2,
    ray_dir: Sequence[float],
    seg: Segment,
    t_min: float = RAY_T_MIN,
    tol: float = GEOM_TOL,
) -> Optional[tuple[float, Point2]]:
    """First crossing of a ray with a segment, or None.

    Returns ``(t, point)`` with ``t`` the ray parameter in meters (``ray_dir``
    must be normalized).  Hits with ``t <= t_min`` are ignored so bounce points
    do not re-hit their own surface.
    """
    o = ray_origin.as_array()
    d = np.asarray(ray_dir, dtype=float)
    a = seg.a.as_array()
    e = seg.b.as_array() - a
    denom = _cross(d, e)
    if abs(denom) < 1e-15:
        return None
    ao = a - o
    t = _cross(ao, e) / denom
    s = _cross(ao, d) / denom
    if t <= t_min:
        return None
    s_tol = tol / np.linalg.norm(e)
    if s < -s_tol or s > 1.0 + s_tol:
        return None
    p = o + t * d
    return t, Point2(float(p[0]), float(p[1]))


def mirror(p: Point2, seg: Segment) -> Point2:
    """Reflection of a point across the infinite line through the segment."""
    n = seg.normal()
    d = float(np.dot(p.as_array() - seg.a.as_array(), n))
    q = p.as_array() - 2.0 * d * n
    return Point2(float(q[0]), float(q[1]))


def segments_cross(p: Point2, q: Point2, seg: Segment, end_tol: float = GEOM_TOL) -> Optional[Point2]:
    """Proper interior crossing of segment (p, q) with ``seg``, or None.

    Touches at either segment's endpoints (within ``end_tol`` meters) do not
    count, so rays may graze corners and bounce points.
    """
    o = p.as_array()
    d = q.as_array() - o
    leg_len = np.linalg.norm(d)
    if leg_len < end_tol:
        return None
    a = seg.a.as_array()
    e = seg.b.as_array() - a
    denom = _cross(d, e)
    if abs(denom) < 1e-15:
        return None
    ao = a - o
    t = _cross(ao, e) / denom
    s = _cross(ao, d) / denom
    t_tol = end_tol / leg_len
    s_tol = end_tol / np.linalg.norm(e)
    if t <= t_tol or t >= 1.0 - t_tol:
        return None
    if s <= s_tol or s >= 1.0 - s_tol:
        return None
    hit = o + t * d
    return Point2(float(hit[0]), float(hit[1]))


@dataclass(frozen=True)
class Scene:
    """Immutable planar scene: segments, reflectarray panels, blockers, plan.

    ``materials`` resolves the ``material_id`` of wall/flat-panel/absorber
    segments; reflectarray segments resolve their ``material_id`` against
    ``panels`` instead.  Scenes never change after construction, so they are
    safe to share across concurrent evaluations.
    """

    segments: tuple[Segment, ...]
    materials: Mapping[str, "Material"] = field(default_factory=dict)
    panels: Mapping[str, "GroovePanel"] = field(default_factory=dict)
    blockers: tuple["BlockerScreen", ...] = ()
    frequency_plan: Optional["FrequencyPlan"] = None
    plane_height_m: float = 0.0


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str


def validate_scene(scene: Scene) -> list[Violation]:
    """Check every Scene invariant; empty list means the scene is valid."""
    out: list[Violation] = []
    for i, seg in enumerate(scene.segments):
        if distance(seg.a, seg.b) <= GEOM_TOL:
            out.append(Violation("degenerate_segment", f"segment {i} has zero length"))
            continue
        if seg.kind is SegmentKind.REFLECTARRAY_PANEL:
            if seg.material_id not in scene.panels:
                out.append(
                    Violation("missing_panel", f"segment {i} references unknown panel {seg.material_id!r}")
                )
        elif seg.material_id not in scene.materials:
            out.append(
                Violation("missing_material", f"segment {i} references unknown material {seg.material_id!r}")
            )
    for i, seg in enumerate(scene.segments):
        for j in range(i + 1, len(scene.segments)):
            if segments_cross(seg.a, seg.b, scene.segments[j]) is not None:
                out.append(Violation("segments_cross", f"segments {i} and {j} cross"))
    for i, blk in enumerate(scene.blockers):
        if blk.width_m <= 0 or blk.height_m <= 0:
            out.append(Violation("bad_blocker", f"blocker {i} must have positive width and height"))
    plan = scene.frequency_plan
    if plan is not None:
        if plan.n_points < 2:
            out.append(Violation("bad_frequency_plan", "n_points must be >= 2"))
        if plan.bandwidth_ghz <= 0 or plan.fc_ghz <= 0:
            out.append(Violation("bad_frequency_plan", "fc and bandwidth must be > 0"))
    return out
