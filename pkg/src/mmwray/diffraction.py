"""Knife-edge diffraction for corridor corners and the human-blocker screen.

The blocker is a perfectly absorbing screen.  The blocked field is the
coherent sum of the complex knife-edge contributions of its two lateral edges
and its top edge; the bottom edge is ignored because the body continues to the
floor.  All knife-edge fields use the exact Fresnel integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import fresnel as _fresnel_integrals

from .geometry import Point2

SPEED_OF_LIGHT = 299792458.0


def wavelength_m(f_ghz: float) -> float:
    if f_ghz <= 0:
        raise ValueError("frequency must be > 0")
    return SPEED_OF_LIGHT / (f_ghz * 1e9)


@dataclass(frozen=True)
class BlockerScreen:
    """Absorbing-screen stand-in for a person, in the propagation plane.

    ``top_height_m`` is the absolute height of the screen's top edge; the
    screen is assumed to continue to the floor.  ``thickness_m`` is recorded
    for scenario fidelity but ignored by the screen model.
    """

    center: Point2
    width_m: float
    thickness_m: float
    height_m: float
    top_height_m: float = math.inf

    def __post_init__(self) -> None:
        if self.width_m <= 0 or self.height_m <= 0:
            raise ValueError("blocker width and height must be > 0")


@dataclass(frozen=True)
class FresnelParam:
    """Dimensionless knife-edge clearance parameter."""

    v: float

    @classmethod
    def from_geometry(cls, clearance_m: float, d1_m: float, d2_m: float, f_ghz: float) -> "FresnelParam":
        return cls(fresnel_v(clearance_m, d1_m, d2_m, f_ghz))


def fresnel_v(clearance_m: float, d1_m: float, d2_m: float, f_ghz: float) -> float:
    """Knife-edge parameter v = h * sqrt(2 (1/d1 + 1/d2) / lambda).

    Positive clearance means the edge protrudes past the direct ray (shadow);
    the sign of ``clearance_m`` is preserved.
    """
    if d1_m <= 0 or d2_m <= 0:
        raise ValueError("d1 and d2 must be > 0")
    lam = wavelength_m(f_ghz)
    return clearance_m * math.sqrt(2.0 * (1.0 / d1_m + 1.0 / d2_m) / lam)


def fresnel_radius(f_ghz: float, d1_m: float, d2_m: float) -> float:
    """First Fresnel-zone radius sqrt(lambda d1 d2 / (d1 + d2)) in meters."""
    if d1_m < 0 or d2_m < 0 or d1_m + d2_m <= 0:
        raise ValueError("distances must be non-negative with a positive sum")
    lam = wavelength_m(f_ghz)
    return math.sqrt(lam * d1_m * d2_m / (d1_m + d2_m))


def knife_edge_field(v: float) -> complex:
    """Exact half-plane field ratio F(v) relative to free space.

    F(-inf) = 1 (full clearance), F(0) = 1/2, and F decays as the edge cuts
    deeper.  Uses scipy's Fresnel integrals; exp(+j*2*pi*f*t) convention.
    """
    s, c = _fresnel_integrals(v)
    return (1.0 + 1.0j) / 2.0 * complex((0.5 - c), -(0.5 - s))


def knife_edge_loss(v: float) -> float:
    """Single knife-edge loss in dB from the exact Fresnel integral."""
    return -20.0 * math.log10(abs(knife_edge_field(v)))


def knife_edge_loss_approx(v: float) -> float:
    """Closed-form approximation 6.9 + 20 log10(sqrt((v-0.1)^2+1) + v - 0.1).

    Valid for v > -0.78; a fast alternative to the exact integral.
    """
    if v <= -0.78:
        return 0.0
    u = v - 0.1
    return 6.9 + 20.0 * math.log10(math.sqrt(u * u + 1.0) + u)


def _screen_lateral_offsets(
    screen: BlockerScreen, tx: Point2, rx: Point2
) -> Optional[tuple[float, float, float, float]]:
    """Project the screen onto the tx-rx leg: (d1, d2, u_center, t).

    Returns None when the screen plane is not crossed strictly between the
    terminals.  The screen is modeled as facing the link, so its lateral
    extent is centered on the perpendicular projection of its center.
    """
    o = tx.as_array()
    d = rx.as_array() - o
    leg = float(np.linalg.norm(d))
    if leg < 1e-12:
        return None
    u = d / leg
    rel = screen.center.as_array() - o
    t_m = float(np.dot(rel, u))
    if t_m <= 0.0 or t_m >= leg:
        return None
    n = np.array([-u[1], u[0]])
    u_center = float(np.dot(rel, n))
    return t_m, leg - t_m, u_center, t_m / leg


def screen_blockage_field(
    screen: BlockerScreen,
    tx: Point2,
    rx: Point2,
    f_ghz: float,
    ray_height_m: float = 0.0,
) -> complex:
    """Coherent three-edge field ratio for a screen between two terminals.

    Sum of the two lateral strip edges plus the top edge; 1.0 (0 dB) when the
    screen plane is not crossed between the terminals or the screen top sits
    below the propagation plane.
    """
    geo = _screen_lateral_offsets(screen, tx, rx)
    if geo is None:
        return 1.0 + 0.0j
    d1, d2, u_center, _ = geo
    half = 0.5 * screen.width_m
    v1 = fresnel_v(u_center - half, d1, d2, f_ghz)
    v2 = fresnel_v(u_center + half, d1, d2, f_ghz)
    field = (1.0 - knife_edge_field(v1)) + knife_edge_field(v2)
    if math.isfinite(screen.top_height_m):
        dh = screen.top_height_m - ray_height_m
        if dh <= 0.0:
            return 1.0 + 0.0j
        field += knife_edge_field(fresnel_v(dh, d1, d2, f_ghz))
    return field


def screen_blockage_loss(
    screen: BlockerScreen,
    tx: Point2,
    rx: Point2,
    f_ghz: float,
    ray_height_m: float = 0.0,
) -> float:
    """Blockage loss in dB; 0 dB when the screen does not cut the direct ray."""
    return -20.0 * math.log10(abs(screen_blockage_field(screen, tx, rx, f_ghz, ray_height_m)))


def screen_crossing(
    screen: BlockerScreen, tx: Point2, rx: Point2
) -> Optional[tuple[Point2, float, float, float]]:
    """Crossing point and split distances of a leg through the screen plane.

    Returns ``(point, d1, d2, u_center)`` or None; used by the path engine to
    place the diffraction vertex.
    """
    geo = _screen_lateral_offsets(screen, tx, rx)
    if geo is None:
        return None
    d1, d2, u_center, t = geo
    p = Point2(tx.x + t * (rx.x - tx.x), tx.y + t * (rx.y - tx.y))
    return p, d1, d2, u_center


def crest_excess_length(
    screen: BlockerScreen, d1_m: float, d2_m: float, ray_height_m: float
) -> float:
    """Extra path length of the route over the screen's top edge, in meters.

    Zero for screens without a finite top.  This vertical detour cannot be
    represented by in-plane vertices, so paths carry it as an explicit excess.
    """
    if not math.isfinite(screen.top_height_m):
        return 0.0
    dh = screen.top_height_m - ray_height_m
    if dh <= 0.0:
        return 0.0
    return (math.hypot(d1_m, dh) - d1_m) + (math.hypot(d2_m, dh) - d2_m)
