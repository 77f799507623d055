"""Image-method path enumeration and per-path complex gain assembly.

Paths are LOS, specular chains over walls and flat panels (mirror images,
validated by forward visibility), single-vertex reflectarray bounces through
the panel center (optionally wrapped in specular sub-chains), and single
dominant-edge corner diffractions when the direct ray is blocked.  Blockers
and absorber screens never remove a path; they attach a diffraction crossing
that attenuates it.

Gain convention: a path's envelope (spreading, interaction coefficients,
antenna gains) excludes the propagation phase; ``path_gain`` multiplies the
envelope by exp(-j k L).  Phase convention exp(+j*2*pi*f*t) throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .antenna import AntennaPattern, gain_dbi, isotropic, wrap_to_180
from .channel import FrequencyPlan, average_path_loss, synthesize
from .diffraction import (
    crest_excess_length,
    fresnel_radius,
    fresnel_v,
    knife_edge_field,
    screen_crossing,
)
from .geometry import (
    GEOM_TOL,
    MIRROR_KINDS,
    OPAQUE_KINDS,
    Point2,
    Scene,
    SegmentKind,
    bearing_deg,
    distance,
    mirror,
    segments_cross,
)
from .materials import Polarization, reflection_coefficient
from .reflectarray import bounce_coefficient_from_sines

SPEED_OF_LIGHT = 299792458.0


def friis_path_loss(f_ghz: float, d_m: float) -> float:
    """Free-space path loss 20 log10(4 pi d / lambda) in dB."""
    if d_m <= 0:
        raise ValueError("distance must be > 0")
    if f_ghz <= 0:
        raise ValueError("frequency must be > 0")
    lam = SPEED_OF_LIGHT / (f_ghz * 1e9)
    return 20.0 * math.log10(4.0 * math.pi * d_m / lam)


@dataclass(frozen=True)
class SpecularBounce:
    segment_index: int
    incidence_deg: float

    kind = "specular"

    @property
    def target_id(self) -> str:
        return f"s{self.segment_index}"


@dataclass(frozen=True)
class PanelBounce:
    segment_index: int
    panel_id: str
    sin_in: float
    sin_out: float

    kind = "reflectarray"

    @property
    def target_id(self) -> str:
        return f"s{self.segment_index}"


@dataclass(frozen=True)
class CornerDiffraction:
    segment_index: int
    clearance_m: float
    d1_m: float
    d2_m: float

    kind = "diffraction"

    @property
    def target_id(self) -> str:
        return f"s{self.segment_index}:corner"


@dataclass(frozen=True)
class ScreenCrossing:
    """Attenuating crossing of a blocker or absorber screen.

    ``u_lo``/``u_hi`` are the screen's lateral offsets from the crossing ray,
    ``top_dh_m`` the top-edge height above the propagation plane (inf when the
    screen has no top edge in range).
    """

    target_index: int
    is_blocker: bool
    d1_m: float
    d2_m: float
    u_lo_m: float
    u_hi_m: float
    top_dh_m: float
    excess_length_m: float

    kind = "diffraction"

    @property
    def target_id(self) -> str:
        return ("b" if self.is_blocker else "s") + str(self.target_index)


Interaction = Union[SpecularBounce, PanelBounce, CornerDiffraction, ScreenCrossing]


@dataclass(frozen=True)
class PropagationPath:
    """Ordered interaction list with its geometry.

    ``length_m`` is the vertex polyline length plus ``excess_length_m`` (the
    out-of-plane crest detour of blocker crossings; zero for all other paths,
    so length equals the polyline exactly for LOS/specular/reflectarray).
    """

    vertices: tuple[Point2, ...]
    interactions: tuple[Interaction, ...]
    length_m: float
    excess_length_m: float
    order: int
    departure_az_deg: float
    arrival_az_deg: float

    @property
    def delay_s(self) -> float:
        return self.length_m / SPEED_OF_LIGHT

    def interaction_ids(self) -> tuple[str, ...]:
        return tuple(i.target_id for i in self.interactions)


def _polyline_length(vertices: Sequence[Point2]) -> float:
    return sum(distance(a, b) for a, b in zip(vertices[:-1], vertices[1:]))


def _clear(scene: Scene, p: Point2, q: Point2) -> bool:
    """True when the leg p -> q crosses no opaque segment interior."""
    for seg in scene.segments:
        if seg.kind in OPAQUE_KINDS and segments_cross(p, q, seg) is not None:
            return False
    return True


def _mirror_sequences(indices: Sequence[int], order: int) -> Iterable[tuple[int, ...]]:
    if order == 0:
        yield ()
        return
    for head in indices:
        for tail in _mirror_sequences(indices, order - 1):
            if tail and tail[0] == head:
                continue
            yield (head,) + tail


def _specular_chain(
    scene: Scene, src: Point2, dst: Point2, seq: Sequence[int]
) -> Optional[tuple[list[Point2], list[SpecularBounce]]]:
    """Build src -> bounces -> dst for a mirror sequence, or None if invalid."""
    images = [src]
    for idx in seq:
        images.append(mirror(images[-1], scene.segments[idx]))
    points: list[Point2] = [dst]
    cur = dst
    for j in range(len(seq) - 1, -1, -1):
        seg = scene.segments[seq[j]]
        hit = segments_cross(cur, images[j + 1], seg)
        if hit is None:
            return None
        points.append(hit)
        cur = hit
    points.append(src)
    points.reverse()  # src, B1..Bk, dst
    for a, b in zip(points[:-1], points[1:]):
        if distance(a, b) <= GEOM_TOL or not _clear(scene, a, b):
            return None
    bounces = []
    for j, idx in enumerate(seq):
        seg = scene.segments[idx]
        d = points[j + 1].as_array() - points[j].as_array()
        d = d / np.linalg.norm(d)
        cos_inc = abs(float(np.dot(d, seg.normal())))
        bounces.append(SpecularBounce(idx, math.degrees(math.acos(min(1.0, cos_inc)))))
    return points, bounces


def _panel_bounce(
    scene: Scene, seg_index: int, prev: Point2, center: Point2, nxt: Point2
) -> Optional[PanelBounce]:
    seg = scene.segments[seg_index]
    t_hat = seg.tangent()
    n_hat = seg.normal()
    d_in = center.as_array() - prev.as_array()
    d_in = d_in / np.linalg.norm(d_in)
    d_out = nxt.as_array() - center.as_array()
    d_out = d_out / np.linalg.norm(d_out)
    side_in = float(np.dot(d_in, n_hat))
    if abs(side_in) < 1e-12:
        return None
    if side_in > 0:
        n_hat = -n_hat
    if float(np.dot(d_out, n_hat)) <= 1e-12:
        return None  # panels reflect, never transmit
    return PanelBounce(
        segment_index=seg_index,
        panel_id=seg.material_id,
        sin_in=float(np.dot(d_in, t_hat)),
        sin_out=float(np.dot(d_out, t_hat)),
    )


def _wall_corners(scene: Scene) -> list[tuple[Point2, int]]:
    seen: dict[tuple[float, float], int] = {}
    for i, seg in enumerate(scene.segments):
        if seg.kind is not SegmentKind.WALL:
            continue
        for p in (seg.a, seg.b):
            key = (round(p.x, 9), round(p.y, 9))
            if key not in seen:
                seen[key] = i
    return [(Point2(x, y), idx) for (x, y), idx in seen.items()]


def _corner_paths(scene: Scene, tx: Point2, rx: Point2) -> list[tuple[list[Point2], list[Interaction]]]:
    out: list[tuple[list[Point2], list[Interaction]]] = []
    o = tx.as_array()
    d = rx.as_array() - o
    leg = float(np.linalg.norm(d))
    u = d / leg
    n = np.array([-u[1], u[0]])
    for corner, seg_idx in _wall_corners(scene):
        if distance(corner, tx) <= GEOM_TOL or distance(corner, rx) <= GEOM_TOL:
            continue
        if not (_clear(scene, tx, corner) and _clear(scene, corner, rx)):
            continue
        rel = corner.as_array() - o
        t_m = float(np.dot(rel, u))
        if t_m <= GEOM_TOL or t_m >= leg - GEOM_TOL:
            continue
        h = abs(float(np.dot(rel, n)))
        inter = CornerDiffraction(segment_index=seg_idx, clearance_m=h, d1_m=t_m, d2_m=leg - t_m)
        out.append(([tx, corner, rx], [inter]))
    return out


def _fc_ghz(scene: Scene) -> float:
    return scene.frequency_plan.fc_ghz if scene.frequency_plan is not None else 60.0


def _attach_screens(
    scene: Scene, vertices: list[Point2], interactions: list[Interaction]
) -> tuple[list[Point2], list[Interaction], float]:
    """Insert blocker/absorber crossings as diffraction vertices on every leg."""
    fc = _fc_ghz(scene)
    new_vertices: list[Point2] = [vertices[0]]
    new_inter: list[Interaction] = []
    excess_total = 0.0
    for leg_idx in range(len(vertices) - 1):
        p, q = vertices[leg_idx], vertices[leg_idx + 1]
        events: list[tuple[float, Point2, ScreenCrossing]] = []
        leg_len = distance(p, q)
        for bi, blk in enumerate(scene.blockers):
            cross = screen_crossing(blk, p, q)
            if cross is None:
                continue
            point, d1, d2, u_center = cross
            half = 0.5 * blk.width_m
            margin = 6.0 * fresnel_radius(fc, d1, d2)
            if u_center - half > margin or u_center + half < -margin:
                continue
            top_dh = blk.top_height_m - scene.plane_height_m
            inside = u_center - half < 0.0 < u_center + half
            excess = crest_excess_length(blk, d1, d2, scene.plane_height_m) if inside else 0.0
            events.append(
                (
                    d1 / leg_len,
                    point,
                    ScreenCrossing(bi, True, d1, d2, u_center - half, u_center + half, top_dh, excess),
                )
            )
        for si, seg in enumerate(scene.segments):
            if seg.kind is not SegmentKind.ABSORBER_SCREEN:
                continue
            hit = segments_cross(p, q, seg)
            if hit is None:
                continue
            o = p.as_array()
            u = q.as_array() - o
            u = u / np.linalg.norm(u)
            n = np.array([-u[1], u[0]])
            ua = float(np.dot(seg.a.as_array() - o, n))
            ub = float(np.dot(seg.b.as_array() - o, n))
            d1 = distance(p, hit)
            events.append(
                (
                    d1 / leg_len,
                    hit,
                    ScreenCrossing(si, False, d1, leg_len - d1, min(ua, ub), max(ua, ub), math.inf, 0.0),
                )
            )
        events.sort(key=lambda e: e[0])
        for _, point, crossing in events:
            new_vertices.append(point)
            new_inter.append(crossing)
            excess_total += crossing.excess_length_m
        new_vertices.append(q)
        if leg_idx < len(interactions):
            new_inter.append(interactions[leg_idx])
    return new_vertices, new_inter, excess_total


def _finish_path(
    scene: Scene, vertices: list[Point2], interactions: list[Interaction], order: int
) -> PropagationPath:
    vertices, interactions, excess = _attach_screens(scene, vertices, interactions)
    length = _polyline_length(vertices) + excess
    return PropagationPath(
        vertices=tuple(vertices),
        interactions=tuple(interactions),
        length_m=length,
        excess_length_m=excess,
        order=order,
        departure_az_deg=bearing_deg(vertices[0], vertices[1]),
        arrival_az_deg=bearing_deg(vertices[-1], vertices[-2]),
    )


def find_paths(
    scene: Scene,
    tx: Point2,
    rx: Point2,
    max_order: int = 2,
    include_corner_diffraction: bool = True,
) -> list[PropagationPath]:
    """All LOS, specular, reflectarray, and corner paths up to ``max_order``.

    Deterministic ordering by (order, length, interaction ids).
    """
    if distance(tx, rx) <= GEOM_TOL:
        raise ValueError("tx and rx must be distinct")
    if max_order < 0 or max_order > 3:
        raise ValueError("max_order must be in [0, 3]")

    mirror_idx = [i for i, s in enumerate(scene.segments) if s.kind in MIRROR_KINDS]
    ra_idx = [i for i, s in enumerate(scene.segments) if s.kind is SegmentKind.REFLECTARRAY_PANEL]

    raw: list[tuple[list[Point2], list[Interaction], int]] = []
    if _clear(scene, tx, rx):
        raw.append(([tx, rx], [], 0))
    elif include_corner_diffraction and max_order >= 1:
        for vertices, inter in _corner_paths(scene, tx, rx):
            raw.append((vertices, inter, 1))

    for order in range(1, max_order + 1):
        for seq in _mirror_sequences(mirror_idx, order):
            chain = _specular_chain(scene, tx, rx, seq)
            if chain is not None:
                points, bounces = chain
                raw.append((points, list(bounces), order))

    for ri in ra_idx:
        center = scene.segments[ri].midpoint()
        if distance(tx, center) <= GEOM_TOL or distance(rx, center) <= GEOM_TOL:
            continue
        for pre_order in range(0, max_order):
            for post_order in range(0, max_order - pre_order):
                for pre_seq in _mirror_sequences(mirror_idx, pre_order):
                    pre = _specular_chain(scene, tx, center, pre_seq)
                    if pre is None:
                        continue
                    for post_seq in _mirror_sequences(mirror_idx, post_order):
                        post = _specular_chain(scene, center, rx, post_seq)
                        if post is None:
                            continue
                        bounce = _panel_bounce(scene, ri, pre[0][-2], center, post[0][1])
                        if bounce is None:
                            continue
                        vertices = pre[0][:-1] + [center] + post[0][1:]
                        inter: list[Interaction] = list(pre[1]) + [bounce] + list(post[1])
                        raw.append((vertices, inter, pre_order + 1 + post_order))

    paths = [_finish_path(scene, v, i, order) for v, i, order in raw]
    paths.sort(key=lambda p: (p.order, p.length_m, p.interaction_ids()))
    return paths


def _screen_field(crossing: ScreenCrossing, f_ghz: float) -> complex:
    field = (
        1.0
        - knife_edge_field(fresnel_v(crossing.u_lo_m, crossing.d1_m, crossing.d2_m, f_ghz))
        + knife_edge_field(fresnel_v(crossing.u_hi_m, crossing.d1_m, crossing.d2_m, f_ghz))
    )
    if math.isfinite(crossing.top_dh_m):
        if crossing.top_dh_m <= 0:
            return 1.0 + 0.0j
        field += knife_edge_field(fresnel_v(crossing.top_dh_m, crossing.d1_m, crossing.d2_m, f_ghz))
    return field


def _interaction_coefficient(
    scene: Scene, inter: Interaction, f_ghz: float, fc_ghz: float, polarization: Polarization
) -> complex:
    if isinstance(inter, SpecularBounce):
        seg = scene.segments[inter.segment_index]
        mat = scene.materials[seg.material_id]
        return reflection_coefficient(mat, inter.incidence_deg, polarization, f_ghz)
    if isinstance(inter, PanelBounce):
        panel = scene.panels[inter.panel_id]
        return bounce_coefficient_from_sines(panel, inter.sin_in, inter.sin_out, f_ghz)
    if isinstance(inter, CornerDiffraction):
        # the edge polyline carries the detour phase, keep |F| with the
        # stationary-phase constant only
        v = fresnel_v(inter.clearance_m, inter.d1_m, inter.d2_m, f_ghz)
        return abs(knife_edge_field(v)) * complex(math.cos(-math.pi / 4), math.sin(-math.pi / 4))
    if isinstance(inter, ScreenCrossing):
        # frozen at the carrier so the crest-routed geometry alone sets the
        # arrival delay
        return _screen_field(inter, fc_ghz)
    raise TypeError(f"unknown interaction {inter!r}")


@dataclass(frozen=True)
class LinkBudgetTerm:
    path: PropagationPath
    envelope: Callable[[float], complex]

    @property
    def delay_s(self) -> float:
        return self.path.delay_s


def make_term(
    scene: Scene,
    path: PropagationPath,
    tx_pattern: AntennaPattern,
    tx_orientation_deg: float,
    rx_pattern: AntennaPattern,
    rx_orientation_deg: float,
    polarization: Polarization = "TE",
) -> LinkBudgetTerm:
    """Bundle a path with its frequency-dependent complex envelope."""
    fc = _fc_ghz(scene)
    g_tx = 10.0 ** (gain_dbi(tx_pattern, wrap_to_180(path.departure_az_deg - tx_orientation_deg)) / 20.0)
    g_rx = 10.0 ** (gain_dbi(rx_pattern, wrap_to_180(path.arrival_az_deg - rx_orientation_deg)) / 20.0)
    length = path.length_m
    interactions = path.interactions

    def envelope(f_hz: float) -> complex:
        f_ghz = f_hz / 1e9
        lam = SPEED_OF_LIGHT / f_hz
        coeff = complex(g_tx * g_rx * lam / (4.0 * math.pi * length))
        for inter in interactions:
            coeff *= _interaction_coefficient(scene, inter, f_ghz, fc, polarization)
        return coeff

    return LinkBudgetTerm(path=path, envelope=envelope)


def path_gain(
    path: PropagationPath,
    scene: Scene,
    tx_pattern: AntennaPattern,
    tx_orientation_deg: float,
    rx_pattern: AntennaPattern,
    rx_orientation_deg: float,
    f_ghz: float,
    polarization: Polarization = "TE",
) -> complex:
    """Full complex path gain at one frequency, propagation phase included."""
    term = make_term(scene, path, tx_pattern, tx_orientation_deg, rx_pattern, rx_orientation_deg, polarization)
    f_hz = f_ghz * 1e9
    k = 2.0 * math.pi * f_hz / SPEED_OF_LIGHT
    return term.envelope(f_hz) * complex(math.cos(-k * path.length_m), math.sin(-k * path.length_m))


@dataclass(frozen=True)
class AoaSweep:
    azimuths_deg: np.ndarray
    power_dbm: np.ndarray

    @property
    def argmax_deg(self) -> float:
        return float(self.azimuths_deg[int(np.argmax(self.power_dbm))])

    @property
    def max_power_dbm(self) -> float:
        return float(np.max(self.power_dbm))


def aoa_sweep(
    scene: Scene,
    tx_position: Point2,
    tx_pattern: AntennaPattern,
    tx_orientation_deg: float,
    rx_position: Point2,
    rx_pattern: AntennaPattern,
    step_deg: float = 6.0,
    max_order: int = 2,
    polarization: Polarization = "TE",
    remove_boresight_gains: bool = True,
) -> AoaSweep:
    """Received power versus receiver azimuth, paths summed in power.

    Power is in dBm with the plan's transmit power; with
    ``remove_boresight_gains`` both boresight gains are subtracted, mirroring
    measurement post-processing that removes the nominal antenna gains.
    """
    if step_deg <= 0 or abs(360.0 / step_deg - round(360.0 / step_deg)) > 1e-9:
        raise ValueError("step must divide 360")
    plan = scene.frequency_plan or FrequencyPlan()
    fc_hz = plan.fc_ghz * 1e9
    paths = find_paths(scene, tx_position, rx_position, max_order)
    azimuths = np.arange(0.0, 360.0, step_deg)
    powers_mw = np.zeros_like(azimuths)
    iso = isotropic()
    for path in paths:
        term = make_term(scene, path, tx_pattern, tx_orientation_deg, iso, 0.0, polarization)
        base = abs(term.envelope(fc_hz)) ** 2
        offsets = np.array([wrap_to_180(path.arrival_az_deg - az) for az in azimuths])
        rx_lin = np.array([10.0 ** (gain_dbi(rx_pattern, off) / 10.0) for off in offsets])
        powers_mw += base * rx_lin
    ref = 0.0
    if remove_boresight_gains:
        ref = tx_pattern.boresight_gain_dbi + rx_pattern.boresight_gain_dbi
    with np.errstate(divide="ignore"):
        power_dbm = plan.tx_power_dbm + 10.0 * np.log10(powers_mw) - ref
    return AoaSweep(azimuths_deg=azimuths, power_dbm=power_dbm)


@dataclass(frozen=True)
class CoveragePoint:
    label: str
    position: Point2
    path_loss_db: float


def coverage_sweep(
    scene: Scene,
    tx_entries: Sequence[tuple[str, Point2, AntennaPattern, float]],
    rx_position: Point2,
    rx_pattern: AntennaPattern,
    rx_orientation_deg: float,
    max_order: int = 2,
    polarization: Polarization = "TE",
) -> list[CoveragePoint]:
    """Band-averaged path loss per transmitter position (linear-scale mean).

    The loss is antenna-gain-referenced: the pattern shapes weight the
    multipath, then both boresight gains are added back so a boresight-aligned
    LOS link reports the free-space value.
    """
    plan = scene.frequency_plan or FrequencyPlan()
    out: list[CoveragePoint] = []
    for label, position, pattern, orientation in tx_entries:
        paths = find_paths(scene, position, rx_position, max_order)
        if not paths:
            out.append(CoveragePoint(label, position, math.inf))
            continue
        terms = [
            make_term(scene, p, pattern, orientation, rx_pattern, rx_orientation_deg, polarization)
            for p in paths
        ]
        resp = synthesize(terms, plan)
        pl = average_path_loss(resp) + pattern.boresight_gain_dbi + rx_pattern.boresight_gain_dbi
        out.append(CoveragePoint(label, position, pl))
    return out
