"""Built-in measurement scenes and a JSON scenario-file format.

Units are fixed across the file format and builders: meters, GHz, dBm,
degrees.  The three builders reproduce the measured environments:

* ``l_corridor``   - L-shaped plasterboard corridor (legs 3.69 x 2 m and
  4.7 x 1.62 m), an omni transmitter on 16 positions spaced 0.25 m, a horn
  receiver aimed at the center of a flat metal panel placed near the bend.
  The panel is aimed with the geometric bisector method so the farthest
  transmitter reflects onto the receiver; the vertical variant presents its
  0.595 m dimension in plane, the horizontal one 0.982 m.
* ``t_corridor``   - T junction with an 80-groove reflectarray facing down
  the transmitter corridor, 0.215 m off the back wall.  Receiver positions
  P0 (axis crossing), R1-R4 and L1-L9 spaced 1 m, each with a 6 deg AoA
  sweep.  The transmitter-to-P0 distance is not directly measurable from the
  published geometry, so it is an explicit parameter defaulting to 5.10 m
  (free-space inversion of the reported LOS level).
* ``meeting_room`` - 6.5 x 2.2 m room, two horns 3 m apart on a line 0.86 m
  off the whiteboard wall, a 2 m whiteboard (0.55 dB reflection loss)
  centered between them, and an absorbing-screen human blocker mid-link.
  The blocker's top edge sits 0.475 m above the propagation plane, the
  crest clearance consistent with the measured blocked-path delay.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Optional

from .antenna import AntennaPattern, Orientation, PatternKind, horn, omni
from .channel import FrequencyPlan
from .diffraction import BlockerScreen
from .geometry import Point2, Scene, Segment, SegmentKind, validate_scene
from .materials import Material, MaterialModel, dielectric, fixed_loss, perfect_conductor
from .reflectarray import GrooveCell, GroovePanel, design_panel

#: default plasterboard permittivity at 60 GHz (not measured in the campaigns)
PLASTERBOARD_EPS = 2.73 - 0.02j
#: blocker chest-to-crown clearance above the propagation plane
BLOCKER_CREST_M = 0.475


class ScenarioError(Exception):
    pass


class ScenarioFormatError(ScenarioError):
    pass


class ScenarioValidationError(ScenarioError):
    def __init__(self, violations) -> None:
        self.violations = list(violations)
        lines = "; ".join(f"{v.code}: {v.detail}" for v in self.violations)
        super().__init__(f"scene validation failed: {lines}")


@dataclass(frozen=True)
class Terminal:
    label: str
    position: Point2
    pattern: AntennaPattern
    orientation: Optional[Orientation] = None
    sweep_step_deg: Optional[float] = None

    @property
    def orientation_deg(self) -> float:
        if self.orientation is None:
            raise ValueError(f"terminal {self.label} has no fixed orientation")
        return self.orientation.azimuth_deg


@dataclass(frozen=True)
class Scenario:
    name: str
    scene: Scene
    tx: tuple[Terminal, ...]
    rx: tuple[Terminal, ...]

    def __post_init__(self) -> None:
        if not self.tx or not self.rx:
            raise ValueError("scenario needs at least one tx and one rx terminal")

    @property
    def labels(self) -> dict[Point2, str]:
        return {t.position: t.label for t in self.tx + self.rx}

    def rx_by_label(self, label: str) -> Terminal:
        for t in self.rx:
            if t.label == label:
                return t
        raise KeyError(f"no rx terminal labeled {label!r}")


class LCorridorVariant(str, Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    NONE = "none"


class MeetingRoomCase(str, Enum):
    LOS = "los"
    BLOCKED = "blocked"
    BLOCKED_TX_DEPOINTED = "blocked_tx_depointed"
    BLOCKED_BOTH_DEPOINTED = "blocked_both_depointed"


def _unit(dx: float, dy: float) -> tuple[float, float]:
    n = math.hypot(dx, dy)
    return dx / n, dy / n


def l_corridor(variant: LCorridorVariant | str = LCorridorVariant.VERTICAL) -> Scenario:
    variant = LCorridorVariant(variant)
    mats = {
        "plasterboard": dielectric("plasterboard", PLASTERBOARD_EPS),
        "metal_panel": perfect_conductor("metal_panel"),
    }
    outline = [
        Point2(0.0, 3.69),
        Point2(0.0, -1.62),
        Point2(4.7, -1.62),
        Point2(4.7, 0.0),
        Point2(2.0, 0.0),
        Point2(2.0, 3.69),
    ]
    segments = [
        Segment(outline[i], outline[(i + 1) % len(outline)], "plasterboard", SegmentKind.WALL)
        for i in range(len(outline))
    ]

    tx_y = -0.81
    tx_positions = [Point2(0.8 + 0.25 * k, tx_y) for k in range(16)]
    rx_pos = Point2(1.0, 3.44)
    panel_center = Point2(0.45, tx_y)

    if variant is not LCorridorVariant.NONE:
        # aim the panel normal along the bisector of panel->Tx16 and panel->Rx
        # (the geometric orientation method), so the farthest transmitter has
        # its specular point at the panel center
        ux, uy = _unit(tx_positions[-1].x - panel_center.x, tx_positions[-1].y - panel_center.y)
        vx, vy = _unit(rx_pos.x - panel_center.x, rx_pos.y - panel_center.y)
        nx, ny = _unit(ux + vx, uy + vy)
        tx_t, ty_t = -ny, nx
        half = 0.5 * (0.595 if variant is LCorridorVariant.VERTICAL else 0.982)
        segments.append(
            Segment(
                Point2(panel_center.x - half * tx_t, panel_center.y - half * ty_t),
                Point2(panel_center.x + half * tx_t, panel_center.y + half * ty_t),
                "metal_panel",
                SegmentKind.FLAT_PANEL,
            )
        )

    scene = Scene(
        segments=tuple(segments),
        materials=mats,
        frequency_plan=FrequencyPlan(60.0, 2.0, 401, 0.0),
        plane_height_m=1.37,
    )
    tx_pattern = omni(2.0, 30.0)
    rx_az = math.degrees(math.atan2(panel_center.y - rx_pos.y, panel_center.x - rx_pos.x))
    tx_terms = tuple(
        Terminal(f"Tx{k + 1}", p, tx_pattern, Orientation(0.0)) for k, p in enumerate(tx_positions)
    )
    rx_terms = (Terminal("Rx", rx_pos, horn(), Orientation(rx_az)),)
    return Scenario(f"l_corridor_{variant.value}", scene, tx_terms, rx_terms)


def t_corridor(tx_p0_distance_m: float = 5.10, with_panel: bool = True) -> Scenario:
    mats = {"plasterboard": dielectric("plasterboard", PLASTERBOARD_EPS)}
    x_far, x_near = 0.215, -1.215
    y_lo, y_hi = -5.0, 10.0
    x_end = -7.0
    segments = [
        Segment(Point2(x_far, y_lo), Point2(x_far, y_hi), "plasterboard"),
        Segment(Point2(x_near, 1.0), Point2(x_near, y_hi), "plasterboard"),
        Segment(Point2(x_near, y_lo), Point2(x_near, -1.0), "plasterboard"),
        Segment(Point2(x_near, y_hi), Point2(x_far, y_hi), "plasterboard"),
        Segment(Point2(x_near, y_lo), Point2(x_far, y_lo), "plasterboard"),
        Segment(Point2(x_end, 1.0), Point2(x_near, 1.0), "plasterboard"),
        Segment(Point2(x_end, -1.0), Point2(x_near, -1.0), "plasterboard"),
        Segment(Point2(x_end, -1.0), Point2(x_end, 1.0), "plasterboard"),
    ]
    panels: dict[str, GroovePanel] = {}
    if with_panel:
        segments.append(
            Segment(Point2(0.0, -0.10), Point2(0.0, 0.10), "groove_array", SegmentKind.REFLECTARRAY_PANEL)
        )
        panels["groove_array"] = design_panel(60.0, 80, "table2")

    p0 = Point2(-0.5, 0.0)
    tx_pos = Point2(p0.x - tx_p0_distance_m, 0.0)
    scene = Scene(
        segments=tuple(segments),
        materials=mats,
        panels=panels,
        frequency_plan=FrequencyPlan(60.0, 2.0, 801, 0.0),
        plane_height_m=1.70,
    )
    tx = (Terminal("Tx", tx_pos, horn(), Orientation(0.0)),)
    rx_list = [Terminal("P0", p0, horn(), None, 6.0)]
    rx_list += [Terminal(f"R{k}", Point2(p0.x, -float(k)), horn(), None, 6.0) for k in range(1, 5)]
    rx_list += [Terminal(f"L{k}", Point2(p0.x, float(k)), horn(), None, 6.0) for k in range(1, 10)]
    suffix = "" if with_panel else "_nopanel"
    return Scenario(f"t_corridor{suffix}", scene, tx, tuple(rx_list))


def meeting_room(case: MeetingRoomCase | str = MeetingRoomCase.LOS) -> Scenario:
    case = MeetingRoomCase(case)
    mats = {
        "plasterboard": dielectric("plasterboard", PLASTERBOARD_EPS),
        "whiteboard": fixed_loss("whiteboard", 0.55),
    }
    y_board, y_back = 0.86, -1.34
    x_lo, x_hi = -1.75, 4.75
    board_center = Point2(1.5, y_board)
    segments = [
        Segment(Point2(x_lo, y_board), Point2(0.5, y_board), "plasterboard"),
        Segment(Point2(0.5, y_board), Point2(2.5, y_board), "whiteboard", SegmentKind.FLAT_PANEL),
        Segment(Point2(2.5, y_board), Point2(x_hi, y_board), "plasterboard"),
        Segment(Point2(x_lo, y_back), Point2(x_hi, y_back), "plasterboard"),
        Segment(Point2(x_lo, y_back), Point2(x_lo, y_board), "plasterboard"),
        Segment(Point2(x_hi, y_back), Point2(x_hi, y_board), "plasterboard"),
    ]
    height = 1.71
    blockers: tuple[BlockerScreen, ...] = ()
    if case is not MeetingRoomCase.LOS:
        blockers = (
            BlockerScreen(
                center=Point2(1.5, 0.0),
                width_m=0.45,
                thickness_m=0.13,
                height_m=1.72,
                top_height_m=height + BLOCKER_CREST_M,
            ),
        )
    scene = Scene(
        segments=tuple(segments),
        materials=mats,
        blockers=blockers,
        frequency_plan=FrequencyPlan(60.0, 2.0, 401, 0.0),
        plane_height_m=height,
    )
    tx_pos, rx_pos = Point2(0.0, 0.0), Point2(3.0, 0.0)
    depoint = math.degrees(math.atan2(board_center.y - tx_pos.y, board_center.x - tx_pos.x))
    tx_az = depoint if case in (MeetingRoomCase.BLOCKED_TX_DEPOINTED, MeetingRoomCase.BLOCKED_BOTH_DEPOINTED) else 0.0
    rx_az = (
        math.degrees(math.atan2(board_center.y - rx_pos.y, board_center.x - rx_pos.x))
        if case is MeetingRoomCase.BLOCKED_BOTH_DEPOINTED
        else 180.0
    )
    tx = (Terminal("Tx", tx_pos, horn(), Orientation(tx_az)),)
    rx = (Terminal("Rx", rx_pos, horn(), Orientation(rx_az), 6.0),)
    return Scenario(f"meeting_room_{case.value}", scene, tx, rx)


def builtin_scenario(name: str, variant: Optional[str] = None, case: Optional[str] = None) -> Scenario:
    """Resolve a builder by name; used by the command-line front end."""
    if name == "l_corridor":
        return l_corridor(variant or LCorridorVariant.VERTICAL)
    if name == "t_corridor":
        if variant in (None, "panel"):
            return t_corridor()
        if variant == "none":
            return t_corridor(with_panel=False)
        raise ScenarioError(f"unknown t_corridor variant {variant!r} (use 'panel' or 'none')")
    if name == "meeting_room":
        return meeting_room(case or MeetingRoomCase.LOS)
    raise ScenarioError(f"unknown scenario {name!r}")


BUILTIN_NAMES = ("l_corridor", "t_corridor", "meeting_room")


# ---------------------------------------------------------------------------
# scenario file format (JSON, schema "mmwray-scene-1")

_FORMAT = "mmwray-scene-1"


def _point_to_json(p: Point2) -> list[float]:
    return [p.x, p.y]


def _pattern_to_json(p: AntennaPattern) -> dict:
    return {
        "kind": p.kind.value,
        "boresight_gain_dbi": p.boresight_gain_dbi,
        "hpbw_az_deg": p.hpbw_az_deg,
        "hpbw_el_deg": p.hpbw_el_deg,
        "sidelobe_floor_db": p.sidelobe_floor_db,
    }


def _material_to_json(m: Material) -> dict:
    out: dict = {"model": m.model.value}
    if m.model is MaterialModel.FIXED_LOSS:
        out["reflection_loss_db"] = m.reflection_loss_db
    if m.model is MaterialModel.DIELECTRIC:
        out["eps_r"] = [m.eps_r.real, m.eps_r.imag]
    return out


def _terminal_to_json(t: Terminal) -> dict:
    return {
        "label": t.label,
        "position": _point_to_json(t.position),
        "pattern": _pattern_to_json(t.pattern),
        "orientation_deg": None if t.orientation is None else t.orientation.azimuth_deg,
        "sweep_step_deg": t.sweep_step_deg,
    }


def scenario_to_dict(s: Scenario) -> dict:
    scene = s.scene
    return {
        "format": _FORMAT,
        "name": s.name,
        "plane_height_m": scene.plane_height_m,
        "frequency_plan": {
            "fc_ghz": scene.frequency_plan.fc_ghz,
            "bandwidth_ghz": scene.frequency_plan.bandwidth_ghz,
            "n_points": scene.frequency_plan.n_points,
            "tx_power_dbm": scene.frequency_plan.tx_power_dbm,
        },
        "materials": {name: _material_to_json(m) for name, m in scene.materials.items()},
        "segments": [
            {
                "a": _point_to_json(seg.a),
                "b": _point_to_json(seg.b),
                "material": seg.material_id,
                "kind": seg.kind.value,
            }
            for seg in scene.segments
        ],
        "panels": {
            name: {
                "design_frequency_ghz": p.design_frequency_ghz,
                "size_y_m": p.size_y_m,
                "conductivity_s_per_m": p.conductivity_s_per_m,
                "cells": [[c.pitch_mm, c.width_mm, c.depth_mm] for c in p.cells],
            }
            for name, p in scene.panels.items()
        },
        "blockers": [
            {
                "center": _point_to_json(b.center),
                "width_m": b.width_m,
                "thickness_m": b.thickness_m,
                "height_m": b.height_m,
                "top_height_m": b.top_height_m,
            }
            for b in scene.blockers
        ],
        "terminals": {
            "tx": [_terminal_to_json(t) for t in s.tx],
            "rx": [_terminal_to_json(t) for t in s.rx],
        },
    }


def save(scenario: Scenario, path: str | Path) -> None:
    """Write a scenario file; load(save(s)) reproduces s field for field."""
    Path(path).write_text(json.dumps(scenario_to_dict(scenario), indent=2) + "\n", encoding="utf-8")


def _require(data: dict, key: str, where: str):
    if key not in data:
        raise ScenarioFormatError(f"{where}: missing field {key!r}")
    return data[key]


def _parse_point(data, where: str) -> Point2:
    try:
        x, y = float(data[0]), float(data[1])
    except (TypeError, ValueError, IndexError) as exc:
        raise ScenarioFormatError(f"{where}: expected [x, y] in meters") from exc
    return Point2(x, y)


def _parse_material(name: str, data: dict) -> Material:
    where = f"materials[{name!r}]"
    model = _require(data, "model", where)
    try:
        model = MaterialModel(model)
    except ValueError as exc:
        raise ScenarioFormatError(f"{where}: unknown model {model!r}") from exc
    if model is MaterialModel.FIXED_LOSS:
        return fixed_loss(name, float(_require(data, "reflection_loss_db", where)))
    if model is MaterialModel.DIELECTRIC:
        re_im = _require(data, "eps_r", where)
        return dielectric(name, complex(float(re_im[0]), float(re_im[1])))
    return perfect_conductor(name)


def _parse_pattern(data: dict, where: str) -> AntennaPattern:
    try:
        return AntennaPattern(
            PatternKind(_require(data, "kind", where)),
            float(_require(data, "boresight_gain_dbi", where)),
            float(_require(data, "hpbw_az_deg", where)),
            float(_require(data, "hpbw_el_deg", where)),
            float(data.get("sidelobe_floor_db", 25.0)),
        )
    except ValueError as exc:
        raise ScenarioFormatError(f"{where}: {exc}") from exc


def _parse_terminal(data: dict, where: str) -> Terminal:
    orient = data.get("orientation_deg")
    return Terminal(
        label=str(_require(data, "label", where)),
        position=_parse_point(_require(data, "position", where), f"{where}.position"),
        pattern=_parse_pattern(_require(data, "pattern", where), f"{where}.pattern"),
        orientation=None if orient is None else Orientation(float(orient)),
        sweep_step_deg=None if data.get("sweep_step_deg") is None else float(data["sweep_step_deg"]),
    )


def scenario_from_dict(data: dict) -> Scenario:
    if data.get("format") != _FORMAT:
        raise ScenarioFormatError(f"unsupported format {data.get('format')!r}, expected {_FORMAT!r}")
    plan_data = _require(data, "frequency_plan", "scenario")
    try:
        plan = FrequencyPlan(
            float(_require(plan_data, "fc_ghz", "frequency_plan")),
            float(_require(plan_data, "bandwidth_ghz", "frequency_plan")),
            int(_require(plan_data, "n_points", "frequency_plan")),
            float(plan_data.get("tx_power_dbm", 0.0)),
        )
    except ValueError as exc:
        raise ScenarioFormatError(f"frequency_plan: {exc}") from exc
    materials = {
        name: _parse_material(name, mdata) for name, mdata in _require(data, "materials", "scenario").items()
    }
    segments = []
    for i, sdata in enumerate(_require(data, "segments", "scenario")):
        where = f"segments[{i}]"
        try:
            kind = SegmentKind(sdata.get("kind", "wall"))
        except ValueError as exc:
            raise ScenarioFormatError(f"{where}: unknown kind {sdata.get('kind')!r}") from exc
        try:
            segments.append(
                Segment(
                    _parse_point(_require(sdata, "a", where), f"{where}.a"),
                    _parse_point(_require(sdata, "b", where), f"{where}.b"),
                    str(_require(sdata, "material", where)),
                    kind,
                )
            )
        except ValueError as exc:
            raise ScenarioFormatError(f"{where}: {exc}") from exc
    panels = {}
    for name, pdata in data.get("panels", {}).items():
        where = f"panels[{name!r}]"
        try:
            cells = tuple(
                GrooveCell(float(c[0]), float(c[1]), float(c[2])) for c in _require(pdata, "cells", where)
            )
            panels[name] = GroovePanel(
                cells,
                float(_require(pdata, "design_frequency_ghz", where)),
                float(pdata.get("size_y_m", 0.20)),
                float(pdata.get("conductivity_s_per_m", 37.8e6)),
            )
        except (ValueError, TypeError, IndexError) as exc:
            raise ScenarioFormatError(f"{where}: {exc}") from exc
    blockers = []
    for i, bdata in enumerate(data.get("blockers", [])):
        where = f"blockers[{i}]"
        try:
            blockers.append(
                BlockerScreen(
                    _parse_point(_require(bdata, "center", where), f"{where}.center"),
                    float(_require(bdata, "width_m", where)),
                    float(_require(bdata, "thickness_m", where)),
                    float(_require(bdata, "height_m", where)),
                    float(bdata.get("top_height_m", math.inf)),
                )
            )
        except ValueError as exc:
            raise ScenarioFormatError(f"{where}: {exc}") from exc
    terminals = _require(data, "terminals", "scenario")
    tx = tuple(
        _parse_terminal(t, f"terminals.tx[{i}]") for i, t in enumerate(_require(terminals, "tx", "terminals"))
    )
    rx = tuple(
        _parse_terminal(t, f"terminals.rx[{i}]") for i, t in enumerate(_require(terminals, "rx", "terminals"))
    )
    scene = Scene(
        segments=tuple(segments),
        materials=materials,
        panels=panels,
        blockers=tuple(blockers),
        frequency_plan=plan,
        plane_height_m=float(data.get("plane_height_m", 0.0)),
    )
    return Scenario(str(data.get("name", "scenario")), scene, tx, rx)


def load(path: str | Path, validate: bool = True) -> Scenario:
    """Parse a scenario file, with field diagnostics and scene validation."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    scenario = scenario_from_dict(data)
    if validate:
        violations = validate_scene(scenario.scene)
        if violations:
            raise ScenarioValidationError(violations)
    return scenario


def golden_path(name: str) -> Path:
    """Path of a golden scenario file shipped with the package."""
    return Path(str(resources.files("mmwray").joinpath("data", f"{name}.json")))
