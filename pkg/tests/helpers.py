"""Shared builders for randomized property tests."""

from __future__ import annotations

import math

import numpy as np

from mmwray.antenna import horn, isotropic, omni
from mmwray.channel import FrequencyPlan
from mmwray.diffraction import BlockerScreen
from mmwray.geometry import Point2, Scene, Segment, SegmentKind
from mmwray.materials import dielectric, fixed_loss, perfect_conductor
from mmwray.raytrace import find_paths, path_gain
from mmwray.reflectarray import design_panel


def random_scene(rng: np.random.Generator, with_panel: bool = True, with_blocker: bool = True):
    """Random rectangular room with assorted inner features and terminals."""
    w = rng.uniform(4.0, 9.0)
    h = rng.uniform(3.0, 6.0)
    mats = {
        "pb": dielectric("pb", complex(rng.uniform(2.0, 6.0), -rng.uniform(0.0, 0.4))),
        "metal": perfect_conductor("metal"),
        "board": fixed_loss("board", rng.uniform(0.1, 3.0)),
    }
    wall_mats = ["pb", "metal", "board"]
    corners = [Point2(0, 0), Point2(w, 0), Point2(w, h), Point2(0, h)]
    segments = [
        Segment(corners[i], corners[(i + 1) % 4], wall_mats[int(rng.integers(0, 3))])
        for i in range(4)
    ]
    panels = {}
    if with_panel and rng.random() < 0.5:
        cx, cy = rng.uniform(1.0, w - 1.0), rng.uniform(1.0, h - 1.0)
        ang = rng.uniform(0, math.pi)
        half = 0.1
        segments.append(
            Segment(
                Point2(cx - half * math.cos(ang), cy - half * math.sin(ang)),
                Point2(cx + half * math.cos(ang), cy + half * math.sin(ang)),
                "ra",
                SegmentKind.REFLECTARRAY_PANEL,
            )
        )
        panels["ra"] = design_panel(60.0, 20, "table2")
    blockers = ()
    plane_h = 1.5
    if with_blocker and rng.random() < 0.5:
        blockers = (
            BlockerScreen(
                Point2(rng.uniform(1.0, w - 1.0), rng.uniform(1.0, h - 1.0)),
                rng.uniform(0.3, 0.8),
                0.13,
                1.7,
                plane_h + rng.uniform(0.2, 0.8),
            ),
        )
    scene = Scene(
        segments=tuple(segments),
        materials=mats,
        panels=panels,
        blockers=blockers,
        frequency_plan=FrequencyPlan(60.0, 2.0, 41, 0.0),
        plane_height_m=plane_h,
    )

    def random_terminal():
        pos = Point2(rng.uniform(0.5, w - 0.5), rng.uniform(0.5, h - 0.5))
        kind = rng.random()
        if kind < 0.4:
            pat = horn()
        elif kind < 0.7:
            pat = omni()
        else:
            pat = isotropic()
        return pos, pat, float(rng.uniform(0, 360))

    return scene, random_terminal(), random_terminal()


def total_path_loss_db(scene, a, b, max_order=2):
    """Incoherent total path loss between two (position, pattern, az) triples."""
    a_pos, a_pat, a_az = a
    b_pos, b_pat, b_az = b
    paths = find_paths(scene, a_pos, b_pos, max_order)
    power = 0.0
    for p in paths:
        g = path_gain(p, scene, a_pat, a_az, b_pat, b_az, 60.0)
        power += abs(g) ** 2
    if power == 0.0:
        return math.inf
    return -10.0 * math.log10(power)
