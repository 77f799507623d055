#!/usr/bin/env python3
"""Power delay profiles in the meeting room: blocking and the whiteboard detour.

Four cases on the same 3 m link: clear line of sight; a person standing
mid-link; the same but with the transmitter depointed 30 deg onto the
whiteboard; and both antennas depointed onto the board.  Profiles are
normalized to one shared 0 dB (the clear-LOS peak), the way swept-frequency
measurements are usually reported.
"""

import numpy as np

from mmwray.channel import normalize_relative, pdp, peak_delay_ns, synthesize
from mmwray.diffraction import screen_blockage_loss
from mmwray.geometry import Point2
from mmwray.raytrace import find_paths, make_term
from mmwray.scenarios import meeting_room

CASES = ("los", "blocked", "blocked_tx_depointed", "blocked_both_depointed")

profiles = []
for case in CASES:
    sc = meeting_room(case)
    tx, rx = sc.tx[0], sc.rx[0]
    paths = find_paths(sc.scene, tx.position, rx.position, max_order=2)
    terms = [
        make_term(sc.scene, p, tx.pattern, tx.orientation_deg, rx.pattern, rx.orientation_deg)
        for p in paths
    ]
    profiles.append(pdp(synthesize(terms, sc.scene.frequency_plan)))

for case, prof in zip(CASES, normalize_relative(profiles)):
    peak = peak_delay_ns(prof)
    level = float(np.max(prof.power_db))
    print(f"{case:>24s}: strongest arrival {level:7.2f} dB at {peak:5.2f} ns")

blocked = meeting_room("blocked")
loss = screen_blockage_loss(
    blocked.scene.blockers[0], Point2(0, 0), Point2(3, 0), 60.0, blocked.scene.plane_height_m
)
print(f"\nstanding person on the direct ray: {loss:.1f} dB screen loss")
print("depointing both horns onto the whiteboard trades that for the")
print("0.46 m longer reflected route (spreading + 0.55 dB board loss).")
