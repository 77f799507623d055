#!/usr/bin/env python3
"""Angle-of-arrival sweeps in the T-corridor, with and without the groove panel.

A horn receiver rotates in 6 deg steps at each position along the cross
corridor.  At P0 (the axis crossing) the link is line of sight; from L1
onward only the reflectarray's quasi-endfire beam reaches the receiver, and
the sweep maximum tracks the panel direction down the corridor.
"""

from mmwray.geometry import bearing_deg
from mmwray.raytrace import aoa_sweep
from mmwray.scenarios import t_corridor

with_panel = t_corridor()
without = t_corridor(with_panel=False)

print(f"{'pos':>4s} | {'with panel':>12s} {'argmax':>7s} | {'no panel':>12s} {'argmax':>7s} | {'gain':>6s}")
for label in ("P0", "R2", "L1", "L3", "L6", "L9"):
    row = []
    for sc in (with_panel, without):
        tx, rx = sc.tx[0], sc.rx_by_label(label)
        sweep = aoa_sweep(
            sc.scene,
            tx.position,
            tx.pattern,
            tx.orientation_deg,
            rx.position,
            rx.pattern,
            step_deg=rx.sweep_step_deg,
            max_order=2,
        )
        row.append(sweep)
    gain = row[0].max_power_dbm - row[1].max_power_dbm
    print(
        f"{label:>4s} | {row[0].max_power_dbm:9.1f} dBm {row[0].argmax_deg:6.0f}d | "
        f"{row[1].max_power_dbm:9.1f} dBm {row[1].argmax_deg:6.0f}d | {gain:5.1f} dB"
    )

l3 = with_panel.rx_by_label("L3")
panel_bearing = bearing_deg(l3.position, with_panel.scene.segments[-1].midpoint())
print(f"\nfor reference, the panel lies at bearing {panel_bearing:.0f} deg from L3")
