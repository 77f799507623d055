#!/usr/bin/env python3
"""Design the 80-groove panel and look at what it does to a normal-incidence wave.

The panel alternates two groove depths.  With ideal half-turn phase steps the
array factor is fully coherent at grazing (the grating condition sin(theta) =
lambda / (2 pitch)); the fabricated two-depth geometry realizes a 262 deg TEM
step instead, which leaves a specular residue but still throws two quasi-
endfire beams near +/-82 deg.
"""

import numpy as np

from mmwray.reflectarray import (
    cell_phase,
    design_panel,
    peak_directions,
    scatter_pattern,
    scattered_power_fraction,
)

F0 = 60.0
NORMAL = (0.0, -1.0)

for mode in ("ideal_tem", "table2"):
    panel = design_panel(F0, 80, mode)
    print(f"== {mode}: {panel.n_cells} cells, {panel.size_x_m * 100:.1f} cm wide")
    print(
        "   first cells (depth mm -> phase deg):",
        ", ".join(f"{c.depth_mm:.2f} -> {cell_phase(c, F0):+.1f}" for c in panel.cells[:4]),
    )
    pat = scatter_pattern(panel, NORMAL, F0, 0.1)
    mag = 20 * np.log10(np.abs(pat.amplitude) / panel.n_cells + 1e-12)
    for lo, hi, tag in ((-90, -70, "left beam"), (-5, 5, "specular"), (70, 90, "right beam")):
        mask = (pat.angles_deg > lo) & (pat.angles_deg < hi)
        i = np.argmax(mag[mask])
        print(f"   {tag:9s}: {mag[mask][i]:7.2f} dB at {pat.angles_deg[mask][i]:+.1f} deg")
    print(f"   scattered/intercepted power: {scattered_power_fraction(panel, F0):.3f}")
    print(f"   strongest directions: {np.round(peak_directions(panel, NORMAL, F0)[:3], 1)} deg")
    print()

np.savetxt(
    "reflectarray_pattern.csv",
    np.column_stack(
        [
            scatter_pattern(design_panel(F0, 80, "table2"), NORMAL, F0, 0.1).angles_deg,
            np.abs(scatter_pattern(design_panel(F0, 80, "table2"), NORMAL, F0, 0.1).amplitude),
        ]
    ),
    delimiter=",",
    header="angle_deg,amplitude",
    comments="",
)
print("bistatic pattern written to reflectarray_pattern.csv")
