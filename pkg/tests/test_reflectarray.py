import math

import numpy as np
import pytest

from mmwray.reflectarray import (
    GrooveCell,
    GroovePanel,
    bounce_coefficient_from_sines,
    cell_phase,
    design_panel,
    peak_directions,
    scatter_pattern,
    scattered_amplitude,
    scattered_power_fraction,
    wavelength_m,
    wavenumber,
)

F0 = 60.0
LAM_MM = wavelength_m(F0) * 1e3
NORMAL_INC = (0.0, -1.0)


class TestCellPhase:
    def test_zero_depth_short_circuit(self):
        assert cell_phase(GrooveCell(2.5, 2.0, 0.0), F0) == pytest.approx(180.0)

    def test_quarter_wave_round_trip(self):
        assert cell_phase(GrooveCell(2.5, 2.0, LAM_MM / 4), F0) == pytest.approx(0.0, abs=1e-9)

    def test_table2_depth_step(self):
        # oracle: phase difference is the TEM round trip 2 k0 (h1 - h2)
        expected = math.degrees(2 * wavenumber(F0) * (2.3e-3 - 0.48e-3))
        d = cell_phase(GrooveCell(2.5, 2, 2.3), F0) - cell_phase(GrooveCell(2.5, 2, 0.48), F0)
        assert abs(d) % 360.0 == pytest.approx(expected % 360.0, abs=1e-9)
        assert expected == pytest.approx(262.25, abs=0.05)

    def test_periodic_in_half_wavelength(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            h = rng.uniform(0.0, 3.0)
            a = cell_phase(GrooveCell(2.5, 2.0, h), F0)
            b = cell_phase(GrooveCell(2.5, 2.0, h + LAM_MM / 2), F0)
            assert (a - b) % 360.0 == pytest.approx(0.0, abs=1e-6) or (a - b) % 360.0 == pytest.approx(
                360.0, abs=1e-6
            )


class TestDesignPanel:
    def test_table2_fabricated_panel(self):
        panel = design_panel(F0, 80, "table2")
        assert panel.n_cells == 80
        assert all(c.pitch_mm == 2.5 and c.width_mm == 2.0 for c in panel.cells)
        assert [c.depth_mm for c in panel.cells[:4]] == [2.3, 0.48, 2.3, 0.48]
        assert panel.size_x_m == pytest.approx(0.20)

    def test_ideal_tem_exact_180_steps(self):
        panel = design_panel(F0, 80, "ideal_tem")
        phases = [cell_phase(c, F0) for c in panel.cells]
        for p1, p2 in zip(phases[:-1], phases[1:]):
            assert abs(p1 - p2) % 360.0 == pytest.approx(180.0, abs=1e-9)

    def test_smallest_panel(self):
        panel = design_panel(F0, 2, "ideal_tem")
        assert panel.n_cells == 2
        assert panel.size_x_m == pytest.approx(wavelength_m(F0), abs=1e-12)
        assert panel.size_x_m == pytest.approx(5.0e-3, abs=1e-5)

    def test_odd_count_rejected(self):
        with pytest.raises(ValueError):
            design_panel(F0, 3, "ideal_tem")


class TestScattering:
    def test_uniform_panel_specular_peak(self):
        cells = tuple(GrooveCell(2.5, 2.0, 1.0) for _ in range(40))
        panel = GroovePanel(cells, F0)
        peaks = peak_directions(panel, NORMAL_INC, F0)
        assert abs(peaks[0]) < 0.1

    def test_designed_panel_two_symmetric_beams(self):
        panel = design_panel(F0, 80, "table2")
        pat = scatter_pattern(panel, NORMAL_INC, F0, 0.1)
        mag = np.abs(pat.amplitude)
        for lo, hi in ((70.0, 89.99), (-89.99, -70.0)):
            mask = (pat.angles_deg >= lo) & (pat.angles_deg <= hi)
            peak_angle = pat.angles_deg[mask][np.argmax(mag[mask])]
            assert 70.0 <= abs(peak_angle) < 90.0

    def test_designed_beam_halfpower_width(self):
        panel = design_panel(F0, 80, "table2")
        pat = scatter_pattern(panel, NORMAL_INC, F0, 0.05)
        mag = np.abs(pat.amplitude)
        mask = (pat.angles_deg >= 60.0) & (pat.angles_deg <= 89.99)
        ang = pat.angles_deg[mask]
        sub = mag[mask]
        peak = np.argmax(sub)
        half = sub[peak] / math.sqrt(2.0)
        above = ang[sub >= half]
        near = above[np.abs(above - ang[peak]) < 15.0]
        width = near.max() - near.min()
        assert 5.0 <= width <= 20.0

    def test_ideal_grating_equation(self):
        # with the element factor off, the alternating panel is fully coherent
        # exactly at sin(theta) = lambda / (2 p) = 1
        panel = design_panel(F0, 80, "ideal_tem")
        amp_90 = 0.0 + 0.0j
        k = wavenumber(F0)
        xs = panel.cell_centers_m()
        for x, c in zip(xs, panel.cells):
            amp_90 += np.exp(1j * math.radians(cell_phase(c, F0))) * np.exp(1j * k * x * 1.0)
        assert abs(amp_90) == pytest.approx(panel.n_cells, abs=1e-6)
        pat = scatter_pattern(panel, NORMAL_INC, F0, 0.1, with_element_factor=False)
        argmax = pat.angles_deg[int(np.argmax(np.abs(pat.amplitude)))]
        assert abs(abs(argmax) - 90.0) <= 0.1

    def test_peak_directions_symmetric_pair(self):
        panel = design_panel(F0, 80, "ideal_tem")
        peaks = peak_directions(panel, NORMAL_INC, F0, with_element_factor=True)
        top_pos = next(p for p in peaks if p > 10)
        top_neg = next(p for p in peaks if p < -10)
        assert top_pos == pytest.approx(-top_neg, abs=0.2)

    def test_reciprocity(self):
        rng = np.random.default_rng(9)
        panel = design_panel(F0, 80, "table2")
        for _ in range(100):
            s_in, s_out = rng.uniform(-0.995, 0.995, 2)
            a = bounce_coefficient_from_sines(panel, s_in, s_out, F0)
            b = bounce_coefficient_from_sines(panel, -s_out, -s_in, F0)
            assert abs(a - b) < 1e-9

    def test_mirror_symmetric_sequence_pattern_symmetry(self):
        depths = [0.3, 1.1, 0.7, 0.7, 1.1, 0.3]
        cells = tuple(GrooveCell(2.5, 2.0, d) for d in depths)
        panel = GroovePanel(cells, F0)
        for theta in np.linspace(1.0, 89.0, 23):
            a = scattered_amplitude(panel, NORMAL_INC, theta, F0)
            b = scattered_amplitude(panel, NORMAL_INC, -theta, F0)
            assert abs(abs(a) - abs(b)) < 1e-9

    def test_passivity_random_panels(self):
        rng = np.random.default_rng(21)
        for _ in range(8):
            n = int(rng.integers(2, 30)) * 2
            depths = rng.uniform(0.0, 2.5, n)
            cells = tuple(GrooveCell(2.5, 2.0, float(d)) for d in depths)
            panel = GroovePanel(cells, F0)
            assert scattered_power_fraction(panel, F0) <= 1.01

    def test_illumination_side_enforced(self):
        panel = design_panel(F0, 80, "table2")
        with pytest.raises(ValueError):
            scattered_amplitude(panel, (0.0, 1.0), 10.0, F0)


def test_cell_invariants():
    with pytest.raises(ValueError):
        GrooveCell(2.5, 2.6, 1.0)
    with pytest.raises(ValueError):
        GrooveCell(2.5, 2.0, -0.1)
    with pytest.raises(ValueError):
        GroovePanel((), F0)
