"""Metal-only groove reflectarray: cell phases, panel synthesis, scattering.

Each groove acts as a short-circuited parallel-plate waveguide, so its
reflection phase is 180 deg minus the TEM round trip 2*k0*depth, at unit
magnitude.  The panel's bistatic response is an array-factor sum over the
cells with a uniform-aperture element factor over the groove width.

The model is far-field by construction.  The fabricated 20 cm panel has
2*D^2/lambda = 16 m, so corridor-scale scenes technically sit in its near
field; the simulator still applies the array model, exactly as array-theory
panel design itself does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

SPEED_OF_LIGHT = 299792458.0


def wavelength_m(f_ghz: float) -> float:
    if f_ghz <= 0:
        raise ValueError("frequency must be > 0")
    return SPEED_OF_LIGHT / (f_ghz * 1e9)


def wavenumber(f_ghz: float) -> float:
    return 2.0 * math.pi / wavelength_m(f_ghz)


class PanelMode(str, Enum):
    IDEAL_TEM = "ideal_tem"
    TABLE2 = "table2"


@dataclass(frozen=True)
class GrooveCell:
    pitch_mm: float
    width_mm: float
    depth_mm: float

    def __post_init__(self) -> None:
        if not 0.0 < self.width_mm < self.pitch_mm:
            raise ValueError("groove width must satisfy 0 < width < pitch")
        if self.depth_mm < 0.0:
            raise ValueError("groove depth must be >= 0")


@dataclass(frozen=True)
class GroovePanel:
    cells: tuple[GrooveCell, ...]
    design_frequency_ghz: float
    size_y_m: float = 0.20
    conductivity_s_per_m: float = 37.8e6

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("panel needs at least one cell")

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def size_x_m(self) -> float:
        return sum(c.pitch_mm for c in self.cells) * 1e-3

    def cell_centers_m(self) -> np.ndarray:
        """Cell center abscissae along the panel, centered on the panel middle."""
        pitches = np.array([c.pitch_mm for c in self.cells]) * 1e-3
        edges = np.concatenate([[0.0], np.cumsum(pitches)])
        centers = 0.5 * (edges[:-1] + edges[1:])
        return centers - 0.5 * edges[-1]


@dataclass(frozen=True)
class ScatterPattern:
    angles_deg: np.ndarray
    amplitude: np.ndarray

    def __post_init__(self) -> None:
        if np.any(np.diff(self.angles_deg) <= 0):
            raise ValueError("angle grid must be strictly increasing")


def cell_phase(cell: GrooveCell, f_ghz: float) -> float:
    """Reflection phase of one groove in degrees, wrapped to (-180, 180].

    arg(Gamma) = 180 - 2 * k0 * depth; |Gamma| is 1 (full reflection).
    """
    phase = 180.0 - 2.0 * wavenumber(f_ghz) * cell.depth_mm * 1e-3 * 180.0 / math.pi
    wrapped = phase % 360.0
    if wrapped > 180.0:
        wrapped -= 360.0
    return wrapped


def cell_reflection(cell: GrooveCell, f_ghz: float) -> complex:
    return complex(np.exp(1j * math.radians(cell_phase(cell, f_ghz))))


def design_panel(f_ghz: float, n_cells: int, mode: PanelMode | str = PanelMode.TABLE2) -> GroovePanel:
    """Alternating two-depth panel.

    ``ideal_tem`` alternates depths 0 and lambda/4 so consecutive cells differ
    by exactly 180 deg under the TEM model, at pitch lambda/2.  ``table2``
    reproduces the fabricated geometry (pitch 2.5 mm, width 2 mm, depths
    2.3 / 0.48 mm), whose TEM phase step is 262 deg rather than the 180 deg
    target; the full-wave correction behind those depths is out of scope, so
    the panel is modeled with its raw TEM phases.
    """
    mode = PanelMode(mode)
    if n_cells <= 0 or n_cells % 2 != 0:
        raise ValueError("n_cells must be a positive even count")
    if mode is PanelMode.TABLE2:
        pitch, width, depths = 2.5, 2.0, (2.3, 0.48)
    else:
        lam_mm = wavelength_m(f_ghz) * 1e3
        pitch, width, depths = lam_mm / 2.0, 0.8 * lam_mm / 2.0, (0.0, lam_mm / 4.0)
    cells = tuple(
        GrooveCell(pitch_mm=pitch, width_mm=width, depth_mm=depths[i % 2]) for i in range(n_cells)
    )
    return GroovePanel(cells=cells, design_frequency_ghz=f_ghz)


def element_factor(sin_theta: float, cos_theta: float, width_m: float, f_ghz: float) -> float:
    """Uniform-aperture factor over the groove width times cos(theta) obliquity."""
    u = 0.5 * wavenumber(f_ghz) * width_m * sin_theta
    return float(np.sinc(u / math.pi)) * cos_theta


def _amplitude_from_sines(
    panel: GroovePanel, sin_in: float, cos_in: float, sin_out: float, cos_out: float, f_ghz: float
) -> complex:
    """Bistatic amplitude; ``sin_in`` is the tangential component of the
    incident propagation direction (source at angle theta has sin_in =
    -sin(theta)).  The element factor applies on both the source and the
    observation side, which makes the amplitude exactly reciprocal."""
    k = wavenumber(f_ghz)
    width = panel.cells[0].width_mm * 1e-3
    xs = panel.cell_centers_m()
    gammas = np.array([cell_reflection(c, f_ghz) for c in panel.cells])
    af = np.sum(gammas * np.exp(1j * k * xs * (sin_out - sin_in)))
    ef_src = element_factor(-sin_in, cos_in, width, f_ghz)
    ef_obs = element_factor(sin_out, cos_out, width, f_ghz)
    return complex(ef_src * ef_obs * af)


def scattered_amplitude(
    panel: GroovePanel, inc_dir: Sequence[float], obs_angle_deg: float, f_ghz: float
) -> complex:
    """Far-field scattered amplitude toward ``obs_angle_deg`` off the normal.

    The panel lies along its local +x axis with outward normal +z; ``inc_dir``
    is the unit propagation direction of the incident wave with negative z
    component (illumination from the front half-space).
    """
    dx, dz = float(inc_dir[0]), float(inc_dir[1])
    if dz >= 0:
        raise ValueError("incidence must come from the illuminated half-space (z component < 0)")
    theta = math.radians(obs_angle_deg)
    return _amplitude_from_sines(panel, dx, -dz, math.sin(theta), math.cos(theta), f_ghz)


def bounce_coefficient_from_sines(
    panel: GroovePanel, sin_in: float, sin_out: float, f_ghz: float
) -> complex:
    """Path-engine bounce factor: bistatic amplitude normalized to a same-size
    PEC plate observed broadside (|coefficient| = 1 for that reference)."""
    cos_in = math.sqrt(max(0.0, 1.0 - sin_in * sin_in))
    cos_out = math.sqrt(max(0.0, 1.0 - sin_out * sin_out))
    amp = _amplitude_from_sines(panel, sin_in, cos_in, sin_out, cos_out, f_ghz)
    return amp / panel.n_cells


def bounce_coefficient(
    panel: GroovePanel, inc_dir: Sequence[float], obs_angle_deg: float, f_ghz: float
) -> complex:
    return scattered_amplitude(panel, inc_dir, obs_angle_deg, f_ghz) / panel.n_cells


def scatter_pattern(
    panel: GroovePanel,
    inc_dir: Sequence[float],
    f_ghz: float,
    step_deg: float = 0.1,
    with_element_factor: bool = True,
) -> ScatterPattern:
    """Bistatic pattern over (-90, +90) on a regular angle grid."""
    dx, dz = float(inc_dir[0]), float(inc_dir[1])
    if dz >= 0:
        raise ValueError("incidence must come from the illuminated half-space (z component < 0)")
    angles = np.arange(-90.0 + step_deg / 2.0, 90.0, step_deg)
    k = wavenumber(f_ghz)
    xs = panel.cell_centers_m()
    gammas = np.array([cell_reflection(c, f_ghz) for c in panel.cells])
    sin_out = np.sin(np.radians(angles))
    af = np.exp(1j * k * np.outer(sin_out - dx, xs)) @ gammas
    if with_element_factor:
        width = panel.cells[0].width_mm * 1e-3
        cos_out = np.cos(np.radians(angles))
        u = 0.5 * k * width * sin_out
        ef_obs = np.sinc(u / math.pi) * cos_out
        ef_src = element_factor(-dx, -dz, width, f_ghz)
        af = af * ef_obs * ef_src
    return ScatterPattern(angles_deg=angles, amplitude=af)


def peak_directions(
    panel: GroovePanel,
    inc_dir: Sequence[float],
    f_ghz: float,
    step_deg: float = 0.1,
    with_element_factor: bool = True,
) -> np.ndarray:
    """Local maxima of the scattered magnitude, sorted by magnitude descending."""
    pat = scatter_pattern(panel, inc_dir, f_ghz, step_deg, with_element_factor)
    mag = np.abs(pat.amplitude)
    interior = (mag[1:-1] >= mag[:-2]) & (mag[1:-1] >= mag[2:])
    idx = np.where(interior)[0] + 1
    if mag[0] > mag[1]:
        idx = np.concatenate([[0], idx])
    if mag[-1] > mag[-2]:
        idx = np.concatenate([idx, [len(mag) - 1]])
    order = np.argsort(-mag[idx], kind="stable")
    return pat.angles_deg[idx[order]]


def scattered_power_fraction(panel: GroovePanel, f_ghz: float, n_angles: int = 4001) -> float:
    """Scattered-to-intercepted power ratio at normal incidence (passivity check).

    Uses the 2-D aperture normalization of the cell model: radiated power is
    the angular integral of |width * AF * EF|^2 * k / (2 pi); intercepted power
    is the total groove aperture (n_cells * width) at unit incident intensity.
    """
    k = wavenumber(f_ghz)
    width = panel.cells[0].width_mm * 1e-3
    theta = np.linspace(-math.pi / 2, math.pi / 2, n_angles)
    xs = panel.cell_centers_m()
    gammas = np.array([cell_reflection(c, f_ghz) for c in panel.cells])
    sin_t = np.sin(theta)
    af = np.exp(1j * k * np.outer(sin_t, xs)) @ gammas
    u = 0.5 * k * width * sin_t
    ef = np.sinc(u / math.pi) * np.cos(theta)
    radiated = np.trapezoid(np.abs(width * af * ef) ** 2, theta) * k / (2.0 * math.pi)
    return float(radiated / (panel.n_cells * width))
