"""Parametric antenna gain patterns (omni and horn).

The main lobe is parabolic in dB with -3 dB at half the half-power beamwidth,
clamped below at ``boresight_gain_dbi - sidelobe_floor_db``.  Omni patterns are
azimuth-invariant and keep only the elevation taper.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class PatternKind(str, Enum):
    OMNI = "omni"
    HORN = "horn"


def wrap_to_180(angle_deg: float) -> float:
    """Wrap an angle to [-180, 180)."""
    return (angle_deg + 180.0) % 360.0 - 180.0


@dataclass(frozen=True)
class Orientation:
    """Boresight azimuth in the scene frame, counterclockwise from +x."""

    azimuth_deg: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "azimuth_deg", self.azimuth_deg % 360.0)


@dataclass(frozen=True)
class AntennaPattern:
    kind: PatternKind
    boresight_gain_dbi: float
    hpbw_az_deg: float
    hpbw_el_deg: float
    sidelobe_floor_db: float = 25.0

    def __post_init__(self) -> None:
        if self.hpbw_az_deg <= 0 or self.hpbw_el_deg <= 0:
            raise ValueError("half-power beamwidths must be > 0")
        if self.sidelobe_floor_db <= 0:
            raise ValueError("sidelobe_floor_db must be > 0")


def horn(
    boresight_gain_dbi: float = 22.5,
    hpbw_az_deg: float = 13.0,
    hpbw_el_deg: float = 10.0,
    sidelobe_floor_db: float = 25.0,
) -> AntennaPattern:
    """The 22.5 dBi measurement horn (13 deg az, 10 deg el at -3 dB)."""
    return AntennaPattern(PatternKind.HORN, boresight_gain_dbi, hpbw_az_deg, hpbw_el_deg, sidelobe_floor_db)


def omni(
    boresight_gain_dbi: float = 2.0,
    hpbw_el_deg: float = 30.0,
    sidelobe_floor_db: float = 25.0,
) -> AntennaPattern:
    """Azimuth-omnidirectional pattern with an elevation taper."""
    return AntennaPattern(PatternKind.OMNI, boresight_gain_dbi, 360.0, hpbw_el_deg, sidelobe_floor_db)


def isotropic() -> AntennaPattern:
    """0 dBi reference pattern; used for the antenna-gains-removed channel view."""
    return AntennaPattern(PatternKind.OMNI, 0.0, 360.0, 1e9, 300.0)


def gain_dbi(pattern: AntennaPattern, offset_az_deg: float, offset_el_deg: float = 0.0) -> float:
    """Gain toward a direction offset from boresight, in dBi."""
    off_el = wrap_to_180(offset_el_deg)
    g = pattern.boresight_gain_dbi - 12.0 * (off_el / pattern.hpbw_el_deg) ** 2
    if pattern.kind is PatternKind.HORN:
        off_az = wrap_to_180(offset_az_deg)
        g -= 12.0 * (off_az / pattern.hpbw_az_deg) ** 2
    floor = pattern.boresight_gain_dbi - pattern.sidelobe_floor_db
    return max(g, floor)
