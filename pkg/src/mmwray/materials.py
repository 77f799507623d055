"""Reflection-coefficient models for walls, metal panels, and boards.

Phase convention used throughout the package: time dependence exp(+j*2*pi*f*t).
A lossy dielectric therefore carries eps_r = eps' - j*eps'' with eps'' >= 0,
and the reflection coefficient of a conductor is -1 (magnitude 1, phase 180 deg).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal


class MaterialModel(str, Enum):
    PERFECT_CONDUCTOR = "perfect_conductor"
    FIXED_LOSS = "fixed_loss"
    DIELECTRIC = "dielectric"


Polarization = Literal["TE", "TM"]


@dataclass(frozen=True)
class Material:
    """Surface material; which extra field is meaningful depends on ``model``.

    ``reflection_loss_db`` applies to the fixed-loss model only and
    ``eps_r`` to the dielectric model only.
    """

    name: str
    model: MaterialModel
    reflection_loss_db: float = 0.0
    eps_r: complex = 1.0 + 0.0j

    def __post_init__(self) -> None:
        if self.reflection_loss_db < 0.0:
            raise ValueError(f"material {self.name}: reflection_loss_db must be >= 0")
        if self.model is MaterialModel.DIELECTRIC:
            if self.eps_r.real < 1.0:
                raise ValueError(f"material {self.name}: Re(eps_r) must be >= 1")
            if self.eps_r.imag > 0.0:
                raise ValueError(
                    f"material {self.name}: Im(eps_r) must be <= 0 for the "
                    "exp(+j*2*pi*f*t) convention"
                )


def perfect_conductor(name: str = "metal") -> Material:
    return Material(name=name, model=MaterialModel.PERFECT_CONDUCTOR)


def fixed_loss(name: str, loss_db: float) -> Material:
    return Material(name=name, model=MaterialModel.FIXED_LOSS, reflection_loss_db=loss_db)


def dielectric(name: str, eps_r: complex) -> Material:
    return Material(name=name, model=MaterialModel.DIELECTRIC, eps_r=complex(eps_r))


def reflection_coefficient(
    m: Material,
    incidence_angle_deg: float,
    polarization: Polarization = "TE",
    f_ghz: float = 60.0,
) -> complex:
    """Complex reflection coefficient for incidence measured from the normal.

    TE means the E field is perpendicular to the plane of incidence (vertical
    polarization for in-plane propagation); TM is the complement.  The fixed-
    loss and conductor models are angle- and frequency-independent.
    """
    if not 0.0 <= incidence_angle_deg < 90.0:
        raise ValueError(f"incidence angle must be in [0, 90), got {incidence_angle_deg}")
    if polarization not in ("TE", "TM"):
        raise ValueError(f"unknown polarization {polarization!r}")

    if m.model is MaterialModel.PERFECT_CONDUCTOR:
        return -1.0 + 0.0j
    if m.model is MaterialModel.FIXED_LOSS:
        return -(10.0 ** (-m.reflection_loss_db / 20.0)) + 0.0j

    theta = math.radians(incidence_angle_deg)
    cos_i = math.cos(theta)
    sin2 = math.sin(theta) ** 2
    root = cmath.sqrt(m.eps_r - sin2)
    if polarization == "TE":
        return (cos_i - root) / (cos_i + root)
    return (m.eps_r * cos_i - root) / (m.eps_r * cos_i + root)
