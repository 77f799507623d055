"""Wideband channel synthesis, path-loss averaging, and power delay profiles.

This mirrors a VNA processing chain: the channel is sampled at n_points across
the band, the average path loss is the linear-scale mean of |H|^2, and the PDP
is the inverse transform of the (optionally windowed) samples.  The default
window is rectangular, which keeps Parseval exact at pad_factor 1; the inverse
transform is zero-padded by 4 so peak delays can be read off a fine grid while
the resolution claim stays 1/bandwidth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence

import numpy as np

SPEED_OF_LIGHT = 299792458.0


@dataclass(frozen=True)
class FrequencyPlan:
    fc_ghz: float = 60.0
    bandwidth_ghz: float = 2.0
    n_points: int = 401
    tx_power_dbm: float = 0.0

    def __post_init__(self) -> None:
        if self.n_points < 2:
            raise ValueError("n_points must be >= 2")
        if self.fc_ghz <= 0 or self.bandwidth_ghz <= 0:
            raise ValueError("fc and bandwidth must be > 0")

    @property
    def df_hz(self) -> float:
        return self.bandwidth_ghz * 1e9 / (self.n_points - 1)

    def frequencies_hz(self) -> np.ndarray:
        f0 = (self.fc_ghz - self.bandwidth_ghz / 2.0) * 1e9
        return f0 + self.df_hz * np.arange(self.n_points)


class PathTerm(Protocol):
    """What synthesize() needs from a propagation path."""

    @property
    def delay_s(self) -> float: ...

    def envelope(self, f_hz: float) -> complex: ...


@dataclass(frozen=True)
class ChannelResponse:
    plan: FrequencyPlan
    samples: np.ndarray

    def __post_init__(self) -> None:
        if len(self.samples) != self.plan.n_points:
            raise ValueError("sample count must equal the plan's n_points")


@dataclass(frozen=True)
class PDP:
    delays_ns: np.ndarray
    power_db: np.ndarray
    normalization: str
    resolution_ns: float


def synthesize(terms: Sequence[PathTerm], plan: FrequencyPlan) -> ChannelResponse:
    """H(f_i) = sum over paths of envelope(f_i) * exp(-j 2 pi f_i tau)."""
    if not terms:
        raise ValueError("need at least one path term")
    freqs = plan.frequencies_hz()
    h = np.zeros(plan.n_points, dtype=complex)
    for term in terms:
        env = np.array([term.envelope(f) for f in freqs])
        h += env * np.exp(-2j * math.pi * freqs * term.delay_s)
    return ChannelResponse(plan=plan, samples=h)


def average_path_loss(resp: ChannelResponse) -> float:
    """-10 log10 of the linear-scale mean of |H|^2 over the frequency points."""
    mean_power = float(np.mean(np.abs(resp.samples) ** 2))
    if mean_power <= 0.0:
        return math.inf
    return -10.0 * math.log10(mean_power)


_WINDOWS = ("rectangular", "hann")
_NORMALIZATIONS = ("absolute", "relative_to_global_max")


def pdp(
    resp: ChannelResponse,
    window: str = "rectangular",
    normalization: str = "absolute",
    pad_factor: int = 4,
) -> PDP:
    """Power delay profile of a channel response.

    The delay grid step is 1/(pad_factor * n_points * df); the delay
    resolution is 1/bandwidth regardless of padding.  ``relative_to_global_max``
    places the profile's own maximum at 0 dB; use :func:`normalize_relative`
    to normalize a set of PDPs to one shared maximum.
    """
    if window not in _WINDOWS:
        raise ValueError(f"unknown window {window!r}")
    if normalization not in _NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    if pad_factor < 1:
        raise ValueError("pad_factor must be >= 1")
    n = resp.plan.n_points
    w = np.ones(n) if window == "rectangular" else np.hanning(n)
    m = pad_factor * n
    impulse = np.fft.ifft(w * resp.samples, n=m) * (m / n)
    delays_ns = np.arange(m) / (m * resp.plan.df_hz) * 1e9
    power_lin = np.abs(impulse) ** 2
    with np.errstate(divide="ignore"):
        power_db = 10.0 * np.log10(power_lin)
    if normalization == "relative_to_global_max":
        power_db = power_db - np.max(power_db)
    return PDP(
        delays_ns=delays_ns,
        power_db=power_db,
        normalization=normalization,
        resolution_ns=1.0 / resp.plan.bandwidth_ghz,
    )


def normalize_relative(profiles: Iterable[PDP]) -> list[PDP]:
    """Re-reference a set of PDPs to the maximum over the whole set (0 dB)."""
    profiles = list(profiles)
    if not profiles:
        return []
    global_max = max(float(np.max(p.power_db)) for p in profiles)
    return [
        PDP(
            delays_ns=p.delays_ns,
            power_db=p.power_db - global_max,
            normalization="relative_to_global_max",
            resolution_ns=p.resolution_ns,
        )
        for p in profiles
    ]


def peak_delay_ns(profile: PDP) -> float:
    """Delay of the strongest PDP bin."""
    return float(profile.delays_ns[int(np.argmax(profile.power_db))])


def peak_level_db(profile: PDP, near_delay_ns: float | None = None, half_window_ns: float = 1.0) -> float:
    """Peak bin level, optionally restricted to a window around a given delay."""
    if near_delay_ns is None:
        return float(np.max(profile.power_db))
    mask = np.abs(profile.delays_ns - near_delay_ns) <= half_window_ns
    if not np.any(mask):
        raise ValueError("no PDP bins inside the requested delay window")
    return float(np.max(profile.power_db[mask]))
