"""Piecewise-constant weather attenuation on top of the static link budget."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .planner import SpectralEfficiencyModel, ThzTransceiver, evaluate_hop


@dataclass(frozen=True)
class WeatherSegment:
    start: float  # s
    condition: str
    specific_attenuation: float  # dB/km


@dataclass(frozen=True)
class WeatherProfile:
    segments: Tuple[WeatherSegment, ...]
    horizon: float  # s

    def __post_init__(self) -> None:
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ValueError("weather profile needs at least one segment")
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            raise ValueError("profile horizon must be > 0")
        if segs[0].start != 0:
            raise ValueError("first weather segment must start at t = 0")
        for prev, cur in zip(segs, segs[1:]):
            if not cur.start > prev.start:
                raise ValueError("weather segments must be sorted with strictly increasing starts")
        if segs[-1].start >= self.horizon:
            raise ValueError("weather segment starts beyond the profile horizon")
        for s in segs:
            if not (math.isfinite(s.specific_attenuation) and s.specific_attenuation >= 0):
                raise ValueError("specific_attenuation must be >= 0")

    @classmethod
    def clear(cls, horizon: float = math.inf) -> "WeatherProfile":
        return cls((WeatherSegment(0.0, "clear", 0.0),), horizon)

    @property
    def starts(self) -> List[float]:
        return [s.start for s in self.segments]

    def segment_at(self, t: float) -> WeatherSegment:
        if not 0 <= t < self.horizon:
            raise ValueError(f"t = {t!r} s outside profile horizon [0, {self.horizon!r})")
        return self.segments[bisect.bisect_right(self.starts, t) - 1]


def excess_loss_at(profile: WeatherProfile, t: float, path_length: float) -> float:
    """Weather loss in dB over ``path_length`` metres at time ``t``."""
    if not path_length > 0:
        raise ValueError("path_length must be > 0")
    return profile.segment_at(t).specific_attenuation * path_length / 1000.0


@dataclass(frozen=True)
class LinkState:
    segment: WeatherSegment
    rx_power: float  # dBm
    bandwidth: float  # Hz
    rate: float  # bit/s


def link_state_timeline(
    profile: WeatherProfile,
    distance: float,
    transceiver: ThzTransceiver,
    model: SpectralEfficiencyModel,
    adaptive_bandwidth: Optional[bool] = None,
) -> List[LinkState]:
    """Link budget and rate of one hop for every weather segment.

    By default the bandwidth is held at the transceiver's design value and the
    CNR absorbs the weather; ``adaptive_bandwidth=True`` instead shrinks the
    bandwidth to keep the design CNR.
    """
    if not distance > 0:
        raise ValueError("distance must be > 0")
    out = []
    for seg in profile.segments:
        extra = seg.specific_attenuation * distance / 1000.0
        p_rx, bw, _, rate = evaluate_hop(transceiver, distance, model, extra, adaptive_bandwidth)
        out.append(LinkState(seg, p_rx, bw, rate))
    return out


def rate_steps(
    profile: WeatherProfile, states: Sequence[LinkState]
) -> List[Tuple[float, float]]:
    """(start time, rate) pairs, merging consecutive equal rates."""
    steps: List[Tuple[float, float]] = []
    for seg, st in zip(profile.segments, states):
        if steps and steps[-1][1] == st.rate:
            continue
        steps.append((seg.start, st.rate))
    return steps
