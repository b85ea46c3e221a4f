"""eCPRI fronthaul IQ data rates for the 7.2 functional split.

The required rate is the product of subcarrier count (kept as the real ratio
bandwidth / subcarrier spacing), symbol rate, antenna count, bits per complex
sample and a flat overhead factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Iterable, List, Tuple

__all__ = [
    "FronthaulParams",
    "FrameModel",
    "TABLE1",
    "fronthaul_rate_dl",
    "fronthaul_rate_ul",
    "frame_model",
    "sweep_rates",
]

_INTEGER_FIELDS = ("symbols_per_subframe", "num_antennas", "quant_bits_per_sample")


@dataclass(frozen=True)
class FronthaulParams:
    bandwidth: float  # Hz
    subcarrier_spacing: float  # Hz
    subframe_period: float  # s
    symbols_per_subframe: int
    num_antennas: int
    quant_bits_per_sample: int  # I+Q combined
    overhead_factor: float  # >= 1

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise TypeError(f"{f.name} must be a number, got {value!r}")
            if not math.isfinite(value) or value <= 0:
                raise ValueError(f"{f.name} must be > 0, got {value!r}")
        for name in _INTEGER_FIELDS:
            value = getattr(self, name)
            if int(value) != value:
                raise ValueError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.quant_bits_per_sample % 2:
            raise ValueError(
                "quant_bits_per_sample must be even (I and Q symmetric), "
                f"got {self.quant_bits_per_sample}"
            )
        if self.overhead_factor < 1:
            raise ValueError(f"overhead_factor must be >= 1, got {self.overhead_factor!r}")

    @property
    def subcarriers(self) -> float:
        return self.bandwidth / self.subcarrier_spacing


TABLE1 = FronthaulParams(
    bandwidth=100e6,
    subcarrier_spacing=15e3,
    subframe_period=1e-3,
    symbols_per_subframe=14,
    num_antennas=8,
    quant_bits_per_sample=16,
    overhead_factor=4 / 3,
)


def _rate(p: FronthaulParams, quant_bits: int) -> float:
    return (
        p.subcarriers
        * (1.0 / p.subframe_period)
        * p.symbols_per_subframe
        * p.num_antennas
        * quant_bits
        * p.overhead_factor
    )


def fronthaul_rate_dl(params: FronthaulParams) -> float:
    """Downlink IQ data rate in bit/s."""
    return _rate(params, params.quant_bits_per_sample)


def fronthaul_rate_ul(params: FronthaulParams, ul_quant_bits: int) -> float:
    """Uplink IQ data rate in bit/s with its own quantization width."""
    if isinstance(ul_quant_bits, bool) or int(ul_quant_bits) != ul_quant_bits:
        raise ValueError(f"ul_quant_bits must be an integer, got {ul_quant_bits!r}")
    if ul_quant_bits <= 0 or ul_quant_bits % 2:
        raise ValueError(f"ul_quant_bits must be a positive even integer, got {ul_quant_bits!r}")
    return _rate(params, int(ul_quant_bits))


@dataclass(frozen=True)
class FrameModel:
    per_symbol_payload: float  # bits
    symbol_period: float  # s
    frames_per_second: float

    @property
    def rate(self) -> float:
        return self.per_symbol_payload * self.frames_per_second


def frame_model(params: FronthaulParams, quant_bits: int | None = None) -> FrameModel:
    """Split the stream into one frame per OFDM symbol (all antennas aggregated)."""
    bits = params.quant_bits_per_sample if quant_bits is None else quant_bits
    payload = params.subcarriers * bits * params.overhead_factor * params.num_antennas
    return FrameModel(
        per_symbol_payload=payload,
        symbol_period=params.subframe_period / params.symbols_per_subframe,
        frames_per_second=params.symbols_per_subframe / params.subframe_period,
    )


SWEEP_AXES = tuple(f.name for f in fields(FronthaulParams))


def sweep_rates(
    base: FronthaulParams, axis: str, values: Iterable[float]
) -> List[Tuple[float, float]]:
    """Evaluate the downlink rate with one parameter replaced by each value."""
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown axis {axis!r}; expected one of {', '.join(SWEEP_AXES)}")
    return [(v, fronthaul_rate_dl(replace(base, **{axis: v}))) for v in values]
