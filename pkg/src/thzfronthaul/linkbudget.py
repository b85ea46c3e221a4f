"""Free-space link budget for point-to-point THz links.

All quantities are handled in the dB domain where the physics is additive
(dBm, dBi, dB) and converted to linear units only for the noise and
bandwidth relations. Noise spectral density is carried in mW/Hz so it can be
combined directly with received powers in dBm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

SPEED_OF_LIGHT = 299_792_458.0  # m/s
BOLTZMANN = 1.380649e-23  # J/K

_FOUR_PI = 4.0 * math.pi


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def db_to_linear(x: float) -> float:
    """Convert dB (or dBm) to a linear ratio (or mW)."""
    x = _require_finite("x", x)
    return 10.0 ** (x / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a positive linear ratio (or mW) to dB (or dBm)."""
    x = _require_finite("x", x)
    if x <= 0.0:
        raise ValueError(f"linear value must be positive, got {x!r}")
    return 10.0 * math.log10(x)


def fspl_db(frequency: float, distance: float) -> float:
    """Free-space path loss 20*log10(4*pi*d*f/c) in dB.

    Args:
        frequency: carrier frequency in Hz (> 0)
        distance: link distance in m (> 0)
    """
    frequency = _require_finite("frequency", frequency)
    distance = _require_finite("distance", distance)
    if frequency <= 0.0 or distance <= 0.0:
        raise ValueError("frequency and distance must be positive")
    return 20.0 * math.log10(_FOUR_PI * distance * frequency / SPEED_OF_LIGHT)


@dataclass(frozen=True)
class LinkBudgetInput:
    """One hop of a THz link, fully specified."""

    carrier_frequency: float  # Hz
    distance: float  # m
    tx_power: float  # dBm
    tx_antenna_gain: float  # dBi
    rx_antenna_gain: float  # dBi
    excess_loss: float = 0.0  # dB, atmospheric + weather + packaging
    rx_noise_figure: float = 0.0  # dB
    antenna_temperature: float = 290.0  # K

    def __post_init__(self) -> None:
        for name in (
            "carrier_frequency",
            "distance",
            "tx_power",
            "tx_antenna_gain",
            "rx_antenna_gain",
            "excess_loss",
            "rx_noise_figure",
            "antenna_temperature",
        ):
            _require_finite(name, getattr(self, name))
        if self.carrier_frequency <= 0:
            raise ValueError("carrier_frequency must be > 0")
        if self.distance <= 0:
            raise ValueError("distance must be > 0")
        if self.antenna_temperature <= 0:
            raise ValueError("antenna_temperature must be > 0")
        if self.excess_loss < 0:
            raise ValueError("excess_loss must be >= 0")
        if self.rx_noise_figure < 0:
            raise ValueError("rx_noise_figure must be >= 0")


@dataclass(frozen=True)
class RadioProfile:
    """Transceiver RF parameters without a distance (a hop template)."""

    carrier_frequency: float
    tx_power: float
    tx_antenna_gain: float
    rx_antenna_gain: float
    excess_loss: float = 0.0
    rx_noise_figure: float = 0.0
    antenna_temperature: float = 290.0

    def __post_init__(self) -> None:
        # Validate by building a dummy hop.
        self.at(1.0)

    def at(self, distance: float, extra_loss: float = 0.0) -> LinkBudgetInput:
        """Instantiate the template for a hop of ``distance`` metres."""
        return LinkBudgetInput(
            carrier_frequency=self.carrier_frequency,
            distance=distance,
            tx_power=self.tx_power,
            tx_antenna_gain=self.tx_antenna_gain,
            rx_antenna_gain=self.rx_antenna_gain,
            excess_loss=self.excess_loss + extra_loss,
            rx_noise_figure=self.rx_noise_figure,
            antenna_temperature=self.antenna_temperature,
        )

    def with_gains(self, tx_gain: float, rx_gain: float) -> "RadioProfile":
        return replace(self, tx_antenna_gain=tx_gain, rx_antenna_gain=rx_gain)


def received_power_dbm(inp: LinkBudgetInput) -> float:
    """P_RX = P_TX + G_TX + G_RX - FSPL - excess loss, in dBm."""
    loss = fspl_db(inp.carrier_frequency, inp.distance)
    return (
        inp.tx_power
        + inp.tx_antenna_gain
        + inp.rx_antenna_gain
        - loss
        - inp.excess_loss
    )


def noise_spectral_density(antenna_temperature: float, noise_figure: float) -> float:
    """Receiver noise density k*T*F in mW/Hz."""
    antenna_temperature = _require_finite("antenna_temperature", antenna_temperature)
    if antenna_temperature <= 0:
        raise ValueError("antenna_temperature must be > 0")
    # J/K * K = W/Hz; x1e3 for mW/Hz
    return BOLTZMANN * antenna_temperature * db_to_linear(noise_figure) * 1e3


def max_bandwidth_for_cnr(rx_power: float, cnr: float, noise_density: float) -> float:
    """Widest bandwidth (Hz) at which the link still reaches ``cnr`` dB.

    Args:
        rx_power: received carrier power in dBm
        cnr: target carrier-to-noise ratio in dB
        noise_density: noise spectral density in mW/Hz
    """
    noise_density = _require_finite("noise_density", noise_density)
    if noise_density <= 0:
        raise ValueError("noise_density must be > 0")
    return db_to_linear(rx_power - cnr) / noise_density


def cnr_at_bandwidth(rx_power: float, bandwidth: float, noise_density: float) -> float:
    """CNR in dB of a carrier of ``rx_power`` dBm spread over ``bandwidth`` Hz."""
    bandwidth = _require_finite("bandwidth", bandwidth)
    noise_density = _require_finite("noise_density", noise_density)
    if bandwidth <= 0:
        raise ValueError("bandwidth must be > 0")
    if noise_density <= 0:
        raise ValueError("noise_density must be > 0")
    return rx_power - linear_to_db(noise_density * bandwidth)


@dataclass(frozen=True)
class LinkBudgetReport:
    fspl: float  # dB
    rx_power: float  # dBm
    noise_density: float  # mW/Hz
    cnr: Optional[float] = None  # dB at ``bandwidth``
    bandwidth: Optional[float] = None  # Hz
    max_bandwidth: Optional[float] = None  # Hz at ``target_cnr``
    target_cnr: Optional[float] = None  # dB


def link_budget(
    inp: LinkBudgetInput,
    *,
    bandwidth: Optional[float] = None,
    cnr: Optional[float] = None,
) -> LinkBudgetReport:
    """Evaluate the whole chain for one hop.

    Pass ``bandwidth`` to get the CNR over that bandwidth, ``cnr`` to get the
    widest bandwidth achieving it, or both.
    """
    loss = fspl_db(inp.carrier_frequency, inp.distance)
    p_rx = received_power_dbm(inp)
    n0 = noise_spectral_density(inp.antenna_temperature, inp.rx_noise_figure)
    return LinkBudgetReport(
        fspl=loss,
        rx_power=p_rx,
        noise_density=n0,
        cnr=None if bandwidth is None else cnr_at_bandwidth(p_rx, bandwidth, n0),
        bandwidth=bandwidth,
        max_bandwidth=None if cnr is None else max_bandwidth_for_cnr(p_rx, cnr, n0),
        target_cnr=cnr,
    )
