"""Bundled reference data: published H-band link experiments."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import List, Tuple


@dataclass(frozen=True)
class ExperimentRecord:
    reference: str
    technology: str
    center_frequency: float  # Hz
    data_rate: float  # bit/s
    distance: float  # m
    signal_generation: str  # electronic | opto-electronic
    architecture: str  # simplex | duplex
    rate_is_upper_bound: bool = False

    def __post_init__(self) -> None:
        for name in ("center_frequency", "data_rate", "distance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{self.reference}: {name} must be > 0")
        if self.signal_generation not in ("electronic", "opto-electronic"):
            raise ValueError(f"{self.reference}: bad signal_generation {self.signal_generation!r}")
        if self.architecture not in ("simplex", "duplex"):
            raise ValueError(f"{self.reference}: bad architecture {self.architecture!r}")


@lru_cache(maxsize=None)
def table2() -> Tuple[ExperimentRecord, ...]:
    raw = json.loads(resources.files("thzfronthaul.data").joinpath("table2.json").read_text())
    return tuple(
        ExperimentRecord(
            reference=r["reference"],
            technology=r["technology"],
            center_frequency=float(r["center_frequency_hz"]),
            data_rate=float(r["data_rate_bps"]),
            distance=float(r["distance_m"]),
            signal_generation=r["signal_generation"],
            architecture=r["architecture"],
            rate_is_upper_bound=bool(r.get("rate_is_upper_bound", False)),
        )
        for r in raw["records"]
    )


def table2_check(required_rate: float, max_distance: float) -> List[ExperimentRecord]:
    """Experiments that carried at least ``required_rate`` over ``max_distance`` or more.

    Rows reporting only an upper bound on their rate ("<1 Gbps") never count
    as demonstrating a rate.
    """
    if not (required_rate > 0 and max_distance > 0):
        raise ValueError("required_rate and max_distance must be > 0")
    return [
        r
        for r in table2()
        if not r.rate_is_upper_bound and r.data_rate >= required_rate and r.distance >= max_distance
    ]
