from .engine import (
    FrameRecord,
    LatencyStats,
    LinkMetrics,
    SimConfig,
    SimMetrics,
    SimResult,
    Simulator,
    closed_form_oracle,
    run,
)
from .events import EventQueue

__all__ = [
    "EventQueue",
    "FrameRecord",
    "LatencyStats",
    "LinkMetrics",
    "SimConfig",
    "SimMetrics",
    "SimResult",
    "Simulator",
    "closed_form_oracle",
    "run",
]
