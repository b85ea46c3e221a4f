"""Discrete-event simulation of eCPRI frame transport over THz hop chains.

Time is kept in integer picoseconds so that long runs accumulate exactly and
two runs with the same inputs are bit-identical.

Each RU emits one frame per OFDM symbol in each active direction. Frames
cross the hops of the RU's chain; every hop is a FIFO server. The last hop
into the central node is served by the RU's DU transceiver, so RUs sharing a
transceiver share its air time. A transmission uses the hop rate in force
when it starts and runs to completion at that rate.
"""

from __future__ import annotations

import bisect
import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from ..capacity import FronthaulParams, frame_model
from ..linkbudget import SPEED_OF_LIGHT
from ..planner import Deployment, Forwarding, SpectralEfficiencyModel, evaluate_hop
from ..weather import WeatherProfile, link_state_timeline, rate_steps
from .events import EventQueue

PS = 10**12  # picoseconds per second

HopKey = Tuple[str, str]


def to_ps(seconds: float) -> int:
    return round(seconds * PS)


@dataclass(frozen=True)
class SimConfig:
    duration: float  # s
    seed: int = 0
    forwarding: Forwarding = Forwarding.STORE_AND_FORWARD
    per_hop_processing: float = 0.0  # s
    latency_budget: float = 100e-6  # s
    load_factor: float = 1.0  # scales frame size
    uplink_fraction: float = 1.0  # share of the load sent RU -> DU
    jitter: float = 0.0  # s, uniform extra delay on frame generation
    link_rate_override: Optional[float] = None  # bit/s on every hop, weather ignored
    adaptive_bandwidth: bool = False
    ul_quant_bits: Optional[int] = None
    drain: bool = False  # keep running after the horizon until empty

    def __post_init__(self) -> None:
        object.__setattr__(self, "forwarding", Forwarding(self.forwarding))
        if not self.duration > 0:
            raise ValueError("duration must be > 0")
        if not self.load_factor >= 0:
            raise ValueError("load_factor must be >= 0")
        if not 0 <= self.uplink_fraction <= 1:
            raise ValueError("uplink_fraction must be within [0, 1]")
        if self.per_hop_processing < 0:
            raise ValueError("per_hop_processing must be >= 0")
        if not self.latency_budget > 0:
            raise ValueError("latency_budget must be > 0")
        if self.jitter < 0:
            raise ValueError("jitter must be >= 0")
        if self.link_rate_override is not None and not self.link_rate_override >= 0:
            raise ValueError("link_rate_override must be >= 0")


@dataclass
class FrameRecord:
    frame_id: int
    ru: str
    direction: str  # "ul" or "dl"
    gen_time: int  # ps
    size: float  # bits
    departures: List[int] = field(default_factory=list)  # ps, one per hop
    delivery_time: Optional[int] = None  # ps
    budget_met: Optional[bool] = None

    @property
    def latency(self) -> Optional[int]:
        return None if self.delivery_time is None else self.delivery_time - self.gen_time


@dataclass(frozen=True)
class LatencyStats:
    frames_generated: int
    frames_delivered: int
    bits_generated: float
    bits_delivered: float
    mean: Optional[float]
    p50: Optional[float]
    p95: Optional[float]
    p99: Optional[float]
    max: Optional[float]
    violation_fraction: Optional[float]
    outage_seconds: float


@dataclass(frozen=True)
class LinkMetrics:
    name: str
    utilization: float
    max_queue_depth: int
    frames_sent: int


@dataclass(frozen=True)
class SimMetrics:
    duration: float
    seed: int
    per_ru: Tuple[Tuple[str, LatencyStats], ...]
    aggregate: LatencyStats
    links: Tuple[LinkMetrics, ...]
    frames_in_flight: int

    def ru(self, ru_id: str) -> LatencyStats:
        return dict(self.per_ru)[ru_id]

    def link(self, name: str) -> LinkMetrics:
        for lm in self.links:
            if lm.name == name:
                return lm
        raise KeyError(name)


@dataclass
class SimResult:
    metrics: SimMetrics
    trace: Optional[List[FrameRecord]]


def nearest_rank(sorted_values: Sequence[int], q: float) -> int:
    rank = max(1, math.ceil(q * len(sorted_values)))
    return sorted_values[rank - 1]


def _stats(
    latencies: List[int],
    generated: int,
    bits_gen: float,
    bits_del: float,
    budget_ps: int,
    outage: float,
) -> LatencyStats:
    if not latencies:
        return LatencyStats(generated, 0, bits_gen, bits_del, None, None, None, None, None, None, outage)
    lat = sorted(latencies)
    violations = sum(1 for x in lat if x > budget_ps)
    return LatencyStats(
        frames_generated=generated,
        frames_delivered=len(lat),
        bits_generated=bits_gen,
        bits_delivered=bits_del,
        mean=sum(lat) / len(lat) / PS,
        p50=nearest_rank(lat, 0.50) / PS,
        p95=nearest_rank(lat, 0.95) / PS,
        p99=nearest_rank(lat, 0.99) / PS,
        max=lat[-1] / PS,
        violation_fraction=violations / len(lat),
        outage_seconds=outage,
    )


class _RateTimeline:
    def __init__(self, steps: Sequence[Tuple[int, float]]):
        self.starts = [s for s, _ in steps]
        self.rates = [r for _, r in steps]

    def index_at(self, t: int) -> int:
        return bisect.bisect_right(self.starts, t) - 1

    def rate_at(self, t: int) -> float:
        return self.rates[self.index_at(t)]

    def next_up(self, t: int) -> Optional[int]:
        """Earliest time >= t with a positive rate, or None."""
        i = self.index_at(t)
        if self.rates[i] > 0:
            return t
        for j in range(i + 1, len(self.starts)):
            if self.rates[j] > 0:
                return self.starts[j]
        return None

    def outage_intervals(self, end: int) -> List[Tuple[int, int]]:
        out = []
        for i, (s, r) in enumerate(zip(self.starts, self.rates)):
            if r > 0 or s >= end:
                continue
            e = self.starts[i + 1] if i + 1 < len(self.starts) else end
            out.append((s, min(e, end)))
        return out


def _union_length(intervals: List[Tuple[int, int]]) -> int:
    total, cur_s, cur_e = 0, None, None
    for s, e in sorted(intervals):
        if cur_e is None or s > cur_e:
            if cur_e is not None:
                total += cur_e - cur_s
            cur_s, cur_e = s, e
        else:
            cur_e = max(cur_e, e)
    if cur_e is not None:
        total += cur_e - cur_s
    return total


class _Server:
    __slots__ = ("name", "queue", "busy", "busy_ps", "max_depth", "sent", "wake_pending")

    def __init__(self, name: str):
        self.name = name
        self.queue: deque = deque()
        self.busy = False
        self.busy_ps = 0
        self.max_depth = 0
        self.sent = 0
        self.wake_pending = False


@dataclass
class _Flow:
    ru: str
    direction: str
    path: Tuple[str, ...]
    servers: Tuple[Hashable, ...]
    frame_bits: float


@dataclass
class _InFlight:
    record: FrameRecord
    flow: _Flow
    hop: int = 0
    tail_ready: int = 0  # ps, when the whole frame is at the current node


class Simulator:
    """One simulation run. Holds all mutable state; instantiate per run."""

    def __init__(
        self,
        deployment: Deployment,
        params: FronthaulParams,
        se_model: SpectralEfficiencyModel,
        config: SimConfig,
        weather: Optional[Mapping[HopKey, WeatherProfile]] = None,
        default_weather: Optional[WeatherProfile] = None,
    ):
        self.deployment = deployment
        self.params = params
        self.model = se_model
        self.config = config
        self.weather = dict(weather or {})
        self.default_weather = default_weather
        self.duration_ps = to_ps(config.duration)
        self.budget_ps = to_ps(config.latency_budget)
        self.proc_ps = to_ps(config.per_hop_processing)
        self.subframe_ps = to_ps(params.subframe_period)
        self.n_sym = params.symbols_per_subframe
        self.jitter_ps = to_ps(config.jitter)
        if self.jitter_ps >= self.subframe_ps // self.n_sym:
            raise ValueError("jitter must be shorter than one symbol period")
        self.rng = random.Random(config.seed)

        self.timelines: Dict[HopKey, _RateTimeline] = {}
        self.prop_ps: Dict[HopKey, int] = {}
        self.servers: Dict[Hashable, _Server] = {}
        self.flows: List[_Flow] = []
        self._build()

    # -- setup -----------------------------------------------------------

    def _hop_profile(self, a: str, b: str) -> Optional[WeatherProfile]:
        return self.weather.get((a, b)) or self.weather.get((b, a)) or self.default_weather

    def _timeline(self, a: str, b: str) -> _RateTimeline:
        key = tuple(sorted((a, b)))
        if key in self.timelines:
            return self.timelines[key]
        dep = self.deployment
        d = dep.hop_distance(a, b)
        chain = next(c for c in dep.chains if a in c.nodes and b in c.nodes)
        trx = dep.transceiver(chain.transceiver)
        cfg = self.config
        if cfg.link_rate_override is not None:
            steps = [(0, cfg.link_rate_override)]
        else:
            profile = self._hop_profile(a, b)
            adaptive = True if cfg.adaptive_bandwidth else None
            if profile is None:
                steps = [(0, evaluate_hop(trx, d, self.model, 0.0, adaptive)[3])]
            else:
                states = link_state_timeline(profile, d, trx, self.model, adaptive)
                steps = [(to_ps(t), r) for t, r in rate_steps(profile, states)]
        tl = _RateTimeline(steps)
        self.timelines[key] = tl
        self.prop_ps[key] = to_ps(d / SPEED_OF_LIGHT)
        return tl

    def _server(self, key: Hashable, name: str) -> Hashable:
        if key not in self.servers:
            self.servers[key] = _Server(name)
        return key

    def _build(self) -> None:
        dep = self.deployment
        cfg = self.config
        central = dep.central.id
        ul_bits = frame_model(self.params, cfg.ul_quant_bits).per_symbol_payload
        dl_bits = frame_model(self.params).per_symbol_payload
        shares = (
            ("ul", cfg.load_factor * cfg.uplink_fraction * ul_bits),
            ("dl", cfg.load_factor * (1.0 - cfg.uplink_fraction) * dl_bits),
        )
        for ru in dep.field_nodes:
            chain = dep.chain_for(ru.id)
            for direction, bits in shares:
                path = chain.nodes if direction == "ul" else tuple(reversed(chain.nodes))
                servers = []
                for a, b in zip(path[:-1], path[1:]):
                    self._timeline(a, b)
                    if central in (a, b):
                        key = ("trx", chain.transceiver, direction)
                        name = f"{chain.transceiver}:{direction}"
                    else:
                        key = ("hop", a, b)
                        name = f"{a}->{b}"
                    servers.append((key, name))
                if bits > 0:
                    keys = tuple(self._server(k, n) for k, n in servers)
                    self.flows.append(_Flow(ru.id, direction, path, keys, bits))

    # -- event loop ------------------------------------------------------

    def _gen_time(self, k: int) -> int:
        # nearest ps of k * t_SF / N_S, exact in integers
        return (2 * k * self.subframe_ps + self.n_sym) // (2 * self.n_sym)

    def run(self, trace: bool = False) -> SimResult:
        q = EventQueue()
        records: List[FrameRecord] = []
        latencies: Dict[str, List[int]] = {ru.id: [] for ru in self.deployment.field_nodes}
        generated: Dict[str, int] = {k: 0 for k in latencies}
        bits_gen: Dict[str, float] = {k: 0.0 for k in latencies}
        bits_del: Dict[str, float] = {k: 0.0 for k in latencies}
        next_id = 0

        for fi in range(len(self.flows)):
            q.schedule(self._gen_time(0), ("gen", fi, 0))

        def enqueue(frame: _InFlight, now: int) -> None:
            srv = self.servers[frame.flow.servers[frame.hop]]
            srv.queue.append(frame)
            depth = len(srv.queue) + (1 if srv.busy else 0)
            if depth > srv.max_depth:
                srv.max_depth = depth
            try_start(frame.flow.servers[frame.hop], now)

        def try_start(skey: Hashable, now: int) -> None:
            srv = self.servers[skey]
            if srv.busy or not srv.queue:
                return
            frame: _InFlight = srv.queue[0]
            a, b = frame.flow.path[frame.hop], frame.flow.path[frame.hop + 1]
            tl = self.timelines[tuple(sorted((a, b)))]
            start = tl.next_up(now)
            if start is None:
                return  # permanent outage; frame stays queued
            if start > now:
                if not srv.wake_pending:
                    srv.wake_pending = True
                    q.schedule(start, ("wake", skey))
                return
            rate = tl.rate_at(start)
            ser = round(frame.flow.frame_bits * PS / rate)
            if self.config.forwarding is Forwarding.CUT_THROUGH:
                # cannot finish sending before the tail has arrived here
                start = max(start, frame.tail_ready - ser)
            srv.queue.popleft()
            srv.busy = True
            end = start + ser
            srv.sent += 1
            if start < self.duration_ps:
                srv.busy_ps += min(end, self.duration_ps) - start
            frame.record.departures.append(start)
            prop = self.prop_ps[tuple(sorted((a, b)))]
            tail = end + prop + self.proc_ps
            if frame.hop + 1 == len(frame.flow.servers):
                q.schedule(tail, ("deliver", frame))
            elif self.config.forwarding is Forwarding.CUT_THROUGH:
                frame.tail_ready = tail
                q.schedule(start + prop + self.proc_ps, ("arrive", frame))
            else:
                frame.tail_ready = tail
                q.schedule(tail, ("arrive", frame))
            q.schedule(end, ("done", skey))

        limit = None if self.config.drain else self.duration_ps
        while q and (limit is None or q.peek_time() <= limit):
            now, ev = q.pop_next()
            kind = ev[0]
            if kind == "gen":
                _, fi, k = ev
                flow = self.flows[fi]
                rec = FrameRecord(next_id, flow.ru, flow.direction, now, flow.frame_bits)
                next_id += 1
                generated[flow.ru] += 1
                bits_gen[flow.ru] += flow.frame_bits
                if trace:
                    records.append(rec)
                frame = _InFlight(rec, flow, 0, now)
                enqueue(frame, now)
                nxt = self._gen_time(k + 1)
                if self.jitter_ps:
                    nxt += self.rng.randrange(self.jitter_ps)
                if nxt < self.duration_ps:
                    q.schedule(nxt, ("gen", fi, k + 1))
            elif kind == "arrive":
                frame = ev[1]
                frame.hop += 1
                enqueue(frame, now)
            elif kind == "done":
                self.servers[ev[1]].busy = False
                try_start(ev[1], now)
            elif kind == "wake":
                self.servers[ev[1]].wake_pending = False
                try_start(ev[1], now)
            elif kind == "deliver":
                frame = ev[1]
                rec = frame.record
                rec.delivery_time = now
                rec.budget_met = rec.latency <= self.budget_ps
                latencies[rec.ru].append(rec.latency)
                bits_del[rec.ru] += rec.size

        in_flight = sum(len(s.queue) for s in self.servers.values())
        in_flight += sum(1 for ev in q.pending() if ev[0] in ("arrive", "deliver"))

        end_ps = self.duration_ps
        per_ru = []
        ru_outages: List[Tuple[int, int]] = []
        for ru in self.deployment.field_nodes:
            chain = self.deployment.chain_for(ru.id)
            iv: List[Tuple[int, int]] = []
            for a, b in chain.hops:
                iv += self.timelines[tuple(sorted((a, b)))].outage_intervals(end_ps)
            ru_outages += iv
            per_ru.append(
                (
                    ru.id,
                    _stats(
                        latencies[ru.id],
                        generated[ru.id],
                        bits_gen[ru.id],
                        bits_del[ru.id],
                        self.budget_ps,
                        _union_length(iv) / PS,
                    ),
                )
            )
        aggregate = _stats(
            [x for v in latencies.values() for x in v],
            sum(generated.values()),
            sum(bits_gen.values()),
            sum(bits_del.values()),
            self.budget_ps,
            _union_length(ru_outages) / PS,
        )
        links = tuple(
            LinkMetrics(s.name, s.busy_ps / end_ps, s.max_depth, s.sent)
            for s in self.servers.values()
        )
        metrics = SimMetrics(
            duration=self.config.duration,
            seed=self.config.seed,
            per_ru=tuple(per_ru),
            aggregate=aggregate,
            links=links,
            frames_in_flight=in_flight,
        )
        return SimResult(metrics, records if trace else None)


def run(
    deployment: Deployment,
    params: FronthaulParams,
    weather: Optional[Mapping[HopKey, WeatherProfile]],
    se_model: SpectralEfficiencyModel,
    config: SimConfig,
    *,
    default_weather: Optional[WeatherProfile] = None,
    trace: bool = False,
) -> SimResult:
    """Simulate ``config.duration`` seconds of fronthaul traffic."""
    sim = Simulator(deployment, params, se_model, config, weather, default_weather)
    return sim.run(trace=trace)


def closed_form_oracle(
    frame_bits: float,
    link_rate: float,
    distance: float,
    per_hop_processing: float = 0.0,
    *,
    hops: int = 1,
    time_varying: bool = False,
    load_factor: float = 1.0,
) -> float:
    """Latency (s) of a frame on an idle single hop at constant rate.

    Valid only where no queue can build: one hop, constant rate, load <= 1.
    """
    if hops != 1:
        raise ValueError("closed-form oracle covers a single hop only")
    if time_varying:
        raise ValueError("closed-form oracle needs a constant link rate")
    if load_factor > 1:
        raise ValueError("closed-form oracle needs load_factor <= 1")
    if not link_rate > 0:
        raise ValueError("link_rate must be > 0")
    if distance < 0:
        raise ValueError("distance must be >= 0")
    return frame_bits / link_rate + distance / SPEED_OF_LIGHT + per_hop_processing
