"""Static feasibility analysis of an on-demand fronthaul deployment.

A deployment is a set of field nodes (RUs), optional relays and one central
node (DU). Each RU reaches the central node over a chain of THz hops and is
assigned to one DU-side transceiver. The planner evaluates every hop through
the link budget, converts CNR and bandwidth into a rate with a configurable
spectral-efficiency law, and compares the result with the eCPRI requirement
and the latency budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .capacity import FronthaulParams, frame_model, fronthaul_rate_dl, fronthaul_rate_ul
from .linkbudget import (
    SPEED_OF_LIGHT,
    LinkBudgetInput,
    RadioProfile,
    cnr_at_bandwidth,
    max_bandwidth_for_cnr,
    noise_spectral_density,
    received_power_dbm,
)

DEFAULT_LATENCY_BUDGET = 100e-6


class ConfigurationError(ValueError):
    """Deployment is structurally unusable (missing chain, bad reference...)."""


class NodeKind(str, Enum):
    CENTRAL = "CentralNode"
    FIELD = "FieldNode"
    RELAY = "RelayNode"


class Forwarding(str, Enum):
    STORE_AND_FORWARD = "store_and_forward"
    CUT_THROUGH = "cut_through"


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    position: Tuple[float, float]


@dataclass(frozen=True)
class ThzTransceiver:
    id: str
    host_node: str
    rf: RadioProfile
    design_cnr: float  # dB
    # None: bandwidth follows the CNR-limited bandwidth per hop at design_cnr (adaptive).
    design_bandwidth: Optional[float] = None  # Hz

    def __post_init__(self) -> None:
        if not self.design_cnr > 0:
            raise ConfigurationError(f"transceiver {self.id!r}: design_cnr must be > 0")
        if self.design_bandwidth is not None and not self.design_bandwidth > 0:
            raise ConfigurationError(f"transceiver {self.id!r}: design_bandwidth must be > 0")


@dataclass(frozen=True)
class HopChain:
    """Ordered node ids from a field node to the central node."""

    nodes: Tuple[str, ...]
    transceiver: str

    @property
    def field_node(self) -> str:
        return self.nodes[0]

    @property
    def hops(self) -> List[Tuple[str, str]]:
        return list(zip(self.nodes[:-1], self.nodes[1:]))


@dataclass(frozen=True)
class Deployment:
    nodes: Tuple[Node, ...]
    transceivers: Tuple[ThzTransceiver, ...]
    chains: Tuple[HopChain, ...]

    def __post_init__(self) -> None:
        self.validate()

    def node(self, node_id: str) -> Node:
        return self._nodes[node_id]

    def transceiver(self, trx_id: str) -> ThzTransceiver:
        return self._transceivers[trx_id]

    @property
    def central(self) -> Node:
        return next(n for n in self.nodes if n.kind is NodeKind.CENTRAL)

    @property
    def field_nodes(self) -> List[Node]:
        return [n for n in self.nodes if n.kind is NodeKind.FIELD]

    def chain_for(self, ru_id: str) -> HopChain:
        for chain in self.chains:
            if chain.field_node == ru_id:
                return chain
        raise ConfigurationError(f"field node {ru_id!r} has no hop chain")

    def hop_distance(self, a: str, b: str) -> float:
        (xa, ya), (xb, yb) = self.node(a).position, self.node(b).position
        return math.hypot(xb - xa, yb - ya)

    def validate(self) -> None:
        nodes: Dict[str, Node] = {}
        for n in self.nodes:
            if n.id in nodes:
                raise ConfigurationError(f"duplicate node id {n.id!r}")
            nodes[n.id] = n
        object.__setattr__(self, "_nodes", nodes)
        centrals = [n.id for n in self.nodes if n.kind is NodeKind.CENTRAL]
        if len(centrals) != 1:
            raise ConfigurationError(
                f"deployment needs exactly one CentralNode, found {len(centrals)}"
            )
        trx: Dict[str, ThzTransceiver] = {}
        for t in self.transceivers:
            if t.id in trx:
                raise ConfigurationError(f"duplicate transceiver id {t.id!r}")
            if t.host_node not in nodes:
                raise ConfigurationError(
                    f"transceiver {t.id!r} hosted on unknown node {t.host_node!r}"
                )
            trx[t.id] = t
        object.__setattr__(self, "_transceivers", trx)

        seen = set()
        for chain in self.chains:
            path = chain.nodes
            if len(path) < 2:
                raise ConfigurationError(f"chain {list(path)} needs at least two nodes")
            for nid in path:
                if nid not in nodes:
                    raise ConfigurationError(f"chain references unknown node {nid!r}")
            if len(set(path)) != len(path):
                raise ConfigurationError(f"chain from {path[0]!r} repeats a node")
            if nodes[path[0]].kind is not NodeKind.FIELD:
                raise ConfigurationError(f"chain must start at a FieldNode, got {path[0]!r}")
            if nodes[path[-1]].kind is not NodeKind.CENTRAL:
                raise ConfigurationError(f"chain from {path[0]!r} must end at the CentralNode")
            for nid in path[1:-1]:
                if nodes[nid].kind is not NodeKind.RELAY:
                    raise ConfigurationError(
                        f"chain from {path[0]!r}: interior node {nid!r} is not a RelayNode"
                    )
            if chain.transceiver not in trx:
                raise ConfigurationError(
                    f"field node {path[0]!r} assigned to unknown transceiver {chain.transceiver!r}"
                )
            if path[0] in seen:
                raise ConfigurationError(f"field node {path[0]!r} has more than one chain")
            seen.add(path[0])
            for a, b in zip(path[:-1], path[1:]):
                if self.hop_distance(a, b) <= 0:
                    raise ConfigurationError(f"hop {a!r}->{b!r} has zero length")
        for n in self.nodes:
            if n.kind is NodeKind.FIELD and n.id not in seen:
                raise ConfigurationError(
                    f"field node {n.id!r} has no hop chain and transceiver assignment"
                )


@dataclass(frozen=True)
class SpectralEfficiencyModel:
    """Maps CNR (dB) to spectral efficiency (bit/s/Hz).

    ``shannon_gap``: ``min(max_se, log2(1 + 10**((cnr - gap)/10)))`` for
    ``cnr >= min_cnr``, else 0. ``fixed_table``: the se of the highest step
    whose ``min_cnr`` is met, 0 below the lowest step.
    """

    mode: str = "shannon_gap"
    gap: float = 3.0
    max_se: float = 6.0
    min_cnr: float = 0.0
    table: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        if self.mode == "shannon_gap":
            if self.gap < 0:
                raise ValueError("shannon gap must be >= 0")
            if not self.max_se > 0:
                raise ValueError("max_se must be > 0")
        elif self.mode == "fixed_table":
            if not self.table:
                raise ValueError("fixed_table model needs at least one step")
            table = tuple(sorted((float(c), float(s)) for c, s in self.table))
            prev = 0.0
            for _, se in table:
                if not se > 0 or se < prev:
                    raise ValueError("table se values must be positive and non-decreasing in CNR")
                prev = se
            object.__setattr__(self, "table", table)
        else:
            raise ValueError(f"unknown spectral efficiency mode {self.mode!r}")

    def se(self, cnr: float) -> float:
        if self.mode == "shannon_gap":
            if cnr < self.min_cnr:
                return 0.0
            return min(self.max_se, math.log2(1.0 + 10.0 ** ((cnr - self.gap) / 10.0)))
        value = 0.0
        for min_cnr, se in self.table:
            if cnr >= min_cnr:
                value = se
        return value


def achievable_rate(cnr: float, bandwidth: float, model: SpectralEfficiencyModel) -> float:
    """Link rate in bit/s; 0 when the CNR is below the model's floor."""
    if not bandwidth > 0:
        raise ValueError("bandwidth must be > 0")
    return bandwidth * model.se(cnr)


def multi_hop_latency(
    distances: Sequence[float],
    link_rate: float,
    frame_bits: float,
    forwarding: Forwarding | str = Forwarding.STORE_AND_FORWARD,
    per_hop_processing: float = 0.0,
) -> float:
    """One-way latency of a frame across a relay chain, in seconds."""
    forwarding = Forwarding(forwarding)
    if not distances:
        raise ValueError("chain needs at least one hop")
    if any(d <= 0 for d in distances):
        raise ValueError("hop distances must be > 0")
    if not link_rate > 0:
        raise ValueError("link_rate must be > 0")
    serialization = frame_bits / link_rate
    per_hop = sum(d / SPEED_OF_LIGHT + per_hop_processing for d in distances)
    if forwarding is Forwarding.STORE_AND_FORWARD:
        return len(distances) * serialization + per_hop
    return serialization + per_hop


@dataclass(frozen=True)
class HopState:
    src: str
    dst: str
    distance: float
    rx_power: float
    bandwidth: float
    cnr: float
    rate: float


def evaluate_hop(
    trx: ThzTransceiver,
    distance: float,
    model: SpectralEfficiencyModel,
    extra_loss: float = 0.0,
    adaptive_bandwidth: Optional[bool] = None,
) -> Tuple[float, float, float, float]:
    """Return (rx_power, bandwidth, cnr, rate) of one hop.

    With a fixed design bandwidth the CNR degrades with loss; in adaptive
    mode (no design bandwidth, or forced) the bandwidth shrinks to hold the
    design CNR.
    """
    inp: LinkBudgetInput = trx.rf.at(distance, extra_loss)
    p_rx = received_power_dbm(inp)
    n0 = noise_spectral_density(inp.antenna_temperature, inp.rx_noise_figure)
    adaptive = trx.design_bandwidth is None if adaptive_bandwidth is None else adaptive_bandwidth
    if adaptive:
        bw = max_bandwidth_for_cnr(p_rx, trx.design_cnr, n0)
        if trx.design_bandwidth is not None:
            bw = min(bw, trx.design_bandwidth)
    else:
        bw = trx.design_bandwidth
    cnr = cnr_at_bandwidth(p_rx, bw, n0)
    return p_rx, bw, cnr, achievable_rate(cnr, bw, model)


@dataclass(frozen=True)
class RuReport:
    ru: str
    transceiver: str
    required_rate: float
    distance: float
    hops: Tuple[HopState, ...]
    rx_power: float
    usable_bandwidth: float
    achievable_rate: float
    margin: float
    latency: float
    feasible: bool


@dataclass(frozen=True)
class TransceiverReport:
    id: str
    rus: Tuple[str, ...]
    load: float
    feasible: bool


@dataclass(frozen=True)
class FeasibilityReport:
    rus: Tuple[RuReport, ...]
    transceivers: Tuple[TransceiverReport, ...]
    latency_budget: float
    feasible: bool

    def ru(self, ru_id: str) -> RuReport:
        for r in self.rus:
            if r.ru == ru_id:
                return r
        raise KeyError(ru_id)

    def transceiver(self, trx_id: str) -> TransceiverReport:
        for t in self.transceivers:
            if t.id == trx_id:
                return t
        raise KeyError(trx_id)


def plan(
    deployment: Deployment,
    params: FronthaulParams,
    model: SpectralEfficiencyModel,
    latency_budget: float = DEFAULT_LATENCY_BUDGET,
    *,
    forwarding: Forwarding | str = Forwarding.STORE_AND_FORWARD,
    per_hop_processing: float = 0.0,
    ul_quant_bits: Optional[int] = None,
) -> FeasibilityReport:
    """Check every RU of ``deployment`` against rate, latency and sharing limits.

    The RU's achievable rate is the minimum over its hops. Static latency is
    evaluated with frames serialized at the required rate, i.e. the pace at
    which a fully loaded time-shared transceiver drains an RU's stream.
    Transceiver load is the sum of required/achievable over assigned RUs
    (ideal time division, zero switching cost).
    """
    required = fronthaul_rate_dl(params)
    if ul_quant_bits is not None:
        required = max(required, fronthaul_rate_ul(params, ul_quant_bits))
    # Per-symbol payload of the heavier direction.
    frame_bits = required / frame_model(params).frames_per_second

    ru_states: List[dict] = []
    for ru in deployment.field_nodes:
        chain = deployment.chain_for(ru.id)
        trx = deployment.transceiver(chain.transceiver)
        hops = []
        for a, b in chain.hops:
            d = deployment.hop_distance(a, b)
            p_rx, bw, cnr, rate = evaluate_hop(trx, d, model)
            hops.append(HopState(a, b, d, p_rx, bw, cnr, rate))
        worst = min(hops, key=lambda h: h.rate)
        latency = multi_hop_latency(
            [h.distance for h in hops], required, frame_bits, forwarding, per_hop_processing
        )
        ru_states.append(
            dict(
                ru=ru.id,
                transceiver=trx.id,
                required_rate=required,
                distance=sum(h.distance for h in hops),
                hops=tuple(hops),
                rx_power=min(h.rx_power for h in hops),
                usable_bandwidth=worst.bandwidth,
                achievable_rate=worst.rate,
                margin=worst.rate / required,
                latency=latency,
            )
        )

    trx_reports = []
    load_of: Dict[str, float] = {}
    for trx in deployment.transceivers:
        assigned = [s for s in ru_states if s["transceiver"] == trx.id]
        load = 0.0
        for s in assigned:
            load += math.inf if s["achievable_rate"] <= 0 else s["required_rate"] / s["achievable_rate"]
        load_of[trx.id] = load
        trx_reports.append(
            TransceiverReport(trx.id, tuple(s["ru"] for s in assigned), load, load <= 1.0)
        )

    rus = []
    for s in ru_states:
        ok = (
            s["achievable_rate"] >= s["required_rate"]
            and s["latency"] <= latency_budget
            and load_of[s["transceiver"]] <= 1.0
        )
        rus.append(RuReport(feasible=ok, **s))

    overall = all(r.feasible for r in rus) and all(t.feasible for t in trx_reports)
    return FeasibilityReport(tuple(rus), tuple(trx_reports), latency_budget, overall)


def antenna_tradeoff(
    base: LinkBudgetInput, gains: Sequence[Tuple[float, float]], cnr: float
) -> List[Tuple[Tuple[float, float], float]]:
    """Usable CNR-limited bandwidth at fixed ``cnr`` for each (tx, rx) gain pair."""
    n0 = noise_spectral_density(base.antenna_temperature, base.rx_noise_figure)
    out = []
    for g_tx, g_rx in gains:
        inp = LinkBudgetInput(
            carrier_frequency=base.carrier_frequency,
            distance=base.distance,
            tx_power=base.tx_power,
            tx_antenna_gain=g_tx,
            rx_antenna_gain=g_rx,
            excess_loss=base.excess_loss,
            rx_noise_figure=base.rx_noise_figure,
            antenna_temperature=base.antenna_temperature,
        )
        out.append(((g_tx, g_rx), max_bandwidth_for_cnr(received_power_dbm(inp), cnr, n0)))
    return out
