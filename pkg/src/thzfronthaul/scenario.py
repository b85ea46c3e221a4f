"""Scenario files: a single JSON document describing one study.

Top-level sections: ``metadata``, ``fronthaul``, ``rf``, ``deployment``,
``weather`` and ``sim``. Units are part of every field name. Loading checks
types, value ranges and cross references and reports the offending field by
dotted path and source line.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import yaml

from .capacity import FronthaulParams
from .linkbudget import RadioProfile
from .planner import (
    ConfigurationError,
    Deployment,
    FeasibilityReport,
    Forwarding,
    HopChain,
    Node,
    NodeKind,
    SpectralEfficiencyModel,
    ThzTransceiver,
    plan,
)
from .sim.engine import SimConfig, SimResult, run
from .weather import WeatherProfile, WeatherSegment

PathT = Tuple[Union[str, int], ...]


class ScenarioError(Exception):
    """Base class for scenario diagnostics."""

    category = "invalid"

    def __init__(self, message: str, path: PathT = (), line: Optional[int] = None, source: str = ""):
        self.message = message
        self.path = path
        self.line = line
        self.source = source
        super().__init__(str(self))

    @property
    def dotted(self) -> str:
        out = ""
        for p in self.path:
            out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else p)
        return out

    def __str__(self) -> str:
        where = self.source or "<scenario>"
        if self.line is not None:
            where += f":{self.line}"
        field_ = f" {self.dotted}:" if self.path else ""
        return f"{where}: {self.category} error:{field_} {self.message}"


class ScenarioSyntaxError(ScenarioError):
    category = "syntax"


class MissingFieldError(ScenarioError):
    category = "missing-field"


class TypeMismatchError(ScenarioError):
    category = "type"


class InvariantError(ScenarioError):
    category = "invariant"


class ReferenceIntegrityError(ScenarioError):
    category = "reference"


@dataclass(frozen=True)
class LinkWeather:
    src: str
    dst: str
    profile: str


@dataclass(frozen=True)
class WeatherSection:
    profiles: Tuple[Tuple[str, WeatherProfile], ...] = ()
    default_profile: Optional[str] = None
    links: Tuple[LinkWeather, ...] = ()

    def profile(self, name: str) -> WeatherProfile:
        return dict(self.profiles)[name]

    def hop_profiles(self) -> Dict[Tuple[str, str], WeatherProfile]:
        return {(lw.src, lw.dst): self.profile(lw.profile) for lw in self.links}

    @property
    def default(self) -> Optional[WeatherProfile]:
        return None if self.default_profile is None else self.profile(self.default_profile)


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    fronthaul: FronthaulParams
    ul_quant_bits: Optional[int]
    rf_profiles: Tuple[Tuple[str, RadioProfile], ...]
    transceiver_profiles: Tuple[Tuple[str, str], ...]  # transceiver id -> rf profile name
    se_model: SpectralEfficiencyModel
    deployment: Deployment
    weather: WeatherSection
    sim: SimConfig


# -- line lookup -------------------------------------------------------------


def _line_index(text: str) -> Optional[Any]:
    try:
        return yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return None


def _line_for(root: Any, path: PathT) -> Optional[int]:
    node, best = root, None
    if node is None:
        return None
    best = node.start_mark.line + 1
    for key in path:
        if isinstance(node, yaml.MappingNode) and isinstance(key, str):
            for k, v in node.value:
                if k.value == key:
                    node = v
                    best = k.start_mark.line + 1
                    break
            else:
                return best
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
            best = node.start_mark.line + 1
        else:
            return best
    return best


# -- reader ------------------------------------------------------------------

_MISSING = object()


class _Reader:
    def __init__(self, text: str, source: str):
        self.source = source
        self._root = _line_index(text)

    def error(self, cls, message: str, path: PathT) -> ScenarioError:
        return cls(message, path, _line_for(self._root, path), self.source)

    def section(self, obj: Mapping, key: str, path: PathT, required: bool = True) -> Any:
        if key not in obj:
            if required:
                raise self.error(MissingFieldError, f"missing required field {key!r}", path + (key,))
            return _MISSING
        return obj[key]

    def mapping(self, obj: Mapping, key: str, path: PathT, required: bool = True) -> Dict[str, Any]:
        value = self.section(obj, key, path, required)
        if value is _MISSING:
            return {}
        if not isinstance(value, dict):
            raise self.error(TypeMismatchError, f"{key} must be an object", path + (key,))
        return value

    def array(self, obj: Mapping, key: str, path: PathT, required: bool = True) -> List[Any]:
        value = self.section(obj, key, path, required)
        if value is _MISSING:
            return []
        if not isinstance(value, list):
            raise self.error(TypeMismatchError, f"{key} must be an array", path + (key,))
        return value

    def string(self, obj: Mapping, key: str, path: PathT, default: Any = _MISSING) -> Any:
        value = self.section(obj, key, path, default is _MISSING)
        if value is _MISSING:
            return default
        if value is None and default is None:
            return None
        if not isinstance(value, str):
            raise self.error(TypeMismatchError, f"{key} must be a string", path + (key,))
        return value

    def boolean(self, obj: Mapping, key: str, path: PathT, default: Any = _MISSING) -> bool:
        value = self.section(obj, key, path, default is _MISSING)
        if value is _MISSING:
            return default
        if not isinstance(value, bool):
            raise self.error(TypeMismatchError, f"{key} must be true or false", path + (key,))
        return value

    def number(
        self,
        obj: Mapping,
        key: str,
        path: PathT,
        default: Any = _MISSING,
        *,
        integer: bool = False,
        gt: Optional[float] = None,
        ge: Optional[float] = None,
        le: Optional[float] = None,
        even: bool = False,
    ) -> Any:
        value = self.section(obj, key, path, default is _MISSING)
        if value is _MISSING:
            return default
        if value is None and default is None:
            return None
        here = path + (key,)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.error(TypeMismatchError, f"{key} must be a number", here)
        if integer and not isinstance(value, int):
            raise self.error(TypeMismatchError, f"{key} must be an integer", here)
        if not math.isfinite(value):
            raise self.error(InvariantError, f"{key} must be finite", here)
        if gt is not None and not value > gt:
            raise self.error(InvariantError, f"{key} > {gt:g}", here)
        if ge is not None and not value >= ge:
            raise self.error(InvariantError, f"{key} ≥ {ge:g}", here)
        if le is not None and not value <= le:
            raise self.error(InvariantError, f"{key} ≤ {le:g}", here)
        if even and value % 2:
            raise self.error(InvariantError, f"{key} must be even", here)
        return value if integer else float(value)


# -- sections ----------------------------------------------------------------


def _fronthaul(r: _Reader, doc: Mapping) -> Tuple[FronthaulParams, Optional[int]]:
    p = ("fronthaul",)
    s = r.mapping(doc, "fronthaul", ())
    params = FronthaulParams(
        bandwidth=r.number(s, "bandwidth_hz", p, gt=0),
        subcarrier_spacing=r.number(s, "subcarrier_spacing_hz", p, gt=0),
        subframe_period=r.number(s, "subframe_period_s", p, gt=0),
        symbols_per_subframe=r.number(s, "symbols_per_subframe", p, integer=True, gt=0),
        num_antennas=r.number(s, "num_antennas", p, integer=True, gt=0),
        quant_bits_per_sample=r.number(s, "quant_bits_per_sample", p, integer=True, gt=0, even=True),
        overhead_factor=r.number(s, "overhead_factor", p, ge=1),
    )
    ul = r.number(s, "ul_quant_bits", p, None, integer=True, gt=0, even=True)
    return params, ul


def _radio(r: _Reader, s: Mapping, p: PathT) -> RadioProfile:
    return RadioProfile(
        carrier_frequency=r.number(s, "carrier_frequency_hz", p, gt=0),
        tx_power=r.number(s, "tx_power_dbm", p),
        tx_antenna_gain=r.number(s, "tx_antenna_gain_dbi", p),
        rx_antenna_gain=r.number(s, "rx_antenna_gain_dbi", p),
        excess_loss=r.number(s, "excess_loss_db", p, 0.0, ge=0),
        rx_noise_figure=r.number(s, "rx_noise_figure_db", p, 0.0, ge=0),
        antenna_temperature=r.number(s, "antenna_temperature_k", p, 290.0, gt=0),
    )


def _se_model(r: _Reader, s: Mapping, p: PathT) -> SpectralEfficiencyModel:
    mode = r.string(s, "mode", p, "shannon_gap")
    if mode == "shannon_gap":
        return SpectralEfficiencyModel(
            mode,
            gap=r.number(s, "gap_db", p, 3.0, ge=0),
            max_se=r.number(s, "max_se_bps_per_hz", p, 6.0, gt=0),
            min_cnr=r.number(s, "min_cnr_db", p, 0.0),
        )
    if mode == "fixed_table":
        steps = []
        rows = r.array(s, "table", p)
        if not rows:
            raise r.error(InvariantError, "table needs at least one step", p + ("table",))
        prev = 0.0
        for i, row in enumerate(rows):
            rp = p + ("table", i)
            if not isinstance(row, dict):
                raise r.error(TypeMismatchError, "table step must be an object", rp)
            c = r.number(row, "min_cnr_db", rp)
            se = r.number(row, "se_bps_per_hz", rp, gt=0)
            if steps and c <= steps[-1][0]:
                raise r.error(InvariantError, "min_cnr_db must be strictly increasing", rp + ("min_cnr_db",))
            if se < prev:
                raise r.error(InvariantError, "se_bps_per_hz must be non-decreasing in CNR", rp + ("se_bps_per_hz",))
            prev = se
            steps.append((c, se))
        return SpectralEfficiencyModel(mode, table=tuple(steps))
    raise r.error(InvariantError, "mode must be 'shannon_gap' or 'fixed_table'", p + ("mode",))


def _rf(r: _Reader, doc: Mapping):
    s = r.mapping(doc, "rf", ())
    profiles_raw = r.mapping(s, "profiles", ("rf",))
    if not profiles_raw:
        raise r.error(InvariantError, "at least one rf profile is required", ("rf", "profiles"))
    profiles = []
    for name, body in profiles_raw.items():
        p = ("rf", "profiles", name)
        if not isinstance(body, dict):
            raise r.error(TypeMismatchError, "rf profile must be an object", p)
        profiles.append((name, _radio(r, body, p)))
    se_raw = r.mapping(s, "spectral_efficiency", ("rf",), required=False)
    return tuple(profiles), _se_model(r, se_raw, ("rf", "spectral_efficiency"))


def _deployment(r: _Reader, doc: Mapping, profiles: Mapping[str, RadioProfile]):
    s = r.mapping(doc, "deployment", ())
    base = ("deployment",)
    nodes: Dict[str, Node] = {}
    for i, n in enumerate(r.array(s, "nodes", base)):
        p = base + ("nodes", i)
        if not isinstance(n, dict):
            raise r.error(TypeMismatchError, "node must be an object", p)
        nid = r.string(n, "id", p)
        if nid in nodes:
            raise r.error(ReferenceIntegrityError, f"duplicate node id {nid!r}", p + ("id",))
        kind = r.string(n, "kind", p)
        try:
            kind = NodeKind(kind)
        except ValueError:
            raise r.error(
                InvariantError, "kind must be CentralNode, FieldNode or RelayNode", p + ("kind",)
            ) from None
        nodes[nid] = Node(nid, kind, (r.number(n, "x_m", p), r.number(n, "y_m", p)))
    centrals = [n for n in nodes.values() if n.kind is NodeKind.CENTRAL]
    if len(centrals) != 1:
        raise r.error(
            InvariantError, f"exactly one CentralNode required, found {len(centrals)}", base + ("nodes",)
        )

    transceivers: Dict[str, ThzTransceiver] = {}
    trx_profile: List[Tuple[str, str]] = []
    for i, t in enumerate(r.array(s, "transceivers", base)):
        p = base + ("transceivers", i)
        if not isinstance(t, dict):
            raise r.error(TypeMismatchError, "transceiver must be an object", p)
        tid = r.string(t, "id", p)
        if tid in transceivers:
            raise r.error(ReferenceIntegrityError, f"duplicate transceiver id {tid!r}", p + ("id",))
        host = r.string(t, "host", p)
        if host not in nodes:
            raise r.error(ReferenceIntegrityError, f"unknown host node {host!r}", p + ("host",))
        prof = r.string(t, "rf_profile", p)
        if prof not in profiles:
            raise r.error(ReferenceIntegrityError, f"unknown rf profile {prof!r}", p + ("rf_profile",))
        transceivers[tid] = ThzTransceiver(
            tid,
            host,
            profiles[prof],
            r.number(t, "design_cnr_db", p, gt=0),
            r.number(t, "design_bandwidth_hz", p, None, gt=0),
        )
        trx_profile.append((tid, prof))

    chains = []
    covered = set()
    for i, c in enumerate(r.array(s, "chains", base)):
        p = base + ("chains", i)
        if not isinstance(c, dict):
            raise r.error(TypeMismatchError, "chain must be an object", p)
        path = r.array(c, "path", p)
        for j, nid in enumerate(path):
            if not isinstance(nid, str):
                raise r.error(TypeMismatchError, "path entries must be node ids", p + ("path", j))
            if nid not in nodes:
                raise r.error(ReferenceIntegrityError, f"unknown node {nid!r}", p + ("path", j))
        tid = r.string(c, "transceiver", p)
        if tid not in transceivers:
            raise r.error(ReferenceIntegrityError, f"unknown transceiver {tid!r}", p + ("transceiver",))
        if path and path[0] in covered:
            raise r.error(ReferenceIntegrityError, f"field node {path[0]!r} has two chains", p + ("path", 0))
        if path:
            covered.add(path[0])
        chains.append(HopChain(tuple(path), tid))
    try:
        dep = Deployment(tuple(nodes.values()), tuple(transceivers.values()), tuple(chains))
    except ConfigurationError as exc:
        raise r.error(InvariantError, str(exc), base) from None
    return dep, tuple(trx_profile)


def _weather(r: _Reader, doc: Mapping, dep: Deployment) -> WeatherSection:
    s = r.mapping(doc, "weather", (), required=False)
    base = ("weather",)
    profiles = []
    names = set()
    for name, body in r.mapping(s, "profiles", base, required=False).items():
        p = base + ("profiles", name)
        if not isinstance(body, dict):
            raise r.error(TypeMismatchError, "weather profile must be an object", p)
        horizon = r.number(body, "horizon_s", p, gt=0)
        segs = []
        for i, seg in enumerate(r.array(body, "segments", p)):
            sp = p + ("segments", i)
            if not isinstance(seg, dict):
                raise r.error(TypeMismatchError, "segment must be an object", sp)
            start = r.number(seg, "start_s", sp, ge=0)
            if i == 0 and start != 0:
                raise r.error(InvariantError, "first segment must start at 0", sp + ("start_s",))
            if segs and not start > segs[-1].start:
                raise r.error(InvariantError, "segments must be sorted and non-overlapping", sp + ("start_s",))
            if start >= horizon:
                raise r.error(InvariantError, "segment starts beyond horizon_s", sp + ("start_s",))
            segs.append(
                WeatherSegment(
                    start,
                    r.string(seg, "condition", sp),
                    r.number(seg, "specific_attenuation_db_per_km", sp, ge=0),
                )
            )
        if not segs:
            raise r.error(InvariantError, "profile needs at least one segment", p + ("segments",))
        profiles.append((name, WeatherProfile(tuple(segs), horizon)))
        names.add(name)

    default = r.string(s, "default_profile", base, None)
    if default is not None and default not in names:
        raise r.error(ReferenceIntegrityError, f"unknown weather profile {default!r}", base + ("default_profile",))
    hops = {frozenset(h) for c in dep.chains for h in c.hops}
    links = []
    for i, lw in enumerate(r.array(s, "links", base, required=False)):
        p = base + ("links", i)
        if not isinstance(lw, dict):
            raise r.error(TypeMismatchError, "link weather entry must be an object", p)
        a, b = r.string(lw, "from", p), r.string(lw, "to", p)
        prof = r.string(lw, "profile", p)
        if frozenset((a, b)) not in hops:
            raise r.error(ReferenceIntegrityError, f"no hop between {a!r} and {b!r}", p)
        if prof not in names:
            raise r.error(ReferenceIntegrityError, f"unknown weather profile {prof!r}", p + ("profile",))
        links.append(LinkWeather(a, b, prof))
    return WeatherSection(tuple(profiles), default, tuple(links))


def _sim(r: _Reader, doc: Mapping, ul_bits: Optional[int]) -> SimConfig:
    s = r.mapping(doc, "sim", ())
    p = ("sim",)
    fwd = r.string(s, "forwarding", p, "store_and_forward")
    if fwd not in {f.value for f in Forwarding}:
        raise r.error(InvariantError, "forwarding must be store_and_forward or cut_through", p + ("forwarding",))
    return SimConfig(
        duration=r.number(s, "duration_s", p, gt=0),
        seed=r.number(s, "seed", p, 0, integer=True),
        forwarding=Forwarding(fwd),
        per_hop_processing=r.number(s, "per_hop_processing_s", p, 0.0, ge=0),
        latency_budget=r.number(s, "latency_budget_s", p, 100e-6, gt=0),
        load_factor=r.number(s, "load_factor", p, 1.0, ge=0),
        uplink_fraction=r.number(s, "uplink_fraction", p, 1.0, ge=0, le=1),
        jitter=r.number(s, "jitter_s", p, 0.0, ge=0),
        link_rate_override=r.number(s, "link_rate_override_bps", p, None, ge=0),
        adaptive_bandwidth=r.boolean(s, "adaptive_bandwidth", p, False),
        ul_quant_bits=ul_bits,
        drain=r.boolean(s, "drain", p, False),
    )


def parse_scenario(text: str, source: str = "") -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(exc.msg, (), exc.lineno, source) from None
    r = _Reader(text, source)
    if not isinstance(doc, dict):
        raise r.error(TypeMismatchError, "scenario must be a JSON object", ())
    meta = r.mapping(doc, "metadata", (), required=False)
    fronthaul, ul_bits = _fronthaul(r, doc)
    profiles, se_model = _rf(r, doc)
    dep, trx_profiles = _deployment(r, doc, dict(profiles))
    weather = _weather(r, doc, dep)
    sim = _sim(r, doc, ul_bits)
    if sim.jitter * fronthaul.symbols_per_subframe >= fronthaul.subframe_period:
        raise r.error(InvariantError, "jitter_s must be shorter than one symbol period", ("sim", "jitter_s"))
    return Scenario(
        name=r.string(meta, "name", ("metadata",), ""),
        description=r.string(meta, "description", ("metadata",), ""),
        fronthaul=fronthaul,
        ul_quant_bits=ul_bits,
        rf_profiles=profiles,
        transceiver_profiles=trx_profiles,
        se_model=se_model,
        deployment=dep,
        weather=weather,
        sim=sim,
    )


def bundled_scenarios() -> List[str]:
    root = resources.files("thzfronthaul.data").joinpath("scenarios")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def resolve_scenario(path: Union[str, Path]) -> Path:
    """Return ``path`` if it exists, else the bundled scenario of that name."""
    p = Path(path)
    if p.exists():
        return p
    name = p.name if p.name.endswith(".json") else p.name + ".json"
    if name in bundled_scenarios():
        with resources.as_file(
            resources.files("thzfronthaul.data").joinpath("scenarios", name)
        ) as bundled:
            return Path(bundled)
    raise FileNotFoundError(f"scenario not found: {path}")


def load_scenario(path: Union[str, Path]) -> Scenario:
    p = resolve_scenario(path)
    return parse_scenario(p.read_text(encoding="utf-8"), str(path))


def emit_scenario(sc: Scenario) -> Dict[str, Any]:
    """Canonical JSON-ready form; ``parse_scenario`` of its dump returns ``sc``."""
    fh = sc.fronthaul
    fronthaul: Dict[str, Any] = {
        "bandwidth_hz": fh.bandwidth,
        "subcarrier_spacing_hz": fh.subcarrier_spacing,
        "subframe_period_s": fh.subframe_period,
        "symbols_per_subframe": fh.symbols_per_subframe,
        "num_antennas": fh.num_antennas,
        "quant_bits_per_sample": fh.quant_bits_per_sample,
        "overhead_factor": fh.overhead_factor,
    }
    if sc.ul_quant_bits is not None:
        fronthaul["ul_quant_bits"] = sc.ul_quant_bits
    m = sc.se_model
    if m.mode == "shannon_gap":
        se = {"mode": m.mode, "gap_db": m.gap, "max_se_bps_per_hz": m.max_se, "min_cnr_db": m.min_cnr}
    else:
        se = {"mode": m.mode, "table": [{"min_cnr_db": c, "se_bps_per_hz": s} for c, s in m.table]}
    profiles = {
        name: {
            "carrier_frequency_hz": rp.carrier_frequency,
            "tx_power_dbm": rp.tx_power,
            "tx_antenna_gain_dbi": rp.tx_antenna_gain,
            "rx_antenna_gain_dbi": rp.rx_antenna_gain,
            "excess_loss_db": rp.excess_loss,
            "rx_noise_figure_db": rp.rx_noise_figure,
            "antenna_temperature_k": rp.antenna_temperature,
        }
        for name, rp in sc.rf_profiles
    }
    trx_prof = dict(sc.transceiver_profiles)
    dep = sc.deployment
    transceivers = []
    for t in dep.transceivers:
        entry: Dict[str, Any] = {
            "id": t.id,
            "host": t.host_node,
            "rf_profile": trx_prof[t.id],
            "design_cnr_db": t.design_cnr,
        }
        if t.design_bandwidth is not None:
            entry["design_bandwidth_hz"] = t.design_bandwidth
        transceivers.append(entry)
    w = sc.weather
    weather: Dict[str, Any] = {
        "profiles": {
            name: {
                "horizon_s": wp.horizon,
                "segments": [
                    {
                        "start_s": s.start,
                        "condition": s.condition,
                        "specific_attenuation_db_per_km": s.specific_attenuation,
                    }
                    for s in wp.segments
                ],
            }
            for name, wp in w.profiles
        },
        "default_profile": w.default_profile,
        "links": [{"from": lw.src, "to": lw.dst, "profile": lw.profile} for lw in w.links],
    }
    cfg = sc.sim
    return {
        "metadata": {"name": sc.name, "description": sc.description},
        "fronthaul": fronthaul,
        "rf": {"profiles": profiles, "spectral_efficiency": se},
        "deployment": {
            "nodes": [
                {"id": n.id, "kind": n.kind.value, "x_m": n.position[0], "y_m": n.position[1]}
                for n in dep.nodes
            ],
            "transceivers": transceivers,
            "chains": [{"path": list(c.nodes), "transceiver": c.transceiver} for c in dep.chains],
        },
        "weather": weather,
        "sim": {
            "duration_s": cfg.duration,
            "seed": cfg.seed,
            "forwarding": cfg.forwarding.value,
            "per_hop_processing_s": cfg.per_hop_processing,
            "latency_budget_s": cfg.latency_budget,
            "load_factor": cfg.load_factor,
            "uplink_fraction": cfg.uplink_fraction,
            "jitter_s": cfg.jitter,
            "link_rate_override_bps": cfg.link_rate_override,
            "adaptive_bandwidth": cfg.adaptive_bandwidth,
            "drain": cfg.drain,
        },
    }


def dump_scenario(sc: Scenario) -> str:
    return json.dumps(emit_scenario(sc), indent=2) + "\n"


def plan_scenario(sc: Scenario) -> FeasibilityReport:
    """Run the static planner with the scenario's latency and forwarding settings."""
    return plan(
        sc.deployment,
        sc.fronthaul,
        sc.se_model,
        sc.sim.latency_budget,
        forwarding=sc.sim.forwarding,
        per_hop_processing=sc.sim.per_hop_processing,
        ul_quant_bits=sc.ul_quant_bits,
    )


def simulate_scenario(sc: Scenario, *, trace: bool = False, **overrides: Any) -> SimResult:
    """Simulate the scenario; keyword overrides replace ``sim`` settings."""
    cfg = replace(sc.sim, **overrides) if overrides else sc.sim
    return run(
        sc.deployment,
        sc.fronthaul,
        sc.weather.hop_profiles(),
        sc.se_model,
        cfg,
        default_weather=sc.weather.default,
        trace=trace,
    )
