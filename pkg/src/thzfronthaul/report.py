"""Machine (JSON/CSV) and human renderings of results.

Machine output uses 15 significant digits and a fixed field order so that
identical inputs produce identical bytes; human output uses 4.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Dict, Iterable, Optional, Sequence

from .capacity import FrameModel, FronthaulParams
from .linkbudget import LinkBudgetReport
from .planner import FeasibilityReport
from .sim.engine import FrameRecord, LatencyStats, SimMetrics

TRACE_COLUMNS = ("frame_id", "ru_id", "gen_time_ps", "delivery_time_ps", "latency_ps", "budget_met")


def _num(x: Any) -> Any:
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            return None
        return float(f"{x:.15g}")
    return x


def _clean(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return _num(obj)


def to_json(doc: Dict[str, Any]) -> str:
    return json.dumps(_clean(doc), indent=2, allow_nan=False) + "\n"


def fmt(x: Optional[float], unit: str = "") -> str:
    """4 significant digits with an SI prefix."""
    if x is None:
        return "n/a"
    if isinstance(x, float) and not math.isfinite(x):
        return "inf"
    if x == 0 or not unit:
        s = f"{x:.4g}"
        return f"{s} {unit}".rstrip()
    for scale, prefix in ((1e9, "G"), (1e6, "M"), (1e3, "k"), (1.0, ""), (1e-3, "m"), (1e-6, "µ"), (1e-9, "n")):
        if abs(x) >= scale:
            return f"{x / scale:.4g} {prefix}{unit}"
    return f"{x:.4g} {unit}"


def table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


# -- link budget -------------------------------------------------------------


def budget_doc(hops: Iterable[tuple]) -> Dict[str, Any]:
    """``hops`` yields (ru, src, dst, distance, LinkBudgetReport)."""
    out = []
    for ru, src, dst, d, rep in hops:
        rep: LinkBudgetReport
        out.append(
            {
                "ru": ru,
                "from": src,
                "to": dst,
                "distance_m": d,
                "fspl_db": rep.fspl,
                "rx_power_dbm": rep.rx_power,
                "noise_density_mw_per_hz": rep.noise_density,
                "design_cnr_db": rep.target_cnr,
                "max_bandwidth_hz": rep.max_bandwidth,
                "bandwidth_hz": rep.bandwidth,
                "cnr_db": rep.cnr,
            }
        )
    return {"hops": out}


def budget_human(doc: Dict[str, Any]) -> str:
    rows = [
        (
            f"{h['from']}->{h['to']}",
            fmt(h["distance_m"], "m"),
            f"{h['fspl_db']:.4g} dB",
            f"{h['rx_power_dbm']:.4g} dBm",
            f"{h['noise_density_mw_per_hz']:.4g} mW/Hz",
            fmt(h["max_bandwidth_hz"], "Hz"),
            "n/a" if h["cnr_db"] is None else f"{h['cnr_db']:.4g} dB",
        )
        for h in doc["hops"]
    ]
    return table(rows, ("hop", "distance", "FSPL", "P_RX", "S_AWGN", "BW@design CNR", "CNR@design BW"))


# -- capacity ----------------------------------------------------------------


def capacity_doc(params: FronthaulParams, dl: float, ul: Optional[float], fm: FrameModel) -> Dict[str, Any]:
    return {
        "subcarriers": params.subcarriers,
        "fronthaul_rate_dl_bps": dl,
        "fronthaul_rate_ul_bps": ul,
        "per_symbol_payload_bits": fm.per_symbol_payload,
        "symbol_period_s": fm.symbol_period,
        "frames_per_second": fm.frames_per_second,
    }


def capacity_human(doc: Dict[str, Any]) -> str:
    lines = [
        f"downlink eCPRI rate   {fmt(doc['fronthaul_rate_dl_bps'], 'bit/s')}",
    ]
    if doc["fronthaul_rate_ul_bps"] is not None:
        lines.append(f"uplink eCPRI rate     {fmt(doc['fronthaul_rate_ul_bps'], 'bit/s')}")
    lines += [
        f"subcarriers (B/df)    {doc['subcarriers']:.4g}",
        f"payload per symbol    {fmt(doc['per_symbol_payload_bits'], 'bit')}",
        f"symbol period         {fmt(doc['symbol_period_s'], 's')}",
    ]
    return "\n".join(lines) + "\n"


# -- plan --------------------------------------------------------------------


def plan_doc(rep: FeasibilityReport) -> Dict[str, Any]:
    return {
        "feasible": rep.feasible,
        "latency_budget_s": rep.latency_budget,
        "rus": [
            {
                "ru": r.ru,
                "transceiver": r.transceiver,
                "feasible": r.feasible,
                "required_rate_bps": r.required_rate,
                "achievable_rate_bps": r.achievable_rate,
                "margin": r.margin,
                "latency_s": r.latency,
                "distance_m": r.distance,
                "rx_power_dbm": r.rx_power,
                "usable_bandwidth_hz": r.usable_bandwidth,
                "hops": [
                    {
                        "from": h.src,
                        "to": h.dst,
                        "distance_m": h.distance,
                        "rx_power_dbm": h.rx_power,
                        "bandwidth_hz": h.bandwidth,
                        "cnr_db": h.cnr,
                        "rate_bps": h.rate,
                    }
                    for h in r.hops
                ],
            }
            for r in rep.rus
        ],
        "transceivers": [
            {"id": t.id, "rus": list(t.rus), "load": t.load, "feasible": t.feasible}
            for t in rep.transceivers
        ],
    }


def plan_human(rep: FeasibilityReport) -> str:
    rows = [
        (
            r.ru,
            fmt(r.required_rate, "bit/s"),
            fmt(r.achievable_rate, "bit/s"),
            f"{r.margin:.4g}",
            fmt(r.latency, "s"),
            "yes" if r.feasible else "NO",
        )
        for r in rep.rus
    ]
    out = table(rows, ("RU", "required", "achievable", "margin", "latency", "feasible"))
    out += "\n" + table(
        [(t.id, ",".join(t.rus), fmt(t.load), "yes" if t.feasible else "NO") for t in rep.transceivers],
        ("transceiver", "RUs", "load", "ok"),
    )
    out += f"\noverall: {'feasible' if rep.feasible else 'INFEASIBLE'} (latency budget {fmt(rep.latency_budget, 's')})\n"
    return out


# -- simulation --------------------------------------------------------------


def _stats_doc(s: LatencyStats) -> Dict[str, Any]:
    return {
        "frames_generated": s.frames_generated,
        "frames_delivered": s.frames_delivered,
        "bits_generated": s.bits_generated,
        "bits_delivered": s.bits_delivered,
        "latency_mean_s": s.mean,
        "latency_p50_s": s.p50,
        "latency_p95_s": s.p95,
        "latency_p99_s": s.p99,
        "latency_max_s": s.max,
        "budget_violation_fraction": s.violation_fraction,
        "outage_s": s.outage_seconds,
    }


def metrics_doc(m: SimMetrics) -> Dict[str, Any]:
    return {
        "duration_s": m.duration,
        "seed": m.seed,
        "frames_in_flight": m.frames_in_flight,
        "aggregate": _stats_doc(m.aggregate),
        "rus": {ru: _stats_doc(s) for ru, s in m.per_ru},
        "links": [
            {
                "link": lm.name,
                "utilization": lm.utilization,
                "max_queue_depth": lm.max_queue_depth,
                "frames_sent": lm.frames_sent,
            }
            for lm in m.links
        ],
    }


def metrics_human(m: SimMetrics, budget: float) -> str:
    rows = []
    for name, s in list(m.per_ru) + [("ALL", m.aggregate)]:
        rows.append(
            (
                name,
                str(s.frames_delivered),
                fmt(s.mean, "s"),
                fmt(s.p99, "s"),
                fmt(s.max, "s"),
                fmt(s.violation_fraction),
                fmt(s.outage_seconds, "s"),
            )
        )
    out = table(rows, ("RU", "delivered", "mean", "p99", "max", "violations", "outage"))
    out += "\n" + table(
        [(lm.name, fmt(lm.utilization), str(lm.max_queue_depth)) for lm in m.links],
        ("link", "utilization", "max queue"),
    )
    out += f"\nframes in flight at horizon: {m.frames_in_flight}; budget {fmt(budget, 's')}\n"
    return out


def trace_csv(records: Sequence[FrameRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for r in records:
        w.writerow(
            (
                r.frame_id,
                r.ru,
                r.gen_time,
                "" if r.delivery_time is None else r.delivery_time,
                "" if r.latency is None else r.latency,
                "" if r.budget_met is None else int(r.budget_met),
            )
        )
    return buf.getvalue()


def rows_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{v:.15g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()
