"""Command line front end.

    thzfh capacity baseline.json
    thzfh plan --scenario my_site.json --format json --output plan.json
    thzfh simulate baseline_cfh --trace frames.csv
    thzfh sweep baseline --axis num_antennas --values 1,2,4,8,16 --format csv

Scenario arguments may be a file path or the name of a bundled scenario.
Exit status: 0 success/feasible, 1 invalid input, 2 valid but infeasible or
over the latency budget.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import List, Optional, Sequence

from . import report
from .capacity import SWEEP_AXES, _INTEGER_FIELDS, frame_model, fronthaul_rate_dl, fronthaul_rate_ul
from .datasets import table2_check
from .linkbudget import link_budget
from .planner import plan
from .scenario import (
    Scenario,
    ScenarioError,
    bundled_scenarios,
    load_scenario,
    plan_scenario,
    simulate_scenario,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INFEASIBLE = 2

log = logging.getLogger("thzfronthaul")


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_budget(sc: Scenario, args) -> int:
    dep = sc.deployment
    hops = []
    seen = set()
    for chain in dep.chains:
        trx = dep.transceiver(chain.transceiver)
        for a, b in chain.hops:
            if frozenset((a, b)) in seen:
                continue
            seen.add(frozenset((a, b)))
            d = dep.hop_distance(a, b)
            rep = link_budget(trx.rf.at(d), cnr=trx.design_cnr, bandwidth=trx.design_bandwidth)
            hops.append((chain.field_node, a, b, d, rep))
    doc = report.budget_doc(hops)
    if args.format == "json":
        text = report.to_json(doc)
    elif args.format == "csv":
        keys = list(doc["hops"][0]) if doc["hops"] else []
        text = report.rows_csv(keys, ([h[k] for k in keys] for h in doc["hops"]))
    else:
        text = report.budget_human(doc)
    _emit(text, args.output)
    return EXIT_OK


def cmd_capacity(sc: Scenario, args) -> int:
    p = sc.fronthaul
    ul = None if sc.ul_quant_bits is None else fronthaul_rate_ul(p, sc.ul_quant_bits)
    doc = report.capacity_doc(p, fronthaul_rate_dl(p), ul, frame_model(p))
    if args.format == "json":
        text = report.to_json(doc)
    elif args.format == "csv":
        text = report.rows_csv(list(doc), [list(doc.values())])
    else:
        text = report.capacity_human(doc)
    _emit(text, args.output)
    return EXIT_OK


def cmd_plan(sc: Scenario, args) -> int:
    rep = plan_scenario(sc)
    if args.format == "json":
        text = report.to_json(report.plan_doc(rep))
    elif args.format == "csv":
        header = ("ru", "required_rate_bps", "achievable_rate_bps", "margin", "latency_s", "feasible")
        text = report.rows_csv(
            header,
            ((r.ru, r.required_rate, r.achievable_rate, r.margin, r.latency, int(r.feasible)) for r in rep.rus),
        )
    else:
        text = report.plan_human(rep)
    _emit(text, args.output)
    return EXIT_OK if rep.feasible else EXIT_INFEASIBLE


def cmd_simulate(sc: Scenario, args) -> int:
    overrides = {}
    if args.duration is not None:
        overrides["duration"] = args.duration
    if args.seed is not None:
        overrides["seed"] = args.seed
    res = simulate_scenario(sc, trace=bool(args.trace), **overrides)
    m = res.metrics
    if args.format == "json":
        text = report.to_json(report.metrics_doc(m))
    elif args.format == "csv":
        header = ("ru", "frames_delivered", "latency_mean_s", "latency_p99_s", "latency_max_s", "budget_violation_fraction")
        text = report.rows_csv(
            header,
            ((ru, s.frames_delivered, s.mean, s.p99, s.max, s.violation_fraction) for ru, s in m.per_ru),
        )
    else:
        text = report.metrics_human(m, sc.sim.latency_budget)
    _emit(text, args.output)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="") as fh:
            fh.write(report.trace_csv(res.trace))
    agg = m.aggregate
    within = agg.frames_delivered > 0 and agg.violation_fraction == 0
    if agg.frames_generated == 0:
        within = True
    return EXIT_OK if within else EXIT_INFEASIBLE


def _parse_values(axis: str, raw: str) -> List[float]:
    out = []
    for tok in raw.split(","):
        tok = tok.strip()
        if not tok:
            continue
        v = float(tok)
        out.append(int(v) if axis in _INTEGER_FIELDS and v == int(v) else v)
    return out


def cmd_sweep(sc: Scenario, args) -> int:
    axis = args.axis
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown axis {axis!r}; expected one of {', '.join(SWEEP_AXES)}")
    values = _parse_values(axis, args.values)

    def point(v):
        params = replace(sc.fronthaul, **{axis: v})
        rep = plan(
            sc.deployment,
            params,
            sc.se_model,
            sc.sim.latency_budget,
            forwarding=sc.sim.forwarding,
            per_hop_processing=sc.sim.per_hop_processing,
            ul_quant_bits=sc.ul_quant_bits,
        )
        return (v, fronthaul_rate_dl(params), min(r.margin for r in rep.rus), int(rep.feasible))

    # map() returns results in input order regardless of completion order
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(point, values))
    header = (axis, "fronthaul_rate_dl_bps", "min_margin", "feasible")
    if args.format == "json":
        text = report.to_json({"axis": axis, "points": [dict(zip(header, r)) for r in rows]})
    elif args.format == "csv":
        text = report.rows_csv(header, rows)
    else:
        text = report.table(
            [(f"{v:.4g}", report.fmt(rate, "bit/s"), f"{mg:.4g}", "yes" if ok else "NO") for v, rate, mg, ok in rows],
            (axis, "eCPRI rate", "min margin", "feasible"),
        )
    _emit(text, args.output)
    return EXIT_OK


def cmd_validate(sc: Scenario, args) -> int:
    dep = sc.deployment
    _emit(
        f"ok: {sc.name or args.scenario} ({len(dep.nodes)} nodes, {len(dep.chains)} chains, "
        f"{len(sc.weather.profiles)} weather profiles)\n",
        args.output,
    )
    return EXIT_OK


def cmd_table2(args) -> int:
    recs = table2_check(args.rate, args.distance)
    header = ("reference", "technology", "center_frequency_hz", "data_rate_bps", "distance_m", "signal_generation", "architecture")
    rows = [
        (r.reference, r.technology, r.center_frequency, r.data_rate, r.distance, r.signal_generation, r.architecture)
        for r in recs
    ]
    if args.format == "csv":
        text = report.rows_csv(header, rows)
    elif args.format == "json":
        text = report.to_json({"records": [dict(zip(header, r)) for r in rows]})
    else:
        text = report.table(
            [(r[0], r[1], report.fmt(r[2], "Hz"), report.fmt(r[3], "bit/s"), report.fmt(r[4], "m")) for r in rows],
            ("ref", "technology", "frequency", "rate", "distance"),
        )
    _emit(text, args.output)
    return EXIT_OK


COMMANDS = {
    "budget": cmd_budget,
    "capacity": cmd_capacity,
    "plan": cmd_plan,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thzfh",
        description="THz fronthaul planning and simulation for on-demand OpenRAN deployments.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("scenario_pos", nargs="?", metavar="SCENARIO", help="scenario file or bundled name")
        p.add_argument("--scenario", help="scenario file or bundled name")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("human", "json", "csv"), default="human")

    for name, help_ in (
        ("budget", "per-hop link budget"),
        ("capacity", "required eCPRI fronthaul rate"),
        ("plan", "static feasibility of the deployment"),
        ("validate", "check a scenario file"),
    ):
        common(sub.add_parser(name, help=help_))

    p = sub.add_parser("simulate", help="discrete-event simulation of frame transport")
    common(p)
    p.add_argument("--trace", help="write the per-frame trace CSV here")
    p.add_argument("--duration", type=float, help="override sim.duration_s")
    p.add_argument("--seed", type=int, help="override sim.seed")

    p = sub.add_parser("sweep", help="sweep one fronthaul parameter")
    common(p)
    p.add_argument("--axis", required=True, choices=SWEEP_AXES)
    p.add_argument("--values", required=True, help="comma separated values")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("table2", help="published H-band experiments meeting a rate and range")
    p.add_argument("--rate", type=float, required=True, help="required data rate, bit/s")
    p.add_argument("--distance", type=float, required=True, help="required distance, m")
    p.add_argument("--output")
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")

    sub.add_parser("list", help="list bundled scenarios")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "list":
        print("\n".join(bundled_scenarios()))
        return EXIT_OK
    if args.command == "table2":
        try:
            return cmd_table2(args)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID

    args.scenario = args.scenario or args.scenario_pos
    if not args.scenario:
        print("error: a scenario is required (positional or --scenario)", file=sys.stderr)
        return EXIT_INVALID
    try:
        sc = load_scenario(args.scenario)
        log.debug("loaded scenario %s", sc.name)
        return COMMANDS[args.command](sc, args)
    except ScenarioError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
