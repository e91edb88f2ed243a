"""Batch command-line surface with stable JSON output.

Every invocation prints one CommandResult document:

    {"schema": "ctxlab/1", "status": "ok"|"error", "payload": ..., "diagnostics": [...]}

Exit codes: 0 success, 1 usage or I/O error, 2 guardrail exceeded.  Verdicts
live in the payload, never in the exit code.  The CTXLAB_GUARDRAIL
environment variable (an integer) overrides the enumeration guardrails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import jsonio
from .collapse_bell import (
    generate_contextual_vertices,
    loop_support_check,
    pr_box,
    pushforward_distribution,
    pushforward_inequality,
)
from .distributions import (
    DEFAULT_ENUMERATION_LIMIT,
    EdgeDistribution,
    deterministic_enumerate,
    orbit,
    orbit_of_inequality,
    validate,
)
from .errors import CtxlabError, GuardrailExceededError
from .fm import (
    PROBABILITY,
    bouquet_of_disks,
    check_extension_bouquet,
    circle_inequalities,
    eliminate_variables,
    extend_from_boundary,
    fine_check_flower,
    to_expectation,
    to_probability,
)
from .errors import UnsupportedShapeError
from .polytope import (
    DD_MAX_EDGES,
    enumerate_vertices,
    h_representation,
    is_noncontextual_lp,
    rank_of,
    support,
    tight_set,
)
from .scenario import (
    circle,
    classical_disk,
    collapse,
    complete_bipartite,
    cone,
    flower,
    wedge_circles,
)

SCHEMA = "ctxlab/1"


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _guardrail(default: int) -> int:
    raw = os.environ.get("CTXLAB_GUARDRAIL")
    return int(raw) if raw else default


def _load(path: str):
    with open(path) as fh:
        doc = json.load(fh)
    # outputs of this tool are accepted as inputs
    if isinstance(doc, dict) and doc.get("schema") == SCHEMA and "payload" in doc:
        return doc["payload"]
    return doc


def _load_graph(path: str):
    return jsonio.graph_from_json(_load(path))


def _load_scenario(path: str):
    return jsonio.scenario_from_json(_load(path))


def _load_values(path: str) -> dict:
    doc = _load(path)
    return jsonio.values_from_json(doc["values"] if "values" in doc else doc)


def _load_distribution(path: str, space) -> EdgeDistribution:
    return EdgeDistribution(space, _load_values(path))


def _load_inequality(path: str):
    return jsonio.inequality_from_json(_load(path))


def _csv(text: str) -> list[str]:
    return [x for x in (part.strip() for part in text.split(",")) if x]


def _int_csv(text: str) -> list[int]:
    return [int(x) for x in _csv(text)]


# ---------------------------------------------------------------------------
# handlers

def _cmd_scenario(args) -> dict:
    if args.kind == "circle":
        return jsonio.graph_to_json(circle(args.n))
    if args.kind == "wedge":
        return jsonio.graph_to_json(wedge_circles(args.n))
    if args.kind == "bipartite":
        return jsonio.graph_to_json(complete_bipartite(args.m, args.n))
    if args.kind == "flower":
        return jsonio.graph_to_json(flower(*_int_csv(args.sizes)))
    if args.kind == "cone":
        return jsonio.scenario_to_json(cone(_load_graph(args.graph)))
    if args.kind == "disk":
        return jsonio.disk_to_json(classical_disk(args.n))
    raise UsageError(f"unknown scenario kind {args.kind!r}")


def _cmd_ineq(args) -> dict:
    if args.kind == "hrep":
        h = h_representation(_load_scenario(args.scenario))
        return {
            "rows": [jsonio.inequality_to_json(r) for r in h.rows],
            "count": len(h.rows),
        }
    if args.kind == "circle":
        edges = _csv(args.edges) if args.edges else [f"t{i}" for i in range(1, args.n + 1)]
        if len(edges) != args.n:
            raise UsageError("--edges must list exactly --n edge ids")
        system = circle_inequalities(edges)
        if args.mode == PROBABILITY:
            system = to_probability(system)
        return jsonio.system_to_json(system)
    raise UsageError(f"unknown ineq kind {args.kind!r}")


def _cmd_fm_eliminate(args) -> dict:
    system = jsonio.system_from_json(_load(args.system))
    trace: list = []
    result = eliminate_variables(system, _csv(args.vars), trace)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(jsonio.dumps(jsonio.trace_to_json(trace)))
    return jsonio.system_to_json(result)


def _cmd_extend(args) -> dict:
    if args.kind == "disk":
        disk = classical_disk(args.n)
        boundary = disk.boundary_graph
        values = _load_distribution(args.values, boundary)
        result = extend_from_boundary(disk, values)
        if result.extends:
            return {
                "extends": True,
                "witness": jsonio.values_to_json(result.extension.values),
            }
        return {
            "extends": False,
            "violations": [jsonio.inequality_to_json(r) for r in result.violations],
        }
    if args.kind == "bouquet":
        disks, shared = bouquet_of_disks(_int_csv(args.sizes))
        result = check_extension_bouquet(disks, shared, _load_values(args.values))
        return {
            "ok": result.ok,
            "checked_circles": [list(c) for c in result.checked],
            "violations": [
                {"circle": list(c), "row": jsonio.inequality_to_json(r)}
                for c, r in result.violations
            ],
        }
    raise UsageError(f"unknown extend kind {args.kind!r}")


def _cmd_check(args) -> dict:
    s = _load_scenario(args.scenario)
    p = _load_distribution(args.distribution, s)
    if args.kind == "validate":
        violations = validate(p)
        return {
            "valid": not violations,
            "violations": [
                {
                    "triangle": v.triangle,
                    "outcome": list(v.outcome),
                    "value": jsonio.rational_str(v.value),
                }
                for v in violations
            ],
        }
    if args.kind == "contextual":
        from .scenario import flower_petals, is_circle_graph

        method = args.method
        if method == "auto":
            qualifies = s.is_cone and (
                is_circle_graph(s.cone_of) or flower_petals(s.cone_of) is not None
            )
            method = "circles" if qualifies else "lp"
        if method == "circles":
            result = fine_check_flower(p)
            payload = {"method": "circles", "verdict": result.verdict}
            if result.witness_row is not None:
                payload["witness"] = {
                    "circle": list(result.witness_circle),
                    "row": jsonio.inequality_to_json(result.witness_row),
                }
            return payload
        cert = is_noncontextual_lp(p, _guardrail(DEFAULT_ENUMERATION_LIMIT))
        return {
            "method": "lp",
            "verdict": cert.verdict,
            "certificate": jsonio.certificate_to_json(cert),
        }
    if args.kind == "strong":
        supp = support(p, _guardrail(DEFAULT_ENUMERATION_LIMIT))
        return {
            "strongly_contextual": not supp,
            "support": [jsonio.assignment_bits(a) for a in supp],
        }
    if args.kind == "vertex":
        h = h_representation(s)
        ok = not validate(p)
        rank = rank_of(h, p)
        return {
            "vertex": ok and rank == len(s.edges),
            "valid": ok,
            "rank": rank,
            "tight_rows": [h.rows[i].label for i in tight_set(h, p)],
        }
    raise UsageError(f"unknown check kind {args.kind!r}")


def _cmd_vertices(args) -> dict:
    s = _load_scenario(args.scenario)
    result = enumerate_vertices(
        s, adjacency=args.adjacency, max_edges=_guardrail(DD_MAX_EDGES)
    )
    payload = {
        "count": len(result.vertices),
        "vertices": [jsonio.values_to_json(v.values) for v in result.vertices],
    }
    if result.adjacency is not None:
        payload["adjacency"] = [list(pair) for pair in result.adjacency]
    return payload


def _cmd_collapse(args) -> dict:
    if args.kind == "graph":
        cm = collapse(_load_graph(args.graph), _csv(args.edges))
        return jsonio.collapse_map_to_json(cm)
    cm = jsonio.collapse_map_from_json(_load(args.map))
    if args.kind == "distribution":
        p = _load_distribution(args.input, cone(cm.target))
        return jsonio.distribution_to_json(pushforward_distribution(cm, p))
    if args.kind == "inequality":
        ineq = _load_inequality(args.input)
        return jsonio.inequality_to_json(pushforward_inequality(cm, ineq))
    raise UsageError(f"unknown collapse kind {args.kind!r}")


def _cmd_generate(args) -> dict:
    if args.kind == "pr":
        p = pr_box(args.n, args.signs)
        return jsonio.distribution_to_json(p)
    if args.kind == "vertices":
        g = _load_graph(args.graph)
        vertices = generate_contextual_vertices(
            g,
            guardrail=_guardrail(2**16),
            contextuality_checks=args.spot_check,
        )
        return {
            "count": len(vertices),
            "vertices": [
                {
                    "values": jsonio.values_to_json(v.values),
                    "certificate": "contextual-vertex",
                }
                for v in vertices
            ],
        }
    raise UsageError(f"unknown generate kind {args.kind!r}")


def _cmd_orbit(args) -> dict:
    s = _load_scenario(args.scenario)
    group = deterministic_enumerate(s, _guardrail(DEFAULT_ENUMERATION_LIMIT))
    if args.kind == "distribution":
        p = _load_distribution(args.input, s)
        images = orbit(group, p)
        return {
            "size": len(images),
            "orbit": [jsonio.values_to_json(q.values) for q in images],
        }
    if args.kind == "inequality":
        ineq = _load_inequality(args.input)
        images = orbit_of_inequality(group, ineq)
        return {
            "size": len(images),
            "orbit": [jsonio.inequality_to_json(q) for q in images],
        }
    raise UsageError(f"unknown orbit kind {args.kind!r}")


def _cmd_probe(args) -> dict:
    g = _load_graph(args.graph)
    ineq = _load_inequality(args.inequality)
    return {"loop_support": loop_support_check(ineq, g)}


# ---------------------------------------------------------------------------
# parser

def build_parser() -> Parser:
    parser = Parser(prog="ctxlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scenario", help="construct measurement spaces")
    ps = p.add_subparsers(dest="kind", required=True)
    for kind in ("circle", "wedge"):
        q = ps.add_parser(kind)
        q.add_argument("--n", type=int, required=True)
    q = ps.add_parser("bipartite")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q = ps.add_parser("flower")
    q.add_argument("--sizes", required=True, help="comma-separated petal sizes")
    q = ps.add_parser("cone")
    q.add_argument("graph", help="graph JSON file")
    q = ps.add_parser("disk")
    q.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_scenario)

    p = sub.add_parser("ineq", help="inequality systems")
    ps = p.add_subparsers(dest="kind", required=True)
    q = ps.add_parser("hrep")
    q.add_argument("scenario")
    q = ps.add_parser("circle")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--edges", default="")
    q.add_argument("--mode", choices=["probability", "expectation"], default="probability")
    p.set_defaults(handler=_cmd_ineq)

    p = sub.add_parser("fm", help="Fourier-Motzkin elimination")
    ps = p.add_subparsers(dest="kind", required=True)
    q = ps.add_parser("eliminate")
    q.add_argument("system")
    q.add_argument("--vars", required=True)
    q.add_argument("--trace", default="")
    p.set_defaults(handler=_cmd_fm_eliminate)

    p = sub.add_parser("extend", help="boundary extension checks")
    ps = p.add_subparsers(dest="kind", required=True)
    q = ps.add_parser("disk")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("values")
    q = ps.add_parser("bouquet")
    q.add_argument("--sizes", required=True)
    q.add_argument("values")
    p.set_defaults(handler=_cmd_extend)

    p = sub.add_parser("check", help="distribution checks")
    ps = p.add_subparsers(dest="kind", required=True)
    for kind in ("validate", "strong", "vertex"):
        q = ps.add_parser(kind)
        q.add_argument("scenario")
        q.add_argument("distribution")
    q = ps.add_parser("contextual")
    q.add_argument("scenario")
    q.add_argument("distribution")
    q.add_argument("--method", choices=["lp", "circles", "auto"], default="auto")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("vertices", help="vertex enumeration")
    ps = p.add_subparsers(dest="kind", required=True)
    q = ps.add_parser("enumerate")
    q.add_argument("scenario")
    q.add_argument("--adjacency", action="store_true")
    p.set_defaults(handler=_cmd_vertices)

    p = sub.add_parser("collapse", help="collapsing maps and transport")
    ps = p.add_subparsers(dest="kind", required=True)
    q = ps.add_parser("graph")
    q.add_argument("graph")
    q.add_argument("--edges", required=True)
    for kind in ("distribution", "inequality"):
        q = ps.add_parser(kind)
        q.add_argument("map", help="collapse map JSON file")
        q.add_argument("input")
    p.set_defaults(handler=_cmd_collapse)

    p = sub.add_parser("generate", help="PR boxes and contextual vertices")
    ps = p.add_subparsers(dest="kind", required=True)
    q = ps.add_parser("pr")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--signs", required=True)
    q = ps.add_parser("vertices")
    q.add_argument("graph")
    q.add_argument("--spot-check", type=int, default=None)
    p.set_defaults(handler=_cmd_generate)

    p = sub.add_parser("orbit", help="deterministic group orbits")
    ps = p.add_subparsers(dest="kind", required=True)
    for kind in ("distribution", "inequality"):
        q = ps.add_parser(kind)
        q.add_argument("scenario")
        q.add_argument("input")
    p.set_defaults(handler=_cmd_orbit)

    p = sub.add_parser("probe", help="experimental probes")
    ps = p.add_subparsers(dest="kind", required=True)
    q = ps.add_parser("loop-support")
    q.add_argument("graph")
    q.add_argument("inequality")
    p.set_defaults(handler=_cmd_probe)

    return parser


def _emit(status: str, payload, diagnostics) -> None:
    sys.stdout.write(
        jsonio.dumps(
            {
                "schema": SCHEMA,
                "status": status,
                "payload": payload,
                "diagnostics": diagnostics,
            }
        )
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload = args.handler(args)
    except GuardrailExceededError as exc:
        _emit("error", {"error": str(exc)}, ["guardrail"])
        return 2
    except (UsageError, CtxlabError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        _emit("error", {"error": str(exc)}, [])
        return 1
    _emit("ok", payload, [])
    return 0


if __name__ == "__main__":
    sys.exit(main())
