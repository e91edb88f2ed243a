"""JSON (de)serialization with rationals as "num/den" strings.

All ids are strings; integers are accepted as rational shorthand.  Emitted
documents are fully ordered so identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .distributions import EdgeDistribution, OutcomeAssignment, as_fraction
from .fm import EliminationStep, InequalitySystem
from .inequalities import LinearInequality
from .polytope import ContextualityCertificate
from .scenario import ClassicalDisk, CollapseMap, Edge, Graph, Scenario, Triangle, cone


def rational_str(x: Fraction) -> str:
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "d0": e.d0, "d1": e.d1} for e in g.edges],
    }


def graph_from_json(doc: dict) -> Graph:
    edges = tuple(Edge(e["id"], e["d0"], e["d1"]) for e in doc["edges"])
    return Graph(tuple(doc["vertices"]), edges)


def scenario_to_json(s: Scenario) -> dict:
    doc: dict = {
        "edges": list(s.edges),
        "triangles": [
            {"id": t.id, "d0": t.d0, "d1": t.d1, "d2": t.d2} for t in s.triangles
        ],
    }
    if s.edge_faces:
        doc["edge_faces"] = {e: [a, b] for e, a, b in s.edge_faces}
    if s.cone_of is not None:
        doc["cone_of"] = graph_to_json(s.cone_of)
        doc["apex"] = s.apex
    return doc


def scenario_from_json(doc: dict) -> Scenario:
    if "triangles" not in doc and "cone_of" in doc:
        return cone(graph_from_json(doc["cone_of"]))
    triangles = tuple(
        Triangle(t["id"], d0=t["d0"], d1=t["d1"], d2=t["d2"]) for t in doc["triangles"]
    )
    faces = tuple(
        (e, a, b) for e, (a, b) in sorted(doc.get("edge_faces", {}).items())
    )
    cone_of = graph_from_json(doc["cone_of"]) if "cone_of" in doc else None
    return Scenario(
        tuple(doc["edges"]), triangles, faces, cone_of=cone_of, apex=doc.get("apex")
    )


def collapse_map_to_json(cm: CollapseMap) -> dict:
    return {
        "source": graph_to_json(cm.source),
        "target": graph_to_json(cm.target),
        "edge_map": {e: img for e, img in cm.edge_map},
        "vertex_map": {v: img for v, img in cm.vertex_map},
    }


def collapse_map_from_json(doc: dict) -> CollapseMap:
    source = graph_from_json(doc["source"])
    target = graph_from_json(doc["target"])
    edge_map = tuple((e.id, doc["edge_map"][e.id]) for e in source.edges)
    vertex_map = tuple((v, doc["vertex_map"][v]) for v in source.vertices)
    return CollapseMap(source, target, edge_map, vertex_map)


def disk_to_json(disk: ClassicalDisk) -> dict:
    return {
        "scenario": scenario_to_json(disk.scenario),
        "boundary": list(disk.boundary),
        "interior": list(disk.interior),
    }


def disk_from_json(doc: dict) -> ClassicalDisk:
    return ClassicalDisk(
        scenario_from_json(doc["scenario"]),
        tuple(doc["boundary"]),
        tuple(doc["interior"]),
    )


def values_to_json(values: dict[str, Fraction]) -> dict:
    return {e: rational_str(v) for e, v in sorted(values.items())}


def values_from_json(doc: dict) -> dict[str, Fraction]:
    return {e: as_fraction(v) for e, v in doc.items()}


def distribution_to_json(p: EdgeDistribution) -> dict:
    space = p.space
    if isinstance(space, Scenario):
        return {"scenario": scenario_to_json(space), "values": values_to_json(p.values)}
    return {"graph": graph_to_json(space), "values": values_to_json(p.values)}


def distribution_from_json(doc: dict, space=None) -> EdgeDistribution:
    if space is None:
        if "scenario" in doc and isinstance(doc["scenario"], dict):
            space = scenario_from_json(doc["scenario"])
        elif "graph" in doc:
            space = graph_from_json(doc["graph"])
        else:
            raise ValueError("distribution document carries no measurement space")
    return EdgeDistribution(space, values_from_json(doc["values"]))


def inequality_to_json(ineq: LinearInequality) -> dict:
    doc = {
        "coeffs": {e: rational_str(c) for e, c in sorted(ineq.coeffs.items())},
        "rhs": rational_str(ineq.rhs),
        "sense": "geq",
    }
    if ineq.label:
        doc["label"] = ineq.label
    return doc


def inequality_from_json(doc: dict) -> LinearInequality:
    if doc.get("sense", "geq") != "geq":
        raise ValueError("only >= rows are supported")
    return LinearInequality(
        {e: as_fraction(c) for e, c in doc["coeffs"].items()},
        as_fraction(doc["rhs"]),
        doc.get("label", ""),
    )


def system_to_json(system: InequalitySystem) -> dict:
    return {
        "mode": system.mode,
        "variables": list(system.variables),
        "rows": [inequality_to_json(r) for r in system.rows],
    }


def system_from_json(doc: dict) -> InequalitySystem:
    return InequalitySystem(
        doc["mode"],
        tuple(doc["variables"]),
        tuple(inequality_from_json(r) for r in doc["rows"]),
    )


def trace_to_json(trace) -> list:
    return [
        {
            "variable": step.variable,
            "lower": [inequality_to_json(r) for r in step.lower],
            "upper": [inequality_to_json(r) for r in step.upper],
        }
        for step in trace
    ]


def trace_from_json(doc) -> list[EliminationStep]:
    return [
        EliminationStep(
            step["variable"],
            tuple(inequality_from_json(r) for r in step["lower"]),
            tuple(inequality_from_json(r) for r in step["upper"]),
        )
        for step in doc
    ]


def assignment_bits(a: OutcomeAssignment) -> str:
    return "".join(str(b) for b in a.key())


def certificate_to_json(cert: ContextualityCertificate) -> dict:
    doc: dict = {"verdict": cert.verdict}
    if cert.mixture is not None:
        doc["mixture"] = {
            assignment_bits(a): rational_str(w) for a, w in sorted(
                cert.mixture.items(), key=lambda kv: kv[0].key()
            )
        }
    if cert.separating is not None:
        doc["separating"] = inequality_to_json(cert.separating)
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
