from fractions import Fraction as F

import pytest

import ctxlab as cx
from ctxlab import jsonio


def test_rational_strings():
    assert jsonio.rational_str(F(3, 4)) == "3/4"
    assert jsonio.rational_str(F(2)) == "2"
    assert cx.as_fraction("3/4") == F(3, 4)
    assert cx.as_fraction(1) == F(1)
    with pytest.raises(TypeError):
        cx.as_fraction(0.5)


def test_graph_round_trip():
    g = cx.complete_bipartite(2, 3)
    assert jsonio.graph_from_json(jsonio.graph_to_json(g)) == g


def test_scenario_round_trip(chsh):
    doc = jsonio.scenario_to_json(chsh)
    assert jsonio.scenario_from_json(doc) == chsh


def test_scenario_from_cone_of_shorthand():
    doc = {"cone_of": jsonio.graph_to_json(cx.circle(4))}
    assert jsonio.scenario_from_json(doc) == cx.cone(cx.circle(4))


def test_collapse_map_round_trip():
    cm = cx.collapse(cx.complete_bipartite(3, 3), ["t22", "t00"])
    doc = jsonio.collapse_map_to_json(cm)
    assert doc["edge_map"]["t22"] is None
    assert jsonio.collapse_map_from_json(doc) == cm


def test_disk_round_trip():
    d = cx.classical_disk(6)
    assert jsonio.disk_from_json(jsonio.disk_to_json(d)) == d


def test_distribution_round_trip(chsh):
    p = cx.pr_box(4, "+-++")
    doc = jsonio.distribution_to_json(p)
    assert doc["values"]["c_v0"] == "1/2"
    q = jsonio.distribution_from_json(doc)
    assert q.space == chsh and q.values == p.values


def test_distribution_on_graph_round_trip():
    g = cx.circle(3)
    p = cx.EdgeDistribution(g, {"t1": F(1), "t2": F(1, 3), "t3": F(0)})
    doc = jsonio.distribution_to_json(p)
    assert "graph" in doc
    assert jsonio.distribution_from_json(doc).values == p.values


def test_inequality_round_trip():
    row = cx.LinearInequality({"t1": F(1), "t2": F(-1)}, F(-1, 2), label="demo")
    doc = jsonio.inequality_to_json(row)
    assert doc["sense"] == "geq"
    back = jsonio.inequality_from_json(doc)
    assert back.key() == row.key() and back.label == "demo"


def test_system_and_trace_round_trip():
    system = cx.circle_inequalities(["a", "b", "c"])
    assert jsonio.system_from_json(jsonio.system_to_json(system)).row_keys() == system.row_keys()

    from ctxlab.fm import disk_system

    disk = cx.classical_disk(5)
    trace = []
    cx.eliminate_variables(disk_system(disk), disk.interior, trace)
    doc = jsonio.trace_to_json(trace)
    back = jsonio.trace_from_json(doc)
    assert [s.variable for s in back] == list(disk.interior)
    assert all(
        [r.key() for r in a.lower] == [r.key() for r in b.lower]
        for a, b in zip(trace, back)
    )


def test_certificate_serialization(chsh):
    cert = cx.is_noncontextual_lp(cx.pr_box(4, "-+++"))
    doc = jsonio.certificate_to_json(cert)
    assert doc["verdict"] == "contextual"
    assert "separating" in doc

    dets = [a.to_distribution() for a in cx.deterministic_enumerate(chsh)]
    values = {e: sum((p.values[e] for p in dets), F(0)) / len(dets) for e in chsh.edges}
    cert2 = cx.is_noncontextual_lp(cx.EdgeDistribution(chsh, values))
    doc2 = jsonio.certificate_to_json(cert2)
    assert doc2["verdict"] == "noncontextual"
    assert all(len(bits) == 8 for bits in doc2["mixture"])
