import pytest

import ctxlab as cx
from ctxlab.scenario import Edge, Graph


def test_circle_one_is_a_loop():
    g = cx.circle(1)
    assert len(g.vertices) == 1
    assert len(g.edges) == 1
    assert g.edges[0].is_loop


def test_circle_four():
    g = cx.circle(4)
    assert len(g.vertices) == 4
    assert len(g.edges) == 4
    assert all(g.degree(v) == 2 for v in g.vertices)
    assert cx.is_circle_graph(g)


def test_circle_eight_edge_ids():
    g = cx.circle(8)
    assert g.edge_ids == tuple(f"t{i}" for i in range(1, 9))
    assert cx.is_circle_graph(g)


@pytest.mark.parametrize("builder", [cx.circle, cx.line, cx.wedge_circles])
def test_size_zero_rejected(builder):
    with pytest.raises(ValueError):
        builder(0)


def test_flower_needs_two_petals():
    with pytest.raises(ValueError):
        cx.flower(3)


def test_flower_222_is_the_2322_graph():
    g = cx.flower(2, 2, 2)
    assert len(g.vertices) == 5  # 2 terminals + 3 petal midpoints
    assert len(g.edges) == 6
    assert g.degree("v") == 3 and g.degree("w") == 3


def test_complete_bipartite_33():
    g = cx.complete_bipartite(3, 3)
    assert len(g.vertices) == 6
    assert len(g.edges) == 9
    assert g.edge("t22").d0 == "v2" and g.edge("t22").d1 == "w2"


def test_wedge_one_equals_circle_one():
    assert cx.wedge_circles(1) == cx.circle(1)


# cone -----------------------------------------------------------------

def test_cone_of_single_edge_is_triangle():
    s = cx.cone(cx.line(1))
    assert len(s.triangles) == 1
    t = s.triangles[0]
    assert len({t.d0, t.d1, t.d2}) == 3


def test_cone_of_circle4_is_chsh(chsh):
    assert len(chsh.triangles) == 4
    assert len(chsh.edges) == 8


def test_cone_of_loop_identifies_two_slots(one_cycle):
    assert len(one_cycle.triangles) == 1
    assert len(one_cycle.edges) == 2
    t = one_cycle.triangles[0]
    assert t.d1 == t.d2


@pytest.mark.parametrize(
    "graph",
    [cx.circle(5), cx.flower(2, 2, 2), cx.complete_bipartite(2, 3), cx.wedge_circles(3)],
)
def test_cone_counts(graph):
    s = cx.cone(graph)
    assert len(s.triangles) == len(graph.edges)
    assert len(s.edges) == len(graph.edges) + len(graph.vertices)


def test_cone_apex_avoids_collision():
    g = Graph(("c", "d"), (Edge("e", "c", "d"),))
    s = cx.cone(g)
    assert s.apex not in g.vertices


# classical disks ------------------------------------------------------

def test_disk3_is_triangle():
    d = cx.classical_disk(3)
    assert len(d.scenario.triangles) == 1
    assert d.interior == ()


def test_disk4_is_diamond():
    d = cx.classical_disk(4)
    assert len(d.scenario.triangles) == 2
    assert d.interior == ("z1",)
    shared = set()
    for t in d.scenario.triangles:
        shared |= {t.d0, t.d1, t.d2} & set(d.interior)
    assert shared == {"z1"}


def test_disk6_shape():
    d = cx.classical_disk(6)
    assert len(d.scenario.triangles) == 4
    assert d.interior == ("z3", "z2", "z1")  # terminal-to-initial order


@pytest.mark.parametrize("n", range(3, 9))
def test_disk_boundary_is_a_circle(n):
    d = cx.classical_disk(n)
    assert len(d.boundary) == n
    assert cx.is_circle_graph(d.boundary_graph)


@pytest.mark.parametrize("n", range(4, 9))
def test_disk_initial_terminal_boundary_counts(n):
    d = cx.classical_disk(n)
    boundary = set(d.boundary)
    counts = [
        len({t.d0, t.d1, t.d2} & boundary) for t in d.scenario.triangles
    ]
    assert counts[0] == 2 and counts[-1] == 2
    assert all(c == 1 for c in counts[1:-1])


def test_disk_rejects_small():
    with pytest.raises(ValueError):
        cx.classical_disk(2)


# collapse -------------------------------------------------------------

def test_collapse_circle4_gives_circle3():
    cm = cx.collapse(cx.circle(4), ["t1"])
    assert cx.is_circle_graph(cm.target)
    assert len(cm.target.edges) == 3
    assert cm.edge_images["t1"] is None
    assert cm.vertex_images["v1"] == "v0"


def test_collapse_k33_edge():
    cm = cx.collapse(cx.complete_bipartite(3, 3), ["t22"])
    assert len(cm.target.vertices) == 5
    assert len(cm.target.edges) == 8
    assert cm.vertex_images["w2"] == "v2"  # smallest-id representative


def test_collapse_empty_is_identity():
    g = cx.circle(4)
    cm = cx.collapse(g, [])
    assert cm.target == g
    assert all(img == e for e, img in cm.edge_map)


def test_collapse_rejects_loop():
    with pytest.raises(cx.CollapseError):
        cx.collapse(cx.wedge_circles(2), ["t1"])


def test_collapse_rejects_circle_spanning_set():
    with pytest.raises(cx.CollapseError):
        cx.collapse(cx.circle(3), ["t1", "t2", "t3"])
    parallel = Graph(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "a", "b")))
    with pytest.raises(cx.CollapseError):
        cx.collapse(parallel, ["e1", "e2"])


def test_collapse_composition():
    g = cx.complete_bipartite(3, 3)
    both = cx.collapse(g, ["t00", "t11"])
    first = cx.collapse(g, ["t00"])
    second = cx.collapse(first.target, ["t11"])
    assert second.target == both.target
    composed = {v: second.vertex_images[first.vertex_images[v]] for v in g.vertices}
    assert composed == both.vertex_images


# spanning trees and circles -------------------------------------------

def test_cycle_rank_formulas():
    assert cx.cycle_rank(cx.complete_bipartite(3, 3)) == 4
    assert cx.cycle_rank(cx.circle(7)) == 1
    assert cx.cycle_rank(cx.wedge_circles(5)) == 5


@pytest.mark.parametrize(
    "graph", [cx.circle(5), cx.complete_bipartite(3, 3), cx.flower(2, 3, 1)]
)
def test_spanning_tree_quotient_is_a_wedge(graph):
    tree = cx.spanning_tree(graph)
    assert len(tree) == len(graph.vertices) - 1
    cm = cx.collapse(graph, tree)
    assert cx.cycle_rank(cm.target) == cx.cycle_rank(graph)
    assert len(cm.target.vertices) == 1
    assert all(e.is_loop for e in cm.target.edges)
    assert len(cm.target.edges) == cx.cycle_rank(graph)


def test_spanning_tree_disconnected_reports_components():
    g = Graph(("a", "b", "c"), (Edge("e", "a", "b"),))
    with pytest.raises(cx.DisconnectedGraphError) as err:
        cx.spanning_tree(g)
    assert len(err.value.components) == 2


def test_circles_of_flower():
    circles = cx.enumerate_circles(cx.flower(2, 2, 2))
    assert len(circles) == 3
    assert all(len(c) == 4 for c in circles)


def test_circles_of_circle_and_k22():
    assert len(cx.enumerate_circles(cx.circle(6))) == 1
    k22 = cx.enumerate_circles(cx.complete_bipartite(2, 2))
    assert len(k22) == 1
    assert len(k22[0]) == 4


def test_circles_of_k33():
    circles = cx.enumerate_circles(cx.complete_bipartite(3, 3))
    by_len = {}
    for c in circles:
        by_len[len(c)] = by_len.get(len(c), 0) + 1
    # K33 has 9 quadrilaterals and 6 hexagons
    assert by_len == {4: 9, 6: 6}


def test_circles_include_loops_and_parallel_pairs():
    assert cx.enumerate_circles(cx.wedge_circles(3)) == (("t1",), ("t2",), ("t3",))
    g = Graph(("a", "b"), tuple(Edge(f"e{i}", "a", "b") for i in range(3)))
    pairs = cx.enumerate_circles(g)
    assert pairs == (("e0", "e1"), ("e0", "e2"), ("e1", "e2"))


def test_augmented_flower_has_six_circles():
    # the base flower has C(3,2) = 3 circles; adding the two cone-side edges
    # (apex joined to both terminals) raises the count to C(4,2) = 6
    g = cx.flower(2, 2, 2)
    augmented = Graph(
        g.vertices + ("c",),
        g.edges + (Edge("cv", "v", "c"), Edge("cw", "w", "c")),
    )
    assert len(cx.enumerate_circles(g)) == 3
    assert len(cx.enumerate_circles(augmented)) == 6


def test_flower_petals_detection():
    assert cx.flower_petals(cx.flower(2, 1, 3)) is not None
    assert cx.flower_petals(cx.circle(4)) is None  # circles handled separately
    assert cx.flower_petals(cx.wedge_circles(2)) is None
    assert cx.flower_petals(cx.complete_bipartite(3, 3)) is None
