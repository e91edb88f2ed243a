"""Transport along collapsing maps: distributions, Bell inequalities, vertices.

Collapsing a forest of base-graph edges induces an injection of
distributions in the opposite direction: a collapsed boundary edge becomes
deterministic on outcome 0 (value 1) and a split cone edge copies the merged
cone edge's value.  The same substitution, read on inequalities, derives
Bell inequalities for the collapsed scenario from known ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .distributions import (
    EdgeDistribution,
    act,
    deterministic_enumerate,
    is_valid,
    p_pm_element,
)
from .errors import GuardrailExceededError, UnsupportedShapeError
from .fm import fine_check_flower
from .inequalities import LinearInequality
from .polytope import h_representation, is_noncontextual_lp, is_vertex
from .scenario import (
    CollapseMap,
    Graph,
    Scenario,
    collapse,
    cone,
    cycle_rank,
    flower_petals,
    is_circle_graph,
    spanning_tree,
)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

GENERATION_GUARDRAIL = 2**16


@dataclass(frozen=True)
class ConePushforward:
    """The map (Cone pi)* induced on cone scenarios by a graph collapse."""

    base: CollapseMap

    @cached_property
    def source_scenario(self) -> Scenario:
        return cone(self.base.source)

    @cached_property
    def target_scenario(self) -> Scenario:
        return cone(self.base.target)

    def distribution(self, p: EdgeDistribution) -> EdgeDistribution:
        """Extend p on the collapsed cone to the original cone.

        Collapsed boundary edges get value 1 (the collapsed table has
        p00 = b, p10 = 1-b, zeros elsewhere); every cone edge copies the
        merged vertex's cone edge.
        """
        src, tgt = self.source_scenario, self.target_scenario
        if p.space != tgt:
            raise ValueError("distribution does not live on the collapsed cone")
        if not is_valid(p):
            raise ValueError("input distribution is not valid")
        images = self.base.edge_images
        vmap = self.base.vertex_images
        values: dict[str, Fraction] = {}
        for e in self.base.source.edge_ids:
            img = images[e]
            values[e] = ONE if img is None else p.values[img]
        for v in self.base.source.vertices:
            values[src.cone_edge(v)] = p.values[tgt.cone_edge(vmap[v])]
        q = EdgeDistribution(src, values)
        assert is_valid(q)
        return q

    def inequality(self, ineq: LinearInequality) -> LinearInequality:
        """Substitute the pushforward relations into a source-cone inequality.

        Probability mode: collapsed boundary edges are fixed at 1, split cone
        edges merge their coefficients onto the target cone edge.
        """
        src, tgt = self.source_scenario, self.target_scenario
        images = self.base.edge_images
        vmap = self.base.vertex_images
        out = ineq
        for e in self.base.collapsed_edges:
            out = out.substitute(e, ONE)
        renaming = {
            src.cone_edge(v): tgt.cone_edge(vmap[v]) for v in self.base.source.vertices
        }
        renaming.update({e: img for e, img in images.items() if img is not None})
        return out.rename(renaming).normalized()


def pushforward_distribution(cm: CollapseMap, p: EdgeDistribution) -> EdgeDistribution:
    return ConePushforward(cm).distribution(p)


def pushforward_inequality(cm: CollapseMap, ineq: LinearInequality) -> LinearInequality:
    return ConePushforward(cm).inequality(ineq)


# ---------------------------------------------------------------------------
# PR boxes

def pr_box(n: int, signs) -> EdgeDistribution:
    """PR box on the n-cycle scenario: p_+/p_- per triangle, odd number of p_-."""
    from .scenario import circle

    signs = tuple(signs)
    if len(signs) != n:
        raise ValueError(f"need {n} signs")
    if any(x not in "+-" for x in signs):
        raise ValueError("signs must be '+' or '-'")
    if signs.count("-") % 2 != 1:
        raise ValueError("a PR box needs an odd number of minus signs")
    s = cone(circle(n))
    return p_pm_element(s, dict(zip(s.boundary_edge_ids, signs)))


def is_pr_box(p: EdgeDistribution) -> bool:
    """True iff p has p_+/p_- tables over a circle's cone with odd minus count."""
    s = p.space
    if not isinstance(s, Scenario) or not s.is_cone or not is_circle_graph(s.cone_of):
        return False
    for v in s.cone_of.vertices:
        if p.values[s.cone_edge(v)] != HALF:
            return False
    minus = 0
    for e in s.boundary_edge_ids:
        if p.values[e] == ZERO:
            minus += 1
        elif p.values[e] != ONE:
            return False
    return minus % 2 == 1


# ---------------------------------------------------------------------------
# contextual vertex generation

def generate_contextual_vertices(
    g: Graph,
    guardrail: int = GENERATION_GUARDRAIL,
    contextuality_checks: int | None = None,
) -> tuple[EdgeDistribution, ...]:
    """All (2^n - 1) * 2^(|V|-1) contextual vertices of G± type on cone(g).

    Pipeline: collapse a spanning tree to a wedge of circles, push the
    contextual wedge vertices forward, close under the deterministic action.
    Every output is rank-certified as a vertex; contextuality is certified by
    the circle method when the graph supports it and by LP otherwise
    (spot-checked when contextuality_checks bounds the count).
    """
    if not g.is_connected:
        raise ValueError("vertex generation needs a connected graph")
    n = cycle_rank(g)
    expected = (2**n - 1) * 2 ** (len(g.vertices) - 1)
    if expected > guardrail:
        raise GuardrailExceededError(
            "contextual vertex generation", required=expected, limit=guardrail
        )

    tree = spanning_tree(g)
    cm = collapse(g, tree)
    push = ConePushforward(cm)
    wedge_cone = push.target_scenario
    loops = cm.target.edge_ids
    assert len(loops) == n and len(cm.target.vertices) == 1

    seeds = []
    for pattern in range(1, 2**n):
        signs = {
            e: "-" if (pattern >> i) & 1 else "+" for i, e in enumerate(loops)
        }
        seeds.append(push.distribution(p_pm_element(wedge_cone, signs)))

    cone_g = push.source_scenario
    group = deterministic_enumerate(cone_g)
    found: dict[tuple, EdgeDistribution] = {}
    for seed in seeds:
        for s in group:
            q = act(s, seed)
            found.setdefault(q.key(), q)
    assert len(found) == expected
    vertices = tuple(found[k] for k in sorted(found))

    h = h_representation(cone_g)
    use_circles = is_circle_graph(g) or flower_petals(g) is not None
    to_check = (
        range(len(vertices))
        if contextuality_checks is None
        else range(0, len(vertices), max(1, len(vertices) // contextuality_checks))
    )
    check_set = set(to_check)
    for i, v in enumerate(vertices):
        if not is_vertex(h, v):
            raise AssertionError("generated distribution failed the vertex rank test")
        if i in check_set:
            if use_circles:
                contextual = not fine_check_flower(v).is_noncontextual
            else:
                contextual = not is_noncontextual_lp(v).is_noncontextual
            if not contextual:
                raise AssertionError("generated distribution is not contextual")
    return vertices


# ---------------------------------------------------------------------------
# experimental probe

def loop_support_check(ineq: LinearInequality, g: Graph) -> bool:
    """Do the base-graph edges carried by the inequality form a closed walk?

    Operationalized as: the support subgraph is connected and every one of
    its vertices has even degree (a loop contributes two).
    """
    support = [g.edge(e) for e in g.edge_ids if ineq.coeffs.get(e, ZERO) != 0]
    if not support:
        return False
    degree: dict[str, int] = {}
    for e in support:
        degree[e.d0] = degree.get(e.d0, 0) + 1
        degree[e.d1] = degree.get(e.d1, 0) + 1
    if any(d % 2 for d in degree.values()):
        return False
    vertices = list(degree)
    adjacency = {v: set() for v in vertices}
    for e in support:
        adjacency[e.d0].add(e.d1)
        adjacency[e.d1].add(e.d0)
    seen = {vertices[0]}
    queue = [vertices[0]]
    while queue:
        v = queue.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(vertices)
