"""The distribution polytope: H-representation, vertices, and contextuality.

P(A,b) = {x : Ax >= b} where the rows are the nonnegativity constraints of
the four outcome probabilities of every triangle, written in edge
coordinates.  Membership in the convex hull of deterministic distributions
is decided by an exact phase-I simplex; infeasibility yields a Farkas row,
i.e. a violated Bell inequality.  Vertices are enumerated by the double
description method starting from a bounding simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .distributions import (
    DEFAULT_ENUMERATION_LIMIT,
    EdgeDistribution,
    OutcomeAssignment,
    deterministic_enumerate,
    is_valid,
    triangle_table,
)
from .errors import GuardrailExceededError
from .inequalities import LinearInequality
from .scenario import Scenario

ZERO = Fraction(0)
ONE = Fraction(1)

DD_MAX_EDGES = 12


@dataclass(frozen=True)
class HRep:
    scenario: Scenario
    rows: tuple[LinearInequality, ...]


def h_representation(s: Scenario) -> HRep:
    """One row per (triangle, outcome pair): the outcome probability is >= 0.

    For outcome (a,b) the row is (-1)^a x + (-1)^b y + (-1)^{a+b} z >= c-a-b
    with c = (a+b+1) mod 2; coefficients on a repeated slot are summed.
    """
    rows = []
    for t in s.triangles:
        for a in (0, 1):
            for b in (0, 1):
                coeffs: dict[str, Fraction] = {}
                for slot, sign in ((t.x, (-1) ** a), (t.y, (-1) ** b), (t.z, (-1) ** (a + b))):
                    coeffs[slot] = coeffs.get(slot, ZERO) + sign
                c = (a + b + 1) % 2
                rows.append(
                    LinearInequality(coeffs, Fraction(c - a - b), f"({t.id},{a}{b})")
                )
    return HRep(s, tuple(rows))


def tight_set(h: HRep, p: EdgeDistribution) -> tuple[int, ...]:
    return tuple(
        i for i, row in enumerate(h.rows) if row.evaluate(p.values) == row.rhs
    )


def exact_rank(matrix: list[list[Fraction]]) -> int:
    """Rank over Q by fraction-free (Bareiss-style) elimination."""
    m = [row[:] for row in matrix]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = ONE
    for col in range(cols):
        pivot_row = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        piv = m[rank][col]
        for r in range(rank + 1, rows):
            factor = m[r][col]
            m[r] = [(piv * v - factor * w) / prev for v, w in zip(m[r], m[rank])]
        prev = piv
        rank += 1
        if rank == rows:
            break
    return rank


def _tight_matrix(h: HRep, p: EdgeDistribution, tight):
    order = h.scenario.edges
    return [
        [h.rows[i].coeffs.get(e, ZERO) for e in order]
        for i in tight
    ]


def rank_of(h: HRep, p: EdgeDistribution) -> int:
    return exact_rank(_tight_matrix(h, p, tight_set(h, p)))


def is_vertex(h: HRep, p: EdgeDistribution) -> bool:
    return is_valid(p) and rank_of(h, p) == len(h.scenario.edges)


# ---------------------------------------------------------------------------
# contextuality via exact LP

@dataclass(frozen=True)
class ContextualityCertificate:
    verdict: str  # "noncontextual" | "contextual"
    mixture: dict[OutcomeAssignment, Fraction] | None = None
    separating: LinearInequality | None = None

    @property
    def is_noncontextual(self) -> bool:
        return self.verdict == "noncontextual"


def is_noncontextual_lp(
    p: EdgeDistribution, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> ContextualityCertificate:
    """Decide hull membership of the edge values among deterministic points.

    Feasibility of  sum_s d(s) = 1,  sum_{s: s(e)=0} d(s) = p_e,  d >= 0  is
    decided exactly; a feasible point is returned as a replayable mixture,
    an infeasible one as a separating Bell inequality from the Farkas row.
    """
    from .simplex import solve_feasibility

    s = p.space
    if not isinstance(s, Scenario):
        raise TypeError("contextuality is decided on scenario-backed distributions")
    assignments = deterministic_enumerate(s, limit)
    edges = s.edges

    matrix = [[ONE] * len(assignments)]
    rhs = [ONE]
    for e in edges:
        matrix.append([ONE if a.bits[e] == 0 else ZERO for a in assignments])
        rhs.append(p.values[e])

    result = solve_feasibility(matrix, rhs)
    if result.feasible:
        mixture = {assignments[j]: w for j, w in sorted(result.solution.items())}
        assert sum(mixture.values()) == 1
        for i, e in enumerate(edges):
            total = sum((w for a, w in mixture.items() if a.bits[e] == 0), ZERO)
            assert total == p.values[e], f"mixture fails to reproduce edge {e!r}"
        return ContextualityCertificate("noncontextual", mixture=mixture)

    y = result.farkas
    separating = LinearInequality(
        {e: -y[1 + i] for i, e in enumerate(edges)}, y[0], label="farkas"
    ).normalized()
    for a in assignments:
        assert separating.satisfied_by(a.to_distribution().values)
    assert separating.evaluate(p.values) < separating.rhs
    return ContextualityCertificate("contextual", separating=separating)


def support(
    p: EdgeDistribution, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> tuple[OutcomeAssignment, ...]:
    """Assignments with positive probability on every simplex of p."""
    s = p.space
    tables = triangle_table(p)
    assignments = deterministic_enumerate(s, limit)
    in_triangle = {e for t in s.triangles for e in (t.x, t.y, t.z)}
    stray_edges = [e for e in s.edges if e not in in_triangle]
    out = []
    for a in assignments:
        ok = all(
            tables.outcome(t.id, a.bits[t.x], a.bits[t.y]) > 0 for t in s.triangles
        )
        if ok and stray_edges:
            ok = all(
                (p.values[e] if a.bits[e] == 0 else ONE - p.values[e]) > 0
                for e in stray_edges
            )
        if ok:
            out.append(a)
    return tuple(out)


def is_strongly_contextual(p: EdgeDistribution, limit: int = DEFAULT_ENUMERATION_LIMIT) -> bool:
    return not support(p, limit)


# ---------------------------------------------------------------------------
# vertex enumeration (double description)

@dataclass(frozen=True)
class VertexEnumeration:
    scenario: Scenario
    vertices: tuple[EdgeDistribution, ...]
    tight_sets: tuple[tuple[int, ...], ...]  # row indices into the HRep
    adjacency: tuple[tuple[int, int], ...] | None = None


def enumerate_vertices(
    s: Scenario, adjacency: bool = False, max_edges: int = DD_MAX_EDGES
) -> VertexEnumeration:
    """All vertices of the distribution polytope, exactly.

    Double description: start from a bounding simplex (the polytope lives in
    the unit box), insert the H-representation rows in order, and maintain
    the exact vertex set; candidate edges are screened by Fukuda's
    combinatorial adjacency test on tight-set bitmasks.
    """
    d = len(s.edges)
    if d > max_edges:
        raise GuardrailExceededError(
            "vertex enumeration is exponential in the edge count",
            required=d,
            limit=max_edges,
        )
    in_triangle = {e for t in s.triangles for e in (t.x, t.y, t.z)}
    stray = [e for e in s.edges if e not in in_triangle]
    if stray:
        raise ValueError(f"polytope unbounded: edges outside every triangle: {stray}")
    h = h_representation(s)
    order = s.edges

    # bounding simplex x_i >= 0, sum x_i <= d+1, as (coeff vector, rhs) rows
    base_rows: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for i in range(d):
        base_rows.append((tuple(ONE if j == i else ZERO for j in range(d)), ZERO))
    base_rows.append((tuple(-ONE for _ in range(d)), Fraction(-(d + 1))))
    for row in h.rows:
        base_rows.append((tuple(row.coeffs.get(e, ZERO) for e in order), row.rhs))

    origin = tuple(ZERO for _ in range(d))
    apexes = [
        tuple(Fraction(d + 1) if j == i else ZERO for j in range(d)) for i in range(d)
    ]
    points: list[tuple[Fraction, ...]] = [origin, *apexes]

    n_base = d + 1

    def tight_mask(point, upto: int) -> int:
        mask = 0
        for i in range(upto):
            coeffs, rhs = base_rows[i]
            if sum((c * x for c, x in zip(coeffs, point)), ZERO) == rhs:
                mask |= 1 << i
        return mask

    masks = [tight_mask(pt, n_base) for pt in points]

    for step in range(n_base, len(base_rows)):
        coeffs, rhs = base_rows[step]
        slack = [
            sum((c * x for c, x in zip(coeffs, pt)), ZERO) - rhs for pt in points
        ]
        keep_idx = [i for i, sl in enumerate(slack) if sl >= 0]
        cut_idx = [i for i, sl in enumerate(slack) if sl < 0]
        if not cut_idx:
            points = [points[i] for i in keep_idx]
            masks = [
                masks[i] | (1 << step) if slack[i] == 0 else masks[i] for i in keep_idx
            ]
            continue
        plus_idx = [i for i in keep_idx if slack[i] > 0]
        new_points: dict[tuple, int] = {}
        for i in plus_idx:
            for j in cut_idx:
                common = masks[i] & masks[j]
                if common.bit_count() < d - 1:
                    continue
                if any(
                    k not in (i, j) and common & masks[k] == common
                    for k in range(len(points))
                ):
                    continue
                t = slack[i] / (slack[i] - slack[j])
                pt = tuple(
                    a + t * (b - a) for a, b in zip(points[i], points[j])
                )
                new_points.setdefault(pt, step)
        survivors = [points[i] for i in keep_idx]
        survivor_masks = [
            masks[i] | (1 << step) if slack[i] == 0 else masks[i] for i in keep_idx
        ]
        for pt in new_points:
            survivors.append(pt)
            survivor_masks.append(tight_mask(pt, step + 1))
        points, masks = survivors, survivor_masks

    assert points, "distribution polytope is never empty"

    decorated = sorted(points)
    vertices = tuple(
        EdgeDistribution(s, dict(zip(order, pt))) for pt in decorated
    )
    tights = tuple(tight_set(h, v) for v in vertices)
    for v, t in zip(vertices, tights):
        assert exact_rank(_tight_matrix(h, v, t)) == d

    pairs = None
    if adjacency:
        pairs = []
        for i in range(len(vertices)):
            set_i = set(tights[i])
            for j in range(i + 1, len(vertices)):
                common = [r for r in tights[j] if r in set_i]
                if len(common) < d - 1:
                    continue
                sub = _tight_matrix(h, vertices[i], common)
                if exact_rank(sub) == d - 1:
                    pairs.append((i, j))
        pairs = tuple(pairs)

    return VertexEnumeration(s, vertices, tights, pairs)
