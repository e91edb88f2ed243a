"""Distributions in exact rational edge coordinates.

A distribution on a 2-dimensional scenario is determined by one rational
p_e in [0,1] per edge (the probability of outcome 0).  The four outcome
probabilities of a triangle with edge slots x, y, z are recovered as

    p(a,b) = (p_x^a + p_y^b - p_z^{a+b+1}) / 2        (indices mod 2)

with p_e^0 = p_e and p_e^1 = 1 - p_e; a repeated slot is simply evaluated
at the same edge value.  Everything here is a pure function of immutable
values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (
    GuardrailExceededError,
    InvalidDistributionError,
    NotAConeError,
    ScenarioMismatchError,
)
from .scenario import Graph, Scenario, Triangle

DEFAULT_ENUMERATION_LIMIT = 2**20

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def as_fraction(value) -> Fraction:
    """Accept Fraction, int, or 'num/den' strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class EdgeDistribution:
    """One rational value per edge of a graph or scenario.

    Construction checks only the [0,1] box and completeness; triangle
    nonnegativity is the job of validate(), so candidate points outside the
    distribution polytope can be represented and then rejected.
    """

    space: Graph | Scenario
    values: dict[str, Fraction]

    def __post_init__(self):
        fixed = {e: as_fraction(v) for e, v in self.values.items()}
        expected = set(self.space.edge_ids)
        if set(fixed) != expected:
            missing = sorted(expected - set(fixed))
            extra = sorted(set(fixed) - expected)
            raise ValueError(f"edge values mismatch (missing {missing}, extra {extra})")
        for e, v in fixed.items():
            if not (ZERO <= v <= ONE):
                raise ValueError(f"value for edge {e!r} outside [0,1]: {v}")
        object.__setattr__(self, "values", fixed)

    def __getitem__(self, edge: str) -> Fraction:
        return self.values[edge]

    def key(self) -> tuple[Fraction, ...]:
        return tuple(self.values[e] for e in self.space.edge_ids)

    def expectation(self, edge: str) -> Fraction:
        return 2 * self.values[edge] - 1

    @property
    def is_deterministic(self) -> bool:
        return all(v in (ZERO, ONE) for v in self.values.values())


@dataclass(frozen=True)
class TriangleTable:
    """Per-triangle outcome tables (p00, p01, p10, p11)."""

    tables: dict[str, tuple[Fraction, Fraction, Fraction, Fraction]]

    def __getitem__(self, triangle_id: str):
        return self.tables[triangle_id]

    def outcome(self, triangle_id: str, a: int, b: int) -> Fraction:
        return self.tables[triangle_id][2 * a + b]


class OutcomeAssignment:
    """Z2 edge labelling with even parity around every triangle."""

    __slots__ = ("space", "bits", "_key")

    def __init__(self, space: Scenario, bits: dict[str, int]):
        bits = {e: int(b) % 2 for e, b in bits.items()}
        if set(bits) != set(space.edge_ids):
            raise ValueError("bits must cover exactly the scenario edges")
        for t in space.triangles:
            if (bits[t.x] + bits[t.y] + bits[t.z]) % 2:
                raise ValueError(f"odd parity on triangle {t.id!r}")
        self.space = space
        self.bits = bits
        self._key = tuple(bits[e] for e in space.edge_ids)

    def key(self) -> tuple[int, ...]:
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, OutcomeAssignment)
            and self.space == other.space
            and self._key == other._key
        )

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"OutcomeAssignment({''.join(map(str, self._key))})"

    def to_distribution(self) -> EdgeDistribution:
        return EdgeDistribution(self.space, {e: ONE - b for e, b in self.bits.items()})


def _edge_outcome(values, edge: str, a: int) -> Fraction:
    v = values[edge]
    return v if a % 2 == 0 else ONE - v


def _raw_table(values, t: Triangle) -> tuple[Fraction, ...]:
    out = []
    for a in (0, 1):
        for b in (0, 1):
            out.append(
                (
                    _edge_outcome(values, t.x, a)
                    + _edge_outcome(values, t.y, b)
                    - _edge_outcome(values, t.z, a + b + 1)
                )
                / 2
            )
    return tuple(out)


def triangle_table(p: EdgeDistribution) -> TriangleTable:
    """Outcome tables of every triangle; raises on any negative entry."""
    s = p.space
    if not isinstance(s, Scenario):
        raise TypeError("triangle_table needs a scenario-backed distribution")
    tables = {}
    for t in s.triangles:
        table = _raw_table(p.values, t)
        for idx, entry in enumerate(table):
            if entry < 0:
                a, b = divmod(idx, 2)
                raise InvalidDistributionError(
                    f"triangle {t.id!r}, outcome ({a},{b}): probability {entry}"
                )
        tables[t.id] = table
    return TriangleTable(tables)


@dataclass(frozen=True)
class TriangleViolation:
    triangle: str
    outcome: tuple[int, int]
    value: Fraction


def validate(p: EdgeDistribution) -> list[TriangleViolation]:
    """Empty list iff p is a simplicial distribution on its scenario."""
    s = p.space
    if not isinstance(s, Scenario):
        return []
    violations = []
    for t in s.triangles:
        table = _raw_table(p.values, t)
        for idx, entry in enumerate(table):
            if entry < 0:
                a, b = divmod(idx, 2)
                violations.append(TriangleViolation(t.id, (a, b), entry))
    return violations


def is_valid(p: EdgeDistribution) -> bool:
    return not validate(p)


# ---------------------------------------------------------------------------
# deterministic distributions

def _parity_rows(s: Scenario) -> list[int]:
    index = {e: i for i, e in enumerate(s.edge_ids)}
    rows = []
    for t in s.triangles:
        mask = 0
        for slot in (t.x, t.y, t.z):
            mask ^= 1 << index[slot]
        if mask:
            rows.append(mask)
    return rows


@lru_cache(maxsize=None)
def deterministic_enumerate(
    s: Scenario, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> tuple[OutcomeAssignment, ...]:
    """All outcome assignments, via GF(2) elimination of the parity system.

    For a cone the boundary edges come first in edge order, so the cone
    edges end up as the free variables and the enumeration is indexed by
    cone-edge bits, matching the vertex-bit bijection for cones.
    """
    edges = s.edge_ids
    n = len(edges)
    rows = _parity_rows(s)

    pivots: dict[int, int] = {}  # column -> reduced row
    for row in rows:
        for col, prow in pivots.items():
            if row >> col & 1:
                row ^= prow
        if row == 0:
            continue
        col = (row & -row).bit_length() - 1
        for c, prow in list(pivots.items()):
            if prow >> col & 1:
                pivots[c] = prow ^ row
        pivots[col] = row

    free = [i for i in range(n) if i not in pivots]
    if len(free) > 60 or 2 ** len(free) > limit:
        raise GuardrailExceededError(
            "too many deterministic distributions; consider the circle-inequality method",
            required=2 ** len(free),
            limit=limit,
        )

    basis = []
    for f in free:
        v = 1 << f
        for col, row in pivots.items():
            if row >> f & 1:
                v |= 1 << col
        basis.append(v)

    out = []
    for k in range(2 ** len(free)):
        v = 0
        for i, b in enumerate(basis):
            if k >> i & 1:
                v ^= b
        bits = {e: (v >> i) & 1 for i, e in enumerate(edges)}
        out.append(OutcomeAssignment(s, bits))
    return tuple(out)


# ---------------------------------------------------------------------------
# monoid structure and group action

def _require_same_space(a, b):
    if a.space != b.space:
        raise ScenarioMismatchError("operands live on different spaces")


def _convolve(t1, t2) -> tuple[Fraction, ...]:
    out = [ZERO, ZERO, ZERO, ZERO]
    for i in range(4):
        a1, b1 = divmod(i, 2)
        for j in range(4):
            a2, b2 = divmod(j, 2)
            out[2 * ((a1 + a2) % 2) + (b1 + b2) % 2] += t1[i] * t2[j]
    return tuple(out)


def product(p: EdgeDistribution, q: EdgeDistribution) -> EdgeDistribution:
    """Monoid product: per edge, p*q + (1-p)*(1-q)."""
    _require_same_space(p, q)
    values = {
        e: p.values[e] * q.values[e] + (ONE - p.values[e]) * (ONE - q.values[e])
        for e in p.space.edge_ids
    }
    result = EdgeDistribution(p.space, values)
    if isinstance(p.space, Scenario):
        # cross-check: the induced tables are the outcome convolutions
        for t in p.space.triangles:
            assert _raw_table(result.values, t) == _convolve(
                _raw_table(p.values, t), _raw_table(q.values, t)
            )
    return result


def act(s: OutcomeAssignment, p: EdgeDistribution) -> EdgeDistribution:
    """Action of a deterministic distribution: flip the value where bit = 1."""
    _require_same_space(s, p)
    values = {
        e: p.values[e] if s.bits[e] == 0 else ONE - p.values[e]
        for e in p.space.edge_ids
    }
    return EdgeDistribution(p.space, values)


def orbit(group, p: EdgeDistribution) -> tuple[EdgeDistribution, ...]:
    """Distinct images of p under the given deterministic distributions."""
    seen = {}
    for s in group:
        q = act(s, p)
        seen.setdefault(q.key(), q)
    return tuple(seen[k] for k in sorted(seen))


def act_on_inequality(s: OutcomeAssignment, ineq):
    """Transport an inequality along the action: substitute 1 - x on flipped edges."""
    from .inequalities import LinearInequality

    coeffs = {}
    rhs = ineq.rhs
    for e, c in ineq.coeffs.items():
        if s.bits.get(e, 0) == 1:
            coeffs[e] = -c
            rhs -= c
        else:
            coeffs[e] = c
    return LinearInequality(coeffs, rhs, label=ineq.label).normalized()


def orbit_of_inequality(group, ineq) -> tuple:
    seen = {}
    for s in group:
        img = act_on_inequality(s, ineq)
        seen.setdefault(img.key(), img)
    return tuple(seen[k] for k in sorted(seen))


# ---------------------------------------------------------------------------
# the group G± on cone scenarios

def p_pm_element(s: Scenario, signs: dict[str, str]) -> EdgeDistribution:
    """Element of G±: every cone edge gets 1/2, boundary edge t gets 1 for '+', 0 for '-'.

    The triangle over t then carries the table p_+ or p_- accordingly.
    """
    if not s.is_cone:
        raise NotAConeError("p_pm_element needs a cone scenario")
    boundary = set(s.boundary_edge_ids)
    if set(signs) != boundary:
        raise ValueError("signs must cover exactly the boundary edges")
    values: dict[str, Fraction] = {}
    for e in boundary:
        sign = signs[e]
        if sign not in ("+", "-"):
            raise ValueError(f"bad sign {sign!r} for edge {e!r}")
        values[e] = ONE if sign == "+" else ZERO
    for v in s.cone_of.vertices:
        values[s.cone_edge(v)] = HALF
    return EdgeDistribution(s, values)


def g_pm_signs(p: EdgeDistribution) -> dict[str, str]:
    """Recover the sign pattern of a G± element, or raise ValueError."""
    s = p.space
    if not isinstance(s, Scenario) or not s.is_cone:
        raise NotAConeError("G± lives on cone scenarios")
    signs = {}
    for v in s.cone_of.vertices:
        if p.values[s.cone_edge(v)] != HALF:
            raise ValueError("not a G± element: cone edge value != 1/2")
    for e in s.boundary_edge_ids:
        v = p.values[e]
        if v == ONE:
            signs[e] = "+"
        elif v == ZERO:
            signs[e] = "-"
        else:
            raise ValueError("not a G± element: boundary value not 0/1")
    return signs


def g_pm_classify(p: EdgeDistribution) -> str:
    """'noncontextual' iff the minus pattern is a coboundary of the base graph.

    Equivalently the pattern sums to zero around every circle, i.e. p lies in
    the coset of deterministic translates of the all-plus element.
    """
    signs = g_pm_signs(p)
    g = p.space.cone_of
    pattern = {e.id: 1 if signs[e.id] == "-" else 0 for e in g.edges}
    potential: dict[str, int] = {}
    for root in g.vertices:
        if root in potential:
            continue
        potential[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            for e in g.incident(v):
                w = e.other(v)
                want = (potential[v] + pattern[e.id]) % 2
                if w not in potential:
                    potential[w] = want
                    queue.append(w)
                elif potential[w] != want:
                    return "contextual"
    return "noncontextual"


def restrict(p: EdgeDistribution, sub: Graph | Scenario) -> EdgeDistribution:
    """Restriction along an inclusion of measurement spaces."""
    parent_edges = set(p.space.edge_ids)
    sub_edges = set(sub.edge_ids)
    if not sub_edges <= parent_edges:
        raise ValueError(f"not an inclusion: extra edges {sorted(sub_edges - parent_edges)}")
    if isinstance(sub, Scenario) and isinstance(p.space, Scenario):
        parent_triangles = {(t.id, t.d0, t.d1, t.d2) for t in p.space.triangles}
        for t in sub.triangles:
            if (t.id, t.d0, t.d1, t.d2) not in parent_triangles:
                raise ValueError(f"not an inclusion: triangle {t.id!r} not in parent")
    return EdgeDistribution(sub, {e: p.values[e] for e in sub_edges})
