"""Exact Fourier-Motzkin elimination and the circle-inequality machinery.

Systems carry a coordinate mode: probability (edge values in [0,1]) or
expectation (values in [-1,1], via tbar = 2p - 1).  Eliminating a variable
combines every positive/negative coefficient pair; pruning then removes
duplicates and box-trivial rows, i.e. rows whose minimum over the coordinate
box already meets the bound.  Geometrically an elimination deletes an edge
from the measurement space.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations

from .distributions import EdgeDistribution, is_valid, restrict, validate
from .errors import UnsupportedShapeError
from .inequalities import LinearInequality, dedupe
from .scenario import (
    ClassicalDisk,
    Graph,
    Scenario,
    enumerate_circles,
    flower_petals,
    is_circle_graph,
    subgraph,
)

EXPECTATION = "expectation"
PROBABILITY = "probability"

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class InequalitySystem:
    mode: str
    variables: tuple[str, ...]
    rows: tuple[LinearInequality, ...]

    def __post_init__(self):
        if self.mode not in (EXPECTATION, PROBABILITY):
            raise ValueError(f"unknown mode {self.mode!r}")
        known = set(self.variables)
        for row in self.rows:
            stray = set(row.coeffs) - known
            if stray:
                raise ValueError(f"row uses unknown variables {sorted(stray)}")

    def row_keys(self) -> frozenset:
        return frozenset(r.key() for r in self.rows)

    def satisfied_by(self, values) -> bool:
        return all(r.satisfied_by(values) for r in self.rows)

    def violations(self, values) -> list[LinearInequality]:
        return [r for r in self.rows if not r.satisfied_by(values)]


def circle_inequalities(edges, mode: str = EXPECTATION) -> InequalitySystem:
    """The 2^(N-1) facets 0 <= N-2 + sum (-1)^{a_i} tbar_i, sum a_i = N+1 mod 2."""
    edges = tuple(edges)
    n = len(edges)
    if n < 1:
        raise ValueError("need at least one edge")
    rows = []
    for pattern in range(2**n):
        bits = [(pattern >> i) & 1 for i in range(n)]
        if sum(bits) % 2 != (n + 1) % 2:
            continue
        coeffs = {e: Fraction(-1 if b else 1) for e, b in zip(edges, bits)}
        label = f"{n}-circle:" + "".join(map(str, bits))
        rows.append(LinearInequality(coeffs, Fraction(-(n - 2)), label))
    system = InequalitySystem(EXPECTATION, edges, tuple(rows))
    return system if mode == EXPECTATION else to_probability(system)


def _convert_row(row: LinearInequality, to_mode: str) -> LinearInequality:
    # x = (tbar + 1)/2 exactly; both directions scale coefficients by 2
    # and shift the bound by the coefficient sum.
    total = sum(row.coeffs.values(), ZERO)
    if to_mode == PROBABILITY:
        coeffs = {e: c for e, c in row.coeffs.items()}
        rhs = (row.rhs + total) / 2
    else:
        coeffs = {e: c / 2 for e, c in row.coeffs.items()}
        rhs = row.rhs - total / 2
    return LinearInequality(coeffs, rhs, row.label).normalized()


def to_probability(system: InequalitySystem) -> InequalitySystem:
    if system.mode == PROBABILITY:
        return system
    rows = tuple(_convert_row(r, PROBABILITY) for r in system.rows)
    return InequalitySystem(PROBABILITY, system.variables, rows)


def to_expectation(system: InequalitySystem) -> InequalitySystem:
    if system.mode == EXPECTATION:
        return system
    rows = tuple(_convert_row(r, EXPECTATION) for r in system.rows)
    return InequalitySystem(EXPECTATION, system.variables, rows)


def box_minimum(row: LinearInequality, mode: str) -> Fraction:
    """Minimum of the row's left-hand side over the coordinate box."""
    lo, hi = (-ONE, ONE) if mode == EXPECTATION else (ZERO, ONE)
    return sum((c * (lo if c > 0 else hi) for c in row.coeffs.values()), ZERO)


def is_box_trivial(row: LinearInequality, mode: str) -> bool:
    return box_minimum(row, mode) >= row.rhs


def prune(system: InequalitySystem) -> InequalitySystem:
    """Drop duplicate rows and rows implied by the coordinate box alone."""
    kept = [r for r in dedupe(system.rows) if not is_box_trivial(r, system.mode)]
    return InequalitySystem(system.mode, system.variables, tuple(kept))


@dataclass(frozen=True)
class EliminationStep:
    """Bounds on one eliminated variable, for later back-substitution.

    Rows in `lower` are scaled so the variable's coefficient is +1 (v >= rhs
    - rest); rows in `upper` have coefficient -1 (v <= rest - rhs).
    """

    variable: str
    lower: tuple[LinearInequality, ...]
    upper: tuple[LinearInequality, ...]

    def interval(self, values) -> tuple[Fraction | None, Fraction | None]:
        lo = None
        for r in self.lower:
            rest = sum((c * values[e] for e, c in r.coeffs.items() if e != self.variable), ZERO)
            bound = r.rhs - rest
            lo = bound if lo is None or bound > lo else lo
        hi = None
        for r in self.upper:
            rest = sum((c * values[e] for e, c in r.coeffs.items() if e != self.variable), ZERO)
            bound = rest - r.rhs
            hi = bound if hi is None or bound < hi else hi
        return lo, hi


def eliminate_variable(
    system: InequalitySystem, variable: str, trace: list | None = None
) -> InequalitySystem:
    """Project the system along one variable; the result is pruned."""
    if variable not in system.variables:
        raise ValueError(f"unknown variable {variable!r}")
    zero, pos, neg = [], [], []
    for row in system.rows:
        c = row.coeffs.get(variable, ZERO)
        if c == 0:
            zero.append(row)
        elif c > 0:
            pos.append(row.scaled(1 / c))
        else:
            neg.append(row.scaled(-1 / c))
    if trace is not None:
        trace.append(EliminationStep(variable, tuple(pos), tuple(neg)))
    new_rows = list(zero)
    for r_pos in pos:
        for r_neg in neg:
            new_rows.append(r_pos.plus(r_neg))
    variables = tuple(v for v in system.variables if v != variable)
    return prune(InequalitySystem(system.mode, variables, tuple(new_rows)))


def eliminate_variables(
    system: InequalitySystem, variables, trace: list | None = None
) -> InequalitySystem:
    for v in variables:
        system = eliminate_variable(system, v, trace)
    return system


# ---------------------------------------------------------------------------
# disks and bouquets

def disk_system(disk: ClassicalDisk) -> InequalitySystem:
    """Triangle nonnegativity rows of the disk, in expectation coordinates."""
    from .polytope import h_representation

    h = h_representation(disk.scenario)
    system = InequalitySystem(PROBABILITY, disk.scenario.edges, h.rows)
    return to_expectation(system)


@dataclass(frozen=True)
class ExtensionResult:
    extension: EdgeDistribution | None
    violations: tuple[LinearInequality, ...]

    @property
    def extends(self) -> bool:
        return self.extension is not None


def extend_from_boundary(
    disk: ClassicalDisk, boundary_values: EdgeDistribution
) -> ExtensionResult:
    """Extend boundary values across the disk, or report the violated rows.

    Interior edges are eliminated terminal-to-initial; when the boundary
    system (the N-circle inequalities) is satisfied, back-substitution in
    reverse order gives each interior edge the midpoint of its feasible
    interval.
    """
    if set(boundary_values.space.edge_ids) != set(disk.boundary):
        raise ValueError("boundary values must cover exactly the boundary circle")

    trace: list[EliminationStep] = []
    system = eliminate_variables(disk_system(disk), disk.interior, trace)

    exps = {e: boundary_values.expectation(e) for e in disk.boundary}
    violated = system.violations(exps)
    if violated:
        return ExtensionResult(None, tuple(violated))

    for step in reversed(trace):
        lo, hi = step.interval(exps)
        lo = -ONE if lo is None else max(lo, -ONE)
        hi = ONE if hi is None else min(hi, ONE)
        assert lo <= hi, "back-substitution interval must be nonempty"
        exps[step.variable] = (lo + hi) / 2

    values = {e: (x + 1) / 2 for e, x in exps.items()}
    extension = EdgeDistribution(disk.scenario, values)
    assert is_valid(extension)
    return ExtensionResult(extension, ())


def relabel_disk_edges(disk: ClassicalDisk, mapping: dict[str, str]) -> ClassicalDisk:
    """Rename edges of a disk (for gluing disks along a common edge)."""
    from dataclasses import replace as _replace
    from .scenario import Triangle as _Triangle

    def m(e: str) -> str:
        return mapping.get(e, e)

    s = disk.scenario
    scenario = Scenario(
        tuple(m(e) for e in s.edges),
        tuple(_Triangle(t.id, d0=m(t.d0), d1=m(t.d1), d2=m(t.d2)) for t in s.triangles),
        tuple((m(e), a, b) for e, a, b in s.edge_faces),
    )
    return ClassicalDisk(
        scenario,
        tuple(m(e) for e in disk.boundary),
        tuple(m(e) for e in disk.interior),
    )


def bouquet_of_disks(sizes, shared_edge: str = "shared"):
    """Canonical disks glued along one edge: disk i is prefixed p{i}_ and its
    initial boundary edge t1 is renamed to the shared id."""
    from .scenario import classical_disk

    disks = []
    for i, n in enumerate(sizes, start=1):
        prefix = f"p{i}_"
        disks.append(
            relabel_disk_edges(classical_disk(n, prefix), {f"{prefix}t1": shared_edge})
        )
    return disks, shared_edge


@dataclass(frozen=True)
class BouquetResult:
    ok: bool
    checked: tuple[tuple[str, ...], ...]  # composite circles, as edge tuples
    violations: tuple[tuple[tuple[str, ...], LinearInequality], ...]


def check_extension_bouquet(disks, shared_edge: str, boundary_values) -> BouquetResult:
    """Extendability over disks glued along one common edge.

    The boundary of the bouquet decomposes into one circle per pair of
    disks, of size N_i + N_j - 2; the verdict is that every such circle's
    inequality set holds on the boundary values (an EdgeDistribution on the
    bouquet boundary, or a plain edge -> value mapping).
    """
    disks = list(disks)
    if len(disks) < 2:
        raise ValueError("a bouquet needs at least two disks")
    arcs = []
    seen_edges: set[str] = set()
    for d in disks:
        if shared_edge not in d.boundary:
            raise ValueError(f"shared edge {shared_edge!r} not on a disk boundary")
        initial = {d.initial_triangle.x, d.initial_triangle.y, d.initial_triangle.z}
        if shared_edge not in initial:
            raise ValueError(
                f"shared edge {shared_edge!r} must bound the initial triangle"
            )
        arc = tuple(e for e in d.boundary if e != shared_edge)
        overlap = seen_edges & set(arc)
        if overlap:
            raise ValueError(f"disks overlap outside the shared edge: {sorted(overlap)}")
        seen_edges.update(arc)
        arcs.append(arc)

    expected = seen_edges
    raw = (
        boundary_values.values
        if isinstance(boundary_values, EdgeDistribution)
        else dict(boundary_values)
    )
    if set(raw) != expected:
        raise ValueError("boundary values must cover exactly the bouquet boundary")
    if any(not (ZERO <= v <= ONE) for v in raw.values()):
        raise ValueError("boundary values must lie in [0,1]")

    exps = {e: 2 * v - 1 for e, v in raw.items()}
    checked = []
    violations = []
    for arc_a, arc_b in combinations(arcs, 2):
        circle_edges = arc_a + arc_b
        checked.append(circle_edges)
        for row in circle_inequalities(circle_edges).rows:
            if not row.satisfied_by(exps):
                violations.append((circle_edges, row))
    return BouquetResult(not violations, tuple(checked), tuple(violations))


# ---------------------------------------------------------------------------
# Fine's criterion on cycle and flower scenarios

@dataclass(frozen=True)
class FineResult:
    verdict: str  # "noncontextual" | "contextual"
    witness_circle: tuple[str, ...] | None = None
    witness_row: LinearInequality | None = None

    @property
    def is_noncontextual(self) -> bool:
        return self.verdict == "noncontextual"


def fine_check_flower(p: EdgeDistribution) -> FineResult:
    """Circle-inequality contextuality test for cones of circles and flowers.

    Noncontextual iff the restriction to every circle of the base graph
    satisfies that circle's inequalities; the first violation is returned as
    a witness.  Any other base shape is rejected in favour of the LP method.
    """
    s = p.space
    if not isinstance(s, Scenario) or not s.is_cone:
        raise UnsupportedShapeError("need a distribution on a cone scenario")
    g = s.cone_of
    if not (is_circle_graph(g) or flower_petals(g) is not None):
        raise UnsupportedShapeError(
            "base graph is neither a circle nor a flower; use the LP method"
        )
    bad = validate(p)
    if bad:
        raise ValueError(f"not a simplicial distribution: {bad[0]}")
    for circle_edges in enumerate_circles(g):
        values = restrict(p, subgraph(g, circle_edges))
        exps = {e: values.expectation(e) for e in circle_edges}
        for row in circle_inequalities(circle_edges).rows:
            if not row.satisfied_by(exps):
                return FineResult("contextual", circle_edges, row)
    return FineResult("noncontextual")
