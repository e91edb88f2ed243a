import random
from fractions import Fraction as F
from itertools import product as iproduct

import pytest

import ctxlab as cx
from ctxlab.fm import EXPECTATION, PROBABILITY, InequalitySystem, box_minimum, disk_system
from conftest import deterministic_points, random_mixture


def test_circle_set_sizes():
    for n in (1, 2, 3, 4, 5, 6):
        system = cx.circle_inequalities([f"t{i}" for i in range(1, n + 1)])
        assert len(system.rows) == 2 ** (n - 1)
        for row in system.rows:
            minus = sum(1 for c in row.coeffs.values() if c < 0)
            assert minus % 2 == (n + 1) % 2
            assert row.rhs == -(n - 2)


def test_one_circle_inequality_pins_the_loop():
    system = cx.circle_inequalities(["t1"])
    assert [r.key() for r in system.rows] == [cx.LinearInequality({"t1": 1}, 1).key()]


def test_three_circle_set_is_the_triangle_hrep(triangle_scenario):
    h = cx.h_representation(triangle_scenario)
    triangle_rows = cx.to_expectation(
        InequalitySystem(PROBABILITY, triangle_scenario.edges, h.rows)
    )
    circle = cx.circle_inequalities(["t1", "t2", "t3"])
    assert triangle_rows.row_keys() == circle.row_keys()


CHSH_PROBABILITY_ROWS = [
    ({"t1": 1, "t2": 1, "t3": 1, "t4": -1}, 0),
    ({"t1": -1, "t2": -1, "t3": -1, "t4": 1}, -2),
    ({"t1": 1, "t2": 1, "t3": -1, "t4": 1}, 0),
    ({"t1": -1, "t2": -1, "t3": 1, "t4": -1}, -2),
    ({"t1": 1, "t2": -1, "t3": 1, "t4": 1}, 0),
    ({"t1": -1, "t2": 1, "t3": -1, "t4": -1}, -2),
    ({"t1": -1, "t2": 1, "t3": 1, "t4": 1}, 0),
    ({"t1": 1, "t2": -1, "t3": -1, "t4": -1}, -2),
]


def test_four_circle_set_is_chsh_in_probability_mode():
    system = cx.to_probability(cx.circle_inequalities(["t1", "t2", "t3", "t4"]))
    expected = {cx.LinearInequality(c, r).key() for c, r in CHSH_PROBABILITY_ROWS}
    assert system.row_keys() == expected


def test_mode_conversion_round_trip():
    system = cx.circle_inequalities(["a", "b", "c", "d", "e"])
    back = cx.to_expectation(cx.to_probability(system))
    assert back.row_keys() == system.row_keys()


# elimination ------------------------------------------------------------

def test_diamond_elimination_gives_chsh():
    disk = cx.classical_disk(4)
    system = disk_system(disk)
    assert len(system.rows) == 8
    result = cx.eliminate_variables(system, disk.interior)
    assert result.row_keys() == cx.circle_inequalities(["t1", "t2", "t3", "t4"]).row_keys()


def test_same_set_elimination_leaves_nothing():
    system = cx.circle_inequalities(["z", "a1", "a2", "a3"])
    result = cx.eliminate_variable(system, "z")
    assert result.rows == ()


def test_combining_two_triangles():
    joint = InequalitySystem(
        EXPECTATION,
        ("z", "a1", "a2", "b1", "b2"),
        cx.circle_inequalities(["z", "a1", "a2"]).rows
        + cx.circle_inequalities(["z", "b1", "b2"]).rows,
    )
    result = cx.eliminate_variable(joint, "z")
    assert result.row_keys() == cx.circle_inequalities(["a1", "a2", "b1", "b2"]).row_keys()


def test_elimination_keeps_zero_coefficient_rows():
    rows = (
        cx.LinearInequality({"x": 1, "y": 1}, -1),
        cx.LinearInequality({"x": -1, "y": 1}, -1),
        cx.LinearInequality({"y": 1}, 0),
    )
    system = InequalitySystem(EXPECTATION, ("x", "y"), rows)
    result = cx.eliminate_variable(system, "x")
    # the y-only row is carried over; the combination 2y >= -2 is box-trivial
    assert result.row_keys() == {cx.LinearInequality({"y": 1}, 0).key()}


# pruning ----------------------------------------------------------------

def test_prune_drops_box_implied_rows():
    rows = (
        cx.LinearInequality({"t1": 1, "t2": 1}, -2),  # min -2: box-trivial
        cx.LinearInequality({"t1": 1}, -1),  # the box bound itself
        cx.LinearInequality({"t1": 1, "t2": 1, "t3": 1, "t4": -1}, -2),  # CHSH: kept
    )
    system = InequalitySystem(EXPECTATION, ("t1", "t2", "t3", "t4"), rows)
    result = cx.prune(system)
    assert [r.key() for r in result.rows] == [rows[2].key()]


def test_prune_keeps_infeasible_constant_row():
    system = InequalitySystem(
        EXPECTATION, ("t1",), (cx.LinearInequality({}, 1),)
    )
    assert len(cx.prune(system).rows) == 1


def test_prune_dedupes_scaled_duplicates():
    rows = (
        cx.LinearInequality({"t1": 2, "t2": 2}, 2),
        cx.LinearInequality({"t1": 1, "t2": 1}, 1),
    )
    system = InequalitySystem(PROBABILITY, ("t1", "t2"), rows)
    assert len(cx.prune(system).rows) == 1


def test_box_minimum_by_mode():
    row = cx.LinearInequality({"x": 1, "y": -2}, 0)
    assert box_minimum(row, EXPECTATION) == -3
    assert box_minimum(row, PROBABILITY) == -2


# projection soundness -----------------------------------------------------

def test_projection_soundness_against_interval_oracle():
    rng = random.Random(0)
    grid = [F(-1), F(-1, 2), F(0), F(1, 2), F(1)]
    for trial in range(30):
        rows = []
        for _ in range(rng.randint(2, 6)):
            coeffs = {
                v: F(rng.randint(-2, 2))
                for v in ("x", "y", "z")
                if rng.random() < 0.8
            }
            rows.append(cx.LinearInequality(coeffs, F(rng.randint(-4, 1))))
        system = InequalitySystem(EXPECTATION, ("x", "y", "z"), tuple(rows))
        eliminated = cx.eliminate_variable(system, "z")
        for x, y in iproduct(grid, repeat=2):
            values = {"x": x, "y": y}
            # oracle: feasible z exists iff max lower bound <= min upper bound
            lows, highs = [], []
            sat = True
            for row in rows:
                c = row.coeffs.get("z", F(0))
                rest = row.rhs - sum(
                    row.coeffs.get(v, F(0)) * values[v] for v in ("x", "y")
                )
                if c == 0:
                    sat = sat and rest <= 0
                elif c > 0:
                    lows.append(rest / c)
                else:
                    highs.append(rest / c)
            exists = sat and (not lows or not highs or max(lows) <= min(highs))
            # pruned rows are box-trivial, hence satisfied at grid points,
            # so the pruned projection is still exact on the box
            projected = all(r.satisfied_by(values) for r in eliminated.rows)
            assert projected == exists


# disk extension -------------------------------------------------------------

def test_extend_all_half_diamond():
    disk = cx.classical_disk(4)
    bg = disk.boundary_graph
    boundary = cx.EdgeDistribution(bg, {e: F(1, 2) for e in bg.edge_ids})
    result = cx.extend_from_boundary(disk, boundary)
    assert result.extends
    assert result.extension.values["z1"] == F(1, 2)
    assert cx.is_valid(result.extension)


def test_extend_rejects_pr_style_boundary():
    disk = cx.classical_disk(4)
    bg = disk.boundary_graph
    boundary = cx.EdgeDistribution(bg, {"t1": F(1), "t2": F(1), "t3": F(1), "t4": F(0)})
    result = cx.extend_from_boundary(disk, boundary)
    assert not result.extends
    # the violated CHSH row: p1 + p2 + p3 - p4 <= 2 evaluates to 3
    witness = cx.LinearInequality({"t1": -1, "t2": -1, "t3": -1, "t4": 1}, -2)
    assert witness.key() in {r.key() for r in result.violations}


def test_extend_triangle_boundary_is_the_disk_itself():
    disk = cx.classical_disk(3)
    bg = disk.boundary_graph
    boundary = cx.EdgeDistribution(bg, {"t1": F(1), "t2": F(1), "t3": F(1)})
    result = cx.extend_from_boundary(disk, boundary)
    assert result.extends
    assert result.extension.values == boundary.values


def test_extend_iff_circle_inequalities_hold():
    rng = random.Random(1)
    for n in (4, 5, 6):
        disk = cx.classical_disk(n)
        bg = disk.boundary_graph
        circles = cx.circle_inequalities(disk.boundary)
        for _ in range(25):
            values = {e: F(rng.randint(0, 4), 4) for e in bg.edge_ids}
            p = cx.EdgeDistribution(bg, values)
            exps = {e: 2 * v - 1 for e, v in values.items()}
            result = cx.extend_from_boundary(disk, p)
            assert result.extends == circles.satisfied_by(exps)
            if result.extends:
                assert cx.is_valid(result.extension)


def test_extend_requires_the_boundary_circle():
    disk = cx.classical_disk(4)
    with pytest.raises(ValueError):
        cx.extend_from_boundary(
            disk, cx.EdgeDistribution(cx.circle(3), {e: F(1) for e in ("t1", "t2", "t3")})
        )


# bouquets ---------------------------------------------------------------------

def test_bouquet_of_two_triangles_checks_one_4_circle():
    disks, shared = cx.bouquet_of_disks([3, 3])
    values = {e: F(1, 2) for d in disks for e in d.boundary if e != shared}
    result = cx.check_extension_bouquet(disks, shared, values)
    assert result.ok
    assert len(result.checked) == 1
    assert len(result.checked[0]) == 4


def test_bouquet_of_four_triangles_checks_six_chsh_sets():
    disks, shared = cx.bouquet_of_disks([3, 3, 3, 3])
    values = {e: F(1, 2) for d in disks for e in d.boundary if e != shared}
    result = cx.check_extension_bouquet(disks, shared, values)
    assert result.ok
    assert len(result.checked) == 6
    assert all(len(c) == 4 for c in result.checked)


def test_bouquet_of_two_squares_checks_a_6_circle():
    disks, shared = cx.bouquet_of_disks([4, 4])
    values = {e: F(1, 2) for d in disks for e in d.boundary if e != shared}
    result = cx.check_extension_bouquet(disks, shared, values)
    assert result.checked == ((*disks[0].boundary[1:], *disks[1].boundary[1:]),)
    assert len(result.checked[0]) == 6


def test_bouquet_verdict_matches_shared_edge_interval_oracle():
    # two triangles glued along one edge: extendability means some value of
    # the shared edge makes both triangles valid
    rng = random.Random(2)
    disks, shared = cx.bouquet_of_disks([3, 3])
    arcs = [tuple(e for e in d.boundary if e != shared) for d in disks]
    for _ in range(40):
        values = {e: F(rng.randint(0, 4), 4) for arc in arcs for e in arc}
        result = cx.check_extension_bouquet(disks, shared, values)
        intervals = []
        for (e1, e2) in arcs:
            a, b = values[e1], values[e2]
            intervals.append((abs(a + b - 1), 1 - abs(a - b)))
        lo = max(i[0] for i in intervals)
        hi = min(i[1] for i in intervals)
        assert result.ok == (lo <= hi)


def test_bouquet_detects_violation():
    disks, shared = cx.bouquet_of_disks([3, 3])
    values = {}
    for d, bits in zip(disks, ((1, 1), (1, 0))):
        for e, bit in zip((x for x in d.boundary if x != shared), bits):
            values[e] = F(bit)
    result = cx.check_extension_bouquet(disks, shared, values)
    assert not result.ok
    assert result.violations


def test_bouquet_rejects_overlapping_disks():
    disk = cx.classical_disk(3)
    with pytest.raises(ValueError):
        cx.check_extension_bouquet([disk, disk], "t1", {})


# Fine's criterion ----------------------------------------------------------

def test_fine_check_pr_box_returns_chsh_witness(chsh):
    result = cx.fine_check_flower(cx.pr_box(4, "+-++"))
    assert result.verdict == "contextual"
    assert set(result.witness_circle) == set(chsh.boundary_edge_ids)
    exps = {e: cx.pr_box(4, "+-++").expectation(e) for e in result.witness_circle}
    assert not result.witness_row.satisfied_by(exps)


def test_fine_check_deterministic_points(chsh):
    for p in deterministic_points(chsh)[:6]:
        assert cx.fine_check_flower(p).verdict == "noncontextual"


def test_fine_check_rejects_unsupported_shapes():
    with pytest.raises(cx.UnsupportedShapeError):
        cx.fine_check_flower(
            cx.p_pm_element(
                cx.cone(cx.wedge_circles(2)), {"t1": "+", "t2": "+"}
            )
        )
    k33 = cx.complete_bipartite(3, 3)
    with pytest.raises(cx.UnsupportedShapeError):
        cx.fine_check_flower(
            cx.p_pm_element(cx.cone(k33), {e: "+" for e in k33.edge_ids})
        )


def test_fine_check_matches_lp_on_flower_mixtures():
    rng = random.Random(3)
    s = cx.cone(cx.flower(2, 2))
    points = deterministic_points(s) + list(
        cx.generate_contextual_vertices(cx.flower(2, 2))
    )
    for _ in range(40):
        p = random_mixture(rng, points)
        assert (
            cx.fine_check_flower(p).is_noncontextual
            == cx.is_noncontextual_lp(p).is_noncontextual
        )
