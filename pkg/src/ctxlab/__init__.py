"""Exact-arithmetic workbench for simplicial contextuality scenarios."""

from .scenario import (
    ClassicalDisk,
    CollapseMap,
    Edge,
    Graph,
    Scenario,
    Triangle,
    circle,
    classical_disk,
    collapse,
    complete_bipartite,
    cone,
    cycle_rank,
    enumerate_circles,
    flower,
    flower_petals,
    is_circle_graph,
    line,
    spanning_tree,
    subgraph,
    wedge_circles,
)
from .distributions import (
    EdgeDistribution,
    OutcomeAssignment,
    TriangleTable,
    act,
    act_on_inequality,
    as_fraction,
    deterministic_enumerate,
    g_pm_classify,
    is_valid,
    orbit,
    orbit_of_inequality,
    p_pm_element,
    product,
    restrict,
    triangle_table,
    validate,
)
from .inequalities import LinearInequality, dedupe
from .polytope import (
    ContextualityCertificate,
    HRep,
    enumerate_vertices,
    h_representation,
    is_noncontextual_lp,
    is_strongly_contextual,
    is_vertex,
    rank_of,
    support,
    tight_set,
)
from .fm import (
    EXPECTATION,
    PROBABILITY,
    InequalitySystem,
    bouquet_of_disks,
    check_extension_bouquet,
    circle_inequalities,
    eliminate_variable,
    eliminate_variables,
    extend_from_boundary,
    fine_check_flower,
    prune,
    to_expectation,
    to_probability,
)
from .collapse_bell import (
    ConePushforward,
    generate_contextual_vertices,
    is_pr_box,
    loop_support_check,
    pr_box,
    pushforward_distribution,
    pushforward_inequality,
)
from .errors import (
    CollapseError,
    CtxlabError,
    DisconnectedGraphError,
    GuardrailExceededError,
    InvalidDistributionError,
    NotAConeError,
    ScenarioMismatchError,
    UnsupportedShapeError,
)

__version__ = "0.1.0"
