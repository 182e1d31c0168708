"""Total rainbow k-connection: verifiers, exact solvers, and SAT reductions."""

from .cnf import Assignment, CnfError, CnfFormula, parse_dimacs, to_dimacs
from .coloring import ColoringError, Mode, PartialEdgeColoring, TotalColoring
from .graphs import (
    Graph,
    GraphError,
    build_graph,
    diameter,
    graph_from_json,
    graph_to_json,
    is_complete,
    is_connected,
    max_disjoint_paths,
    vertex_connectivity,
)
from .reductions import (
    ReducedInstance,
    ReductionError,
    ReductionFalsified,
    assignment_to_coloring,
    coloring_to_assignment,
    rainbow_clique_two_coloring,
    lift_coloring_p2_to_p1,
    lift_coloring_p3_to_p2,
    reduce_p2_to_p1,
    reduce_p3_to_p2,
    reduce_sat_to_p3,
    reduce_sat_to_trc3,
    restrict_coloring_p1_to_p2,
    restrict_coloring_p2_to_p3,
    sat_to_trc3_chain,
)
from .solve import (
    EXHAUSTED,
    FOUND,
    IMPOSSIBLE,
    Budget,
    SolveOutcome,
    bounds_report,
    connection_number,
    decide_colorable,
    decide_extension,
    decide_subset_trc3,
    rc_k,
    rvc_k,
    trc_k,
)
from .verify import (
    enumerate_rainbow_paths,
    has_k_disjoint_rainbow_paths,
    is_rainbow_k_connected,
    is_rainbow_path,
    max_rainbow_path_length,
    satisfies_problem3,
)

__version__ = "0.1.0"
