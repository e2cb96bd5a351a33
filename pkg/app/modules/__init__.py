from .graph_core import Graph, GraphError, ExactLimitError, metrics, cartesian_product
from .families import FamilySpecError, generate, generate_from_string, parse_family_spec, parse_family_grid, is_family_spec
from .graph_io import (
    Graph6Error,
    EdgeListError,
    parse_graph6,
    write_graph6,
    read_graph6_stream,
    parse_edge_list,
    write_edge_list,
    load_graph,
)
from .colouring import (
    EdgeColouring,
    ColouringError,
    ColourCapExceeded,
    is_proper,
    is_rainbow_connected,
    rainbow_path,
    verify,
    load_certificate,
    save_certificate,
)
from .solvers import (
    SolverError,
    OracleLimitError,
    chromatic_index,
    rc,
    prc,
    solve,
    decide_prc_at_k,
    decide_rc_at_k,
    brute_force_oracle,
)
from .constructions import (
    ConstructionError,
    spanning_tree_colouring,
    spanning_star_colouring,
    hamiltonian_complement_colouring,
    cycle_colouring,
    wheel_colouring,
    gkt_colouring,
    clique_rc_colouring,
)
from .bounds import (
    BoundsError,
    CLAIM_IDS,
    evaluate_bounds,
    classify_extremal,
    sufficient_conditions,
    resolve_claims,
    required_parameters,
)
from .orchestration import SweepService, SweepError

__all__ = [
    "Graph",
    "GraphError",
    "ExactLimitError",
    "metrics",
    "cartesian_product",
    "FamilySpecError",
    "generate",
    "generate_from_string",
    "parse_family_spec",
    "parse_family_grid",
    "is_family_spec",
    "Graph6Error",
    "EdgeListError",
    "parse_graph6",
    "write_graph6",
    "read_graph6_stream",
    "parse_edge_list",
    "write_edge_list",
    "load_graph",
    "EdgeColouring",
    "ColouringError",
    "ColourCapExceeded",
    "is_proper",
    "is_rainbow_connected",
    "rainbow_path",
    "verify",
    "load_certificate",
    "save_certificate",
    "SolverError",
    "OracleLimitError",
    "chromatic_index",
    "rc",
    "prc",
    "solve",
    "decide_prc_at_k",
    "decide_rc_at_k",
    "brute_force_oracle",
    "ConstructionError",
    "spanning_tree_colouring",
    "spanning_star_colouring",
    "hamiltonian_complement_colouring",
    "cycle_colouring",
    "wheel_colouring",
    "gkt_colouring",
    "clique_rc_colouring",
    "BoundsError",
    "CLAIM_IDS",
    "evaluate_bounds",
    "classify_extremal",
    "sufficient_conditions",
    "resolve_claims",
    "required_parameters",
    "SweepService",
    "SweepError",
]
