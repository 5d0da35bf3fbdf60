"""Two-point Agmon distances and eigenfunction decay checks for Schrodinger operators on graphs."""

from .graph import (
    Graph,
    Problem,
    build_graph,
    gen_family,
    is_connected,
    parse_problem,
    serialize_problem,
)
from .metric import agmon_field, node_weighted_distance, rho, rho1, rho1_oracle, rho_matrix
from .spectral import (
    ConvergenceFailure,
    Eigenpair,
    assemble_operator,
    eigendecompose,
    max_principle_check,
    partition_regions,
    residual,
    solve,
)
from .verify import check_bound, reduction_check, tightness_stats, verify_problem

__version__ = "0.1.0"
