"""Exact and heuristic solvers for dominating set optimization variants."""

__version__ = "0.1.0"

from .errors import DomsetError, InfeasibleError, InputError, ResourceError
from .graph import (
    FeasibilityCertificate,
    Graph,
    check_feasible,
    is_connected_subset,
    is_dominating,
    is_m_dominating,
    subset_connectivity,
)
from .msest import (
    Estimate,
    EstimateTable,
    Proximity,
    enumerate_interval_estimates,
    generalized_median,
    integrate,
    multiset_coefficient,
    proximity,
    quantize_weights,
    set_median,
    solve_msest,
)
from .pareto import ParetoFront, dominates, pareto_front
from .solvers import (
    ProblemSpec,
    SolveResult,
    greedy_ds,
    max_independent_set,
    max_leaf_spanning_tree,
    solve,
    solve_min_cds,
    solve_min_ds,
    solve_min_kmcds,
    solve_min_weighted,
    two_phase_cds,
)
from .weights import WeightTable, WeightVectorTable
