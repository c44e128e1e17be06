"""Exact Monge and Kantorovich solvers and the partition-level checks built on them."""
from .costs import EUCLIDEAN, L1, CostFunction
from .cyclic import CyclicReport, check_c_cyclic_monotone, cyclic_monotone_mask
from .kantorovich import DualPotentials, solve_kantorovich
from .monge import (
    COST_ATOL,
    OPT_RTOL,
    TransportPlan,
    brute_force_monge,
    costs_equal,
    matching_costs,
    matching_plan,
    optimal_matchings,
    plan_from_map,
    solve_monge,
)
from .theorems import (
    SCAN_COLUMNS,
    IdentityReport,
    ReflectionReport,
    ScanRow,
    first_return_map,
    partition_distance,
    rows_to_csv,
    scan_sigma_conjecture,
    scan_summary,
    verify_identity_on_intersection,
    verify_reflection_optimal,
)

__all__ = [
    "EUCLIDEAN", "L1", "CostFunction", "CyclicReport", "check_c_cyclic_monotone", "cyclic_monotone_mask",
    "DualPotentials", "solve_kantorovich", "COST_ATOL", "OPT_RTOL", "TransportPlan", "brute_force_monge",
    "costs_equal", "matching_costs", "matching_plan", "optimal_matchings", "plan_from_map", "solve_monge",
    "SCAN_COLUMNS", "IdentityReport", "ReflectionReport", "ScanRow", "first_return_map", "partition_distance",
    "rows_to_csv", "scan_sigma_conjecture", "scan_summary", "verify_identity_on_intersection",
    "verify_reflection_optimal",
]
