"""Geometric invariants along deformations of cuspidal S_1 singularities."""

from .bias import (
    BiasSecondary,
    BiasSeries,
    EtaFrame,
    bias_secondary,
    bias_secondary_at,
    bias_secondary_series,
    eta_frame,
    printed_ell,
)
from .curves import (
    BranchCurvatures,
    SelfIntersectionBranch,
    SICurvatureLimits,
    branch_curvatures_s0,
    branch_curvatures_traced,
    classical_curvatures,
    even_curve_curvatures,
    intersection_function,
    si_curvature_limits,
    si_curvatures_at,
    trace_self_intersection,
)
from .frenet import TrajectoryFrenet, recover_f24_f34, trajectory_curve, trajectory_frenet
from .report import InvariantReport, invariant_report
from .trajectory import (
    TrajectorySeries,
    parameter_value,
    reduced_expansion,
    solve_singular_u,
    trajectory_jet,
    trajectory_series,
)

__all__ = [
    "BiasSecondary", "BiasSeries", "BranchCurvatures", "EtaFrame", "InvariantReport",
    "SICurvatureLimits", "SelfIntersectionBranch", "TrajectoryFrenet", "TrajectorySeries",
    "bias_secondary", "bias_secondary_at", "bias_secondary_series", "branch_curvatures_s0",
    "branch_curvatures_traced", "classical_curvatures", "eta_frame", "even_curve_curvatures",
    "intersection_function", "invariant_report", "parameter_value", "printed_ell",
    "recover_f24_f34", "reduced_expansion", "si_curvature_limits", "si_curvatures_at",
    "solve_singular_u", "trace_self_intersection", "trajectory_curve", "trajectory_frenet",
    "trajectory_jet", "trajectory_series",
]
