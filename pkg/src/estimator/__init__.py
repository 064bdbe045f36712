"""
Penalized RKHS estimator: workspace, objective, R and B steps, outer loop
"""

from src.estimator.workspace import SolverWorkspace, precompute
from src.estimator.objective import objective, smooth_gradient, group_objective
from src.estimator.ridge import update_R
from src.estimator.group_lasso import (
    group_check,
    solve_scalar_subproblem,
    update_h_coordinate,
    update_B,
    group_kkt_residuals,
)
from src.estimator.solver import CoefficientFit, fit
from src.estimator.serialization import save_model, load_model

__all__ = [
    "SolverWorkspace",
    "precompute",
    "objective",
    "smooth_gradient",
    "group_objective",
    "update_R",
    "group_check",
    "solve_scalar_subproblem",
    "update_h_coordinate",
    "update_B",
    "group_kkt_residuals",
    "CoefficientFit",
    "fit",
    "save_model",
    "load_model",
]
