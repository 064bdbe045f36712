"""
Iterative coordinate descent

Starting from R = 0 and B = 0, alternate the closed-form R step and the
group-lasso B step until the objective decreases by less than epsilon or
l_max outer iterations have run. With no vector covariates the problem is
a single ridge regression and one R step is exact.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import structlog

from src.data.dataset import FunctionalDataset
from src.data.grid import SampleGrid
from src.errors import DivergenceError, ParameterError
from src.estimator.group_lasso import update_B
from src.estimator.objective import objective
from src.estimator.ridge import update_R
from src.estimator.workspace import SolverWorkspace, precompute
from src.models import KernelSpec, PenaltyConfig

logger = structlog.get_logger()


@dataclass
class CoefficientFit:
    """
    Representer coefficients of a fitted model

    A(r, s) = k(r, y_grid)^T R k(s, x_grid) and beta_l(r) = k(r, y_grid)^T b_l
    with b_l the l-th column of B.
    """
    R: np.ndarray
    B: np.ndarray
    converged: bool
    iterations: int
    objective_trace: list[float]
    x_grid: SampleGrid
    y_grid: SampleGrid
    penalty: PenaltyConfig
    kernel: KernelSpec = field(default_factory=KernelSpec)
    # objective after each R step and each B step, in order
    stage_trace: list[float] = field(default_factory=list)

    @property
    def p(self) -> int:
        return self.B.shape[1]

    def active_groups(self) -> list[int]:
        """Indices of vector covariates with a nonzero coefficient function"""
        return [l for l in range(self.p) if np.any(self.B[:, l] != 0.0)]


def _checked(value: float, iteration: int) -> float:
    if not np.isfinite(value):
        raise DivergenceError(f"objective became non-finite at iteration {iteration}")
    return value


def fit(
    dataset: FunctionalDataset,
    kernel: KernelSpec | None,
    cfg: PenaltyConfig,
    workspace: Optional[SolverWorkspace] = None,
) -> CoefficientFit:
    """
    Fit the penalized estimator

    Args:
        dataset: Training data
        kernel: Reproducing kernel (default Bernoulli W^{2,2})
        cfg: Penalty levels and convergence controls
        workspace: Precomputed workspace for this dataset, built when omitted

    Returns:
        CoefficientFit with the objective trace of the outer loop

    Raises:
        ParameterError: lambda1 is not positive
        DivergenceError: the objective became non-finite
    """
    if not cfg.lambda1 > 0:
        raise ParameterError(f"lambda1 must be > 0, got {cfg.lambda1}")
    kernel = kernel or KernelSpec()
    ws = workspace or precompute(dataset, kernel)

    R = np.zeros((ws.n2, ws.n1))
    B = np.zeros((ws.n2, ws.p))
    trace = [_checked(objective(ws, R, B, cfg), 0)]
    stages: list[float] = []

    if ws.p == 0:
        R = update_R(ws, B, cfg.lambda1)
        value = _checked(objective(ws, R, B, cfg), 1)
        trace.append(value)
        stages.append(value)
        logger.debug("fit_converged", iterations=1, objective=value, lambda1=cfg.lambda1)
        return CoefficientFit(
            R=R, B=B, converged=True, iterations=1, objective_trace=trace,
            x_grid=ws.x_grid, y_grid=ws.y_grid, penalty=cfg, kernel=kernel, stage_trace=stages,
        )

    converged = False
    iteration = 0
    for iteration in range(1, cfg.l_max + 1):
        R = update_R(ws, B, cfg.lambda1)
        stages.append(_checked(objective(ws, R, B, cfg), iteration))
        B = update_B(ws, R, cfg, B_prev=B)
        value = _checked(objective(ws, R, B, cfg), iteration)
        stages.append(value)
        trace.append(value)
        if trace[-2] - value < cfg.epsilon:
            converged = True
            break

    fitted = CoefficientFit(
        R=R, B=B, converged=converged, iterations=iteration, objective_trace=trace,
        x_grid=ws.x_grid, y_grid=ws.y_grid, penalty=cfg, kernel=kernel, stage_trace=stages,
    )
    if converged:
        logger.debug(
            "fit_converged",
            iterations=iteration,
            objective=trace[-1],
            active_groups=fitted.active_groups()
        )
    else:
        logger.warning("fit_not_converged", iterations=iteration, objective=trace[-1], l_max=cfg.l_max)
    return fitted
