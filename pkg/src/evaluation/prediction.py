"""
Evaluating fitted coefficient functions and predicting new curves

    Y_hat(r) = (1/n1) sum_i w_s(i) A_hat(r, s_i) X(s_i) + sum_l beta_hat_l(r) Z_l
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.errors import ShapeError
from src.estimator.solver import CoefficientFit
from src.estimator.workspace import SolverWorkspace
from src.kernels.bernoulli import cross_gram, gram_matrix


@dataclass(frozen=True)
class PredictionRequest:
    """New subjects observed on the training x_grid, predicted at target_points"""
    X_new: np.ndarray
    Z_new: np.ndarray
    target_points: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X_new, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        Z = np.asarray(self.Z_new, dtype=float)
        if Z.ndim == 1:
            Z = Z.reshape(0, X.shape[1]) if Z.size == 0 else Z[:, None]
        if Z.shape[1] != X.shape[1]:
            raise ShapeError(f"X_new has {X.shape[1]} subjects but Z_new has {Z.shape[1]}")
        object.__setattr__(self, "X_new", X)
        object.__setattr__(self, "Z_new", Z)
        object.__setattr__(self, "target_points", np.asarray(self.target_points, dtype=float).ravel())


def _scalar_or_matrix(values: np.ndarray, *args) -> float | np.ndarray:
    return float(values[0, 0]) if all(np.ndim(a) == 0 for a in args) else values


def eval_A(fitted: CoefficientFit, r, s) -> float | np.ndarray:
    """A_hat at (r, s); a |r| x |s| matrix when either argument is an array"""
    Kr = cross_gram(fitted.kernel, np.atleast_1d(r), fitted.y_grid.points)
    Ks = cross_gram(fitted.kernel, np.atleast_1d(s), fitted.x_grid.points)
    return _scalar_or_matrix(Kr @ fitted.R @ Ks.T, r, s)


def eval_beta(fitted: CoefficientFit, l: int, r) -> float | np.ndarray:
    """beta_hat_l at r (zero-based l)"""
    if not 0 <= l < fitted.p:
        raise IndexError(f"covariate index {l} out of range for p={fitted.p}")
    Kr = cross_gram(fitted.kernel, np.atleast_1d(r), fitted.y_grid.points)
    values = Kr @ fitted.B[:, l]
    return float(values[0]) if np.ndim(r) == 0 else values


def predict(
    fitted: CoefficientFit,
    request: PredictionRequest,
    ws: Optional[SolverWorkspace] = None,
) -> np.ndarray:
    """
    Predicted curves at the request's target points

    Args:
        fitted: Fitted coefficients (carry their own grids)
        request: New X on the training x_grid and matching Z
        ws: Optional workspace of the training data to reuse its Gram matrices

    Returns:
        |target_points| x subjects matrix
    """
    n1 = fitted.x_grid.size
    if request.X_new.shape[0] != n1:
        raise ShapeError(f"X_new must have {n1} rows (training x_grid), got {request.X_new.shape[0]}")
    if request.Z_new.shape[0] != fitted.p:
        raise ShapeError(f"Z_new must have {fitted.p} rows, got {request.Z_new.shape[0]}")

    target = request.target_points
    if ws is not None and np.array_equal(target, ws.y_grid.points):
        Kt = ws.K1
    else:
        Kt = cross_gram(fitted.kernel, target, fitted.y_grid.points)
    K2 = ws.K2 if ws is not None else gram_matrix(fitted.kernel, fitted.x_grid.points)

    weighted_x = fitted.x_grid.weights[:, None] * request.X_new
    inner = fitted.R @ (K2 @ weighted_x) / n1
    if fitted.p:
        inner = inner + fitted.B @ request.Z_new
    return Kt @ inner


def fitted_values(fitted: CoefficientFit, ws: SolverWorkspace) -> np.ndarray:
    """In-sample predictions on the training y_grid (n2 x T)"""
    return ws.K1 @ (fitted.R @ ws.design_x + fitted.B @ ws.Z)
