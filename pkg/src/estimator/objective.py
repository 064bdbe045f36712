"""
Penalized least-squares objective in representer coordinates

    ||Y* - (1/n1) K1* R K2* X - K1* B Z||_F^2
        + lambda1 tr(R^T K1 R K2)
        + lambda2 sum_l b_l^T K1 b_l
        + lambda3 sum_l ||K1* b_l|| / sqrt(n2)
"""

import numpy as np

from src.errors import ShapeError
from src.estimator.workspace import SolverWorkspace
from src.models import PenaltyConfig


def _check_shapes(ws: SolverWorkspace, R: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    R = np.asarray(R, dtype=float)
    B = np.asarray(B, dtype=float).reshape(ws.n2, -1) if np.size(B) == 0 else np.asarray(B, dtype=float)
    if R.shape != (ws.n2, ws.n1):
        raise ShapeError(f"R must be {ws.n2} x {ws.n1}, got {R.shape}")
    if B.shape != (ws.n2, ws.p):
        raise ShapeError(f"B must be {ws.n2} x {ws.p}, got {B.shape}")
    return R, B


def weighted_fitted(ws: SolverWorkspace, R: np.ndarray, B: np.ndarray) -> np.ndarray:
    """(1/n1) K1* R K2* X + K1* B Z"""
    return ws.K1star @ (R @ ws.design_x + B @ ws.Z)


def objective(ws: SolverWorkspace, R, B, cfg: PenaltyConfig) -> float:
    """Full objective value for coefficients (R, B)"""
    R, B = _check_shapes(ws, R, B)
    residual = ws.Ystar - weighted_fitted(ws, R, B)
    value = float(np.sum(residual * residual))
    value += cfg.lambda1 * float(np.sum(R * (ws.K1 @ R @ ws.K2)))
    if ws.p:
        value += cfg.lambda2 * float(np.sum(B * (ws.K1 @ B)))
        value += cfg.lambda3 * float(np.sum(np.linalg.norm(ws.K1star @ B, axis=0))) / np.sqrt(ws.n2)
    return value


def smooth_gradient(ws: SolverWorkspace, R, B, cfg: PenaltyConfig) -> tuple[np.ndarray, np.ndarray]:
    """Gradient of the loss plus the lambda1 and lambda2 terms with respect to R and B"""
    R, B = _check_shapes(ws, R, B)
    residual = ws.Ystar - weighted_fitted(ws, R, B)
    back = ws.K1star.T @ residual
    grad_R = -2.0 * back @ ws.design_x.T + 2.0 * cfg.lambda1 * ws.K1 @ R @ ws.K2
    grad_B = -2.0 * back @ ws.Z.T + 2.0 * cfg.lambda2 * ws.K1 @ B
    return grad_R, grad_B


def group_objective(
    ws: SolverWorkspace,
    residual: np.ndarray,
    H: np.ndarray,
    lambda2: float,
    lambda3: float,
) -> float:
    """
    Objective of the B step in h-coordinates (h_l = K1* b_l)

        ||Y~ - H Z||_F^2 + lambda2 sum_l h_l^T K3 h_l + lambda3 sum_l ||h_l|| / sqrt(n2)

    residual must already equal Y~ - H Z.
    """
    value = float(np.sum(residual * residual))
    if H.size:
        value += lambda2 * float(np.sum(H * (ws.K3 @ H)))
        value += lambda3 * float(np.sum(np.linalg.norm(H, axis=0))) / np.sqrt(ws.n2)
    return value
