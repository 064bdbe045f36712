"""
Closed-form update of R for fixed B

With E = K1^{1/2} R K2^{1/2} the R step is a Kronecker-structured ridge
problem whose normal equations diagonalize in the eigenbases of
S4 S4^T = U1 D1 U1^T and K1^{1/2} W_R^2 K1^{1/2} = U2 D2 U2^T:

    E = (1/n1) U2 [ (U2^T G U1) / (lambda1 + D2 D1^T) ] U1^T
    G = K1^{1/2} W_R Y~ X^T W_S K2^{1/2},   Y~ = Y* - K1* B Z
"""

import numpy as np

from src.errors import ParameterError, ShapeError
from src.estimator.workspace import SolverWorkspace


def ridge_target(ws: SolverWorkspace, B: np.ndarray | None) -> np.ndarray:
    """Y* minus the vector-covariate part"""
    if B is None or ws.p == 0:
        return ws.Ystar
    B = np.asarray(B, dtype=float)
    if B.shape != (ws.n2, ws.p):
        raise ShapeError(f"B must be {ws.n2} x {ws.p}, got {B.shape}")
    return ws.Ystar - ws.K1star @ B @ ws.Z


def update_R(ws: SolverWorkspace, B: np.ndarray | None, lambda1: float) -> np.ndarray:
    """
    Minimize the objective over R with B held fixed

    Args:
        ws: Solver workspace
        B: Current n2 x p coefficients (None or empty when p = 0)
        lambda1: Penalty on tr(R^T K1 R K2), must be > 0

    Returns:
        n2 x n1 matrix R
    """
    if not lambda1 > 0:
        raise ParameterError(f"lambda1 must be > 0, got {lambda1}")
    target = ridge_target(ws, B)

    G = ws.K1_half @ (ws.wr_sqrt[:, None] * target) @ ws.x_right
    U1 = ws.spectrum_x.eigenvectors
    D1 = np.maximum(ws.spectrum_x.eigenvalues, 0.0)
    U2 = ws.spectrum_y.eigenvectors
    D2 = np.maximum(ws.spectrum_y.eigenvalues, 0.0)

    rotated = (U2.T @ G @ U1) / (lambda1 + np.outer(D2, D1))
    E = U2 @ rotated @ U1.T / ws.n1
    return ws.K1_inv_half @ E @ ws.K2_inv_half
