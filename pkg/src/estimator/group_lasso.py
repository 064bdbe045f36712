"""
Block coordinate descent for B with R held fixed

The B step is solved in h-coordinates, h_l = K1* b_l, where it reads

    min_H ||Y~ - H Z||_F^2 + lambda2 sum_l h_l^T K3 h_l + mu sum_l ||h_l||

with Y~ = Y* - (1/n1) K1* R K2* X and mu = lambda3 / sqrt(n2). Groups are
swept in index order. A group is zeroed when ||g_l|| <= mu / 2, its KKT
condition at zero. Otherwise a zero group first moves to the minimizer along
g_l, then its coordinates are swept in index order, each solving a strictly
convex scalar problem. With lambda3 = 0 each group has a closed form weighted
ridge solution.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import structlog
from scipy import linalg

from src.config import get_solver_settings
from src.errors import DegenerateCoordinateError, ShapeError
from src.estimator.objective import group_objective
from src.estimator.workspace import SolverWorkspace
from src.models import PenaltyConfig

logger = structlog.get_logger()

_NEWTON_MAX_STEPS = 100


def _kkt_ratio(n2: int, g: np.ndarray, lambda3: float) -> float:
    return 2.0 * np.sqrt(n2) * float(np.linalg.norm(g)) / lambda3


def group_check(ws: SolverWorkspace, group_residual: np.ndarray, l: int, lambda3: float) -> bool:
    """
    True when h_l = 0 satisfies the group's KKT condition

    group_residual is Y~ with every group except l removed, so the
    condition reads (2 sqrt(n2) / lambda3) ||group_residual z_l|| < 1.
    """
    g = np.asarray(group_residual, dtype=float) @ ws.Z[l]
    return _kkt_ratio(ws.n2, g, lambda3) < 1.0


def solve_scalar_subproblem(a: float, b: float, s2: float, mu: float) -> float:
    """
    argmin_h  a h^2 - 2 b h + mu sqrt(h^2 + s2)

    a must be > 0. With s2 = 0 the penalty is mu |h| and the minimizer is
    a soft threshold; otherwise the objective is smooth and its
    stationarity equation is solved by Newton steps kept inside a
    bracket by bisection.
    """
    if not a > 0:
        raise DegenerateCoordinateError(f"scalar subproblem is not strictly convex (a={a})")
    if mu <= 0.0:
        return b / a
    if s2 <= 0.0:
        return float(np.sign(b) * max(abs(b) - 0.5 * mu, 0.0) / a)

    def derivative(h: float) -> float:
        return 2.0 * a * h - 2.0 * b + mu * h / np.sqrt(h * h + s2)

    def curvature(h: float) -> float:
        return 2.0 * a + mu * s2 / (h * h + s2) ** 1.5

    # f'(0) = -2b and f'(b/a) has the sign of b, so the root lies between
    lo, hi = min(0.0, b / a), max(0.0, b / a)
    if lo == hi:
        return 0.0
    h = 0.5 * (lo + hi)
    for _ in range(_NEWTON_MAX_STEPS):
        d = derivative(h)
        if d == 0.0:
            return h
        if d > 0.0:
            hi = h
        else:
            lo = h
        step = h - d / curvature(h)
        if not lo < step < hi:
            step = 0.5 * (lo + hi)
        if abs(step - h) <= 1e-15 * max(1.0, abs(h)):
            return step
        h = step
    return h


def update_h_coordinate(
    ws: SolverWorkspace,
    l: int,
    k: int,
    h_l: np.ndarray,
    group_residual: np.ndarray,
    lambda2: float,
    lambda3: float,
) -> float:
    """
    Minimizer over h_lk of the group-l objective with the other coordinates fixed

    Args:
        ws: Solver workspace
        l: Group (vector covariate) index
        k: Coordinate index in 0..n2-1
        h_l: Current coefficients of group l
        group_residual: Y~ with every group except l removed (n2 x T)
        lambda2: Weighted ridge penalty
        lambda3: Group lasso penalty

    Returns:
        New value of h_lk
    """
    z = ws.Z[l]
    h_l = np.asarray(h_l, dtype=float)
    a = float(z @ z) + lambda2 * ws.K3[k, k]
    cross = float(ws.K3[k] @ h_l) - ws.K3[k, k] * h_l[k]
    b = float(np.asarray(group_residual)[k] @ z) - lambda2 * cross
    s2 = float(h_l @ h_l) - h_l[k] * h_l[k]
    return solve_scalar_subproblem(a, b, max(s2, 0.0), lambda3 / np.sqrt(ws.n2))


def _single_group_value(ws: SolverWorkspace, h: np.ndarray, g: np.ndarray, zz: float,
                        lambda2: float, mu: float) -> float:
    """Group-l objective up to a constant: zz ||h||^2 - 2 g.h + lambda2 h'K3h + mu ||h||"""
    return float(zz * (h @ h) - 2.0 * (g @ h) + lambda2 * (h @ ws.K3 @ h) + mu * np.linalg.norm(h))


def _sweep_coordinates(ws: SolverWorkspace, h: np.ndarray, g: np.ndarray, zz: float,
                       lambda2: float, mu: float, epsilon: float, max_passes: int) -> np.ndarray:
    """Coordinate descent inside one active group"""
    h = h.copy()
    K3 = ws.K3
    diag = np.diag(K3)
    norm2 = float(h @ h)
    previous = _single_group_value(ws, h, g, zz, lambda2, mu)
    for _ in range(max_passes):
        for k in range(h.shape[0]):
            a = zz + lambda2 * diag[k]
            b = g[k] - lambda2 * (float(K3[k] @ h) - diag[k] * h[k])
            s2 = max(norm2 - h[k] * h[k], 0.0)
            new = solve_scalar_subproblem(a, b, s2, mu)
            norm2 = s2 + new * new
            h[k] = new
        value = _single_group_value(ws, h, g, zz, lambda2, mu)
        if previous - value < epsilon:
            break
        previous = value
    return h


def _block_start(ws: SolverWorkspace, g: np.ndarray, zz: float, lambda2: float, mu: float) -> np.ndarray:
    """
    Exact minimizer of the group objective along the ray through g

    Used to leave h = 0 when the KKT check fails: at zero every coordinate
    sees the nonsmooth penalty mu |h_k|, so a coordinate sweep can stall
    there even though ||g|| > mu / 2.
    """
    norm_g = float(np.linalg.norm(g))
    direction = g / norm_g
    curvature = zz + lambda2 * float(direction @ ws.K3 @ direction)
    return max(norm_g - 0.5 * mu, 0.0) / curvature * direction


def _ridge_group(ws: SolverWorkspace, g: np.ndarray, zz: float, lambda2: float) -> np.ndarray:
    """(||z_l||^2 I + lambda2 K3) h = g"""
    system = zz * np.eye(ws.n2) + lambda2 * ws.K3
    try:
        return linalg.solve(system, g, assume_a="sym")
    except (linalg.LinAlgError, ValueError):
        return linalg.lstsq(system, g)[0]


def update_B(
    ws: SolverWorkspace,
    R: np.ndarray,
    cfg: PenaltyConfig,
    B_prev: Optional[np.ndarray] = None,
    pass_trace: Optional[list] = None,
) -> np.ndarray:
    """
    Minimize the objective over B with R held fixed

    Args:
        ws: Solver workspace
        R: Current n2 x n1 coefficients
        cfg: Penalty levels; epsilon stops the group and coordinate sweeps
        B_prev: Starting point (zeros when omitted)
        pass_trace: When given, receives the B-step objective after every group pass

    Returns:
        n2 x p matrix B
    """
    if ws.p == 0:
        return np.zeros((ws.n2, 0))
    settings = get_solver_settings()
    lambda2, lambda3 = cfg.lambda2, cfg.lambda3
    mu = lambda3 / np.sqrt(ws.n2)

    target = ws.Ystar - ws.K1star @ np.asarray(R, dtype=float) @ ws.design_x
    if B_prev is None:
        H = np.zeros((ws.n2, ws.p))
    else:
        B_prev = np.asarray(B_prev, dtype=float)
        if B_prev.shape != (ws.n2, ws.p):
            raise ShapeError(f"B must be {ws.n2} x {ws.p}, got {B_prev.shape}")
        H = ws.K1star @ B_prev
    residual = target - H @ ws.Z
    zz = np.sum(ws.Z * ws.Z, axis=1)

    previous = group_objective(ws, residual, H, lambda2, lambda3)
    passes = 0
    for passes in range(1, settings.max_group_passes + 1):
        for l in range(ws.p):
            z = ws.Z[l]
            h_old = H[:, l].copy()
            # data term of group l depends on h_l only through g = Y~^l z_l
            g = residual @ z + h_old * zz[l]
            if lambda3 > 0.0:
                if _kkt_ratio(ws.n2, g, lambda3) <= 1.0:
                    h_new = np.zeros(ws.n2)
                else:
                    start = h_old if np.any(h_old) else _block_start(ws, g, zz[l], lambda2, mu)
                    h_new = _sweep_coordinates(
                        ws, start, g, zz[l], lambda2, mu, cfg.epsilon, settings.max_coordinate_passes
                    )
            else:
                h_new = _ridge_group(ws, g, zz[l], lambda2)
            delta = h_new - h_old
            if np.any(delta):
                residual -= np.outer(delta, z)
            H[:, l] = h_new

        value = group_objective(ws, residual, H, lambda2, lambda3)
        if pass_trace is not None:
            pass_trace.append(value)
        if previous - value < cfg.epsilon:
            break
        previous = value

    logger.debug("b_step_done", passes=passes, active=int(np.count_nonzero(np.any(H != 0.0, axis=0))))
    return ws.K1star_inv @ H


@dataclass(frozen=True)
class GroupKKT:
    """Optimality certificate of one group at the current (R, B)"""
    group: int
    active: bool
    # (2 sqrt(n2) / lambda3) ||Y~^l z_l||; <= 1 certifies a zero group
    kkt_ratio: float
    # norm of the group gradient; 0 certifies an active group
    stationarity: float


def group_kkt_residuals(ws: SolverWorkspace, R: np.ndarray, B: np.ndarray, cfg: PenaltyConfig) -> list[GroupKKT]:
    """KKT diagnostics of every group of the B step"""
    target = ws.Ystar - ws.K1star @ np.asarray(R, dtype=float) @ ws.design_x
    H = ws.K1star @ np.asarray(B, dtype=float)
    residual = target - H @ ws.Z
    mu = cfg.lambda3 / np.sqrt(ws.n2)
    report = []
    for l in range(ws.p):
        z = ws.Z[l]
        h = H[:, l]
        zz = float(z @ z)
        g = residual @ z + h * zz
        norm_h = float(np.linalg.norm(h))
        active = norm_h > 0.0
        ratio = _kkt_ratio(ws.n2, g, cfg.lambda3) if cfg.lambda3 > 0 else float("inf")
        gradient = 2.0 * zz * h - 2.0 * g + 2.0 * cfg.lambda2 * ws.K3 @ h
        if active:
            gradient = gradient + mu * h / norm_h
        report.append(GroupKKT(
            group=l,
            active=active,
            kkt_ratio=ratio,
            stationarity=float(np.linalg.norm(gradient)) if active else 0.0,
        ))
    return report
