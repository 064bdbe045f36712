"""
Synthetic functional regression data

    Y_t(r) = int A*(r, s) X_t(s) ds + sum_j beta*_j(r) Z_tj + eps_t(r)

X_t and eps_t live in the span of the first q cosine basis functions
u_1 = 1, u_i(s) = sqrt(2) cos((i - 1) pi s). Only beta*_1 is nonzero.

Random draws come from numpy's PCG64 generator seeded with the scenario
seed, in a fixed order: x coefficients, noise coefficients, Z, Lambda, b,
then (random grids only) the sample points.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import structlog
from scipy.integrate import simpson

from src.config import get_solver_settings
from src.data.dataset import FunctionalDataset
from src.data.grid import SampleGrid, canonical_grid, uniform_random_grid
from src.errors import DomainError, ParameterError
from src.models import GridKind, ScenarioKind, SimulationScenario

logger = structlog.get_logger()

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)


def cosine_basis(i: int, s):
    """u_1(s) = 1, u_i(s) = sqrt(2) cos((i - 1) pi s) for i >= 2"""
    if i < 1:
        raise ParameterError(f"basis index must be >= 1, got {i}")
    s_arr = np.asarray(s, dtype=float)
    if np.any((s_arr < 0.0) | (s_arr > 1.0)):
        raise DomainError("basis argument must lie in [0, 1]")
    if i == 1:
        value = np.ones_like(s_arr)
    else:
        value = SQRT2 * np.cos((i - 1) * np.pi * s_arr)
    return float(value) if value.ndim == 0 else value


def cosine_basis_matrix(q: int, points) -> np.ndarray:
    """q x m matrix with rows u_i evaluated at the points"""
    points = np.asarray(points, dtype=float).ravel()
    freq = np.arange(q, dtype=float)[:, None] * np.pi
    basis = SQRT2 * np.cos(freq * points[None, :])
    basis[0, :] = 1.0
    return basis


def exponential_basis_integrals(q: int) -> np.ndarray:
    """c_i = int_0^1 exp(-s) u_i(s) ds in closed form"""
    c = np.empty(q)
    c[0] = 1.0 - np.exp(-1.0)
    if q > 1:
        m = np.arange(1, q, dtype=float) * np.pi
        sign = np.where(np.arange(1, q) % 2 == 0, 1.0, -1.0)
        c[1:] = SQRT2 * (1.0 - np.exp(-1.0) * sign) / (1.0 + m * m)
    return c


@dataclass(frozen=True)
class OracleModel:
    """True coefficient functions of a simulated design"""
    kind: ScenarioKind
    kappa: float
    q: int
    p: int
    lam: Optional[np.ndarray] = None
    b: Optional[np.ndarray] = None

    def A(self, r, s) -> np.ndarray:
        """A*(r, s), broadcasting over r and s"""
        r = np.asarray(r, dtype=float)
        s = np.asarray(s, dtype=float)
        if self.kind == ScenarioKind.A_EXPONENTIAL:
            return self.kappa * SQRT3 * np.exp(-(r + s))
        r_b, s_b = np.broadcast_arrays(r, s)
        ur = cosine_basis_matrix(self.q, r_b.ravel())
        us = cosine_basis_matrix(self.q, s_b.ravel())
        values = self.kappa * np.einsum("im,ij,jm->m", ur, self.lam, us)
        return values.reshape(r_b.shape)

    def beta(self, l: int, r) -> np.ndarray:
        """beta*_l(r) with l zero-based; only l = 0 is nonzero"""
        if not 0 <= l < self.p:
            raise ParameterError(f"covariate index {l} out of range for p={self.p}")
        r = np.asarray(r, dtype=float)
        if l > 0:
            return np.zeros_like(r)
        if self.kind == ScenarioKind.A_EXPONENTIAL:
            return self.kappa * SQRT3 * np.exp(-r)
        return self.kappa * (self.b @ cosine_basis_matrix(self.q, r.ravel())).reshape(r.shape)

    def functional_signal(self, x_coefficients: np.ndarray, r_points) -> np.ndarray:
        """int A*(r, s) X_t(s) ds for X_t given by basis coefficients (q x T); returns m x T"""
        coeffs = np.atleast_2d(np.asarray(x_coefficients, dtype=float))
        if coeffs.shape[0] != self.q:
            coeffs = coeffs.T
        r_points = np.asarray(r_points, dtype=float).ravel()
        if self.kind == ScenarioKind.A_EXPONENTIAL:
            inner = exponential_basis_integrals(self.q) @ coeffs
            return self.kappa * SQRT3 * np.exp(-r_points)[:, None] * inner[None, :]
        return self.kappa * cosine_basis_matrix(self.q, r_points).T @ (self.lam @ coeffs)

    def signal(self, x_coefficients: np.ndarray, Z: np.ndarray, r_points) -> np.ndarray:
        """Noise-free response on r_points, m x T"""
        values = self.functional_signal(x_coefficients, r_points)
        Z = np.asarray(Z, dtype=float)
        if self.p > 0 and Z.size:
            values = values + np.outer(self.beta(0, np.asarray(r_points, dtype=float).ravel()), Z[0])
        return values


def oracle_response(
    oracle: OracleModel,
    x_t,
    z_t,
    x_points=None,
) -> Callable[[np.ndarray], np.ndarray]:
    """
    r -> int A*(r, s) X_t(s) ds + beta*_1(r) Z_t1

    x_t holds basis coefficients (length q) unless x_points is given, in
    which case it holds curve values on that fine grid and the integral is
    taken with composite Simpson.
    """
    x_t = np.asarray(x_t, dtype=float).ravel()
    z_t = np.asarray(z_t, dtype=float).ravel()
    fine = None if x_points is None else np.asarray(x_points, dtype=float).ravel()
    if fine is None and x_t.shape[0] != oracle.q:
        raise ParameterError(f"expected {oracle.q} basis coefficients, got {x_t.shape[0]}")
    if fine is not None and fine.shape != x_t.shape:
        raise ParameterError("x_points and curve values must have the same length")

    def response(r):
        r_arr = np.asarray(r, dtype=float)
        flat = r_arr.ravel()
        if fine is None:
            values = oracle.functional_signal(x_t[:, None], flat)[:, 0]
        else:
            values = simpson(oracle.A(flat[:, None], fine[None, :]) * x_t[None, :], x=fine, axis=1)
        if oracle.p > 0 and z_t.size:
            values = values + oracle.beta(0, flat) * z_t[0]
        return values.reshape(r_arr.shape) if r_arr.ndim else float(values[0])

    return response


def _draw_grid(kind: GridKind, n: int, rng: np.random.Generator) -> SampleGrid:
    if kind == GridKind.EQUISPACED:
        return canonical_grid(n)
    return uniform_random_grid(n, rng)


def simulate(scenario: SimulationScenario, n1: int, n2: int, T: int) -> tuple[FunctionalDataset, OracleModel]:
    """Draw T subjects from the scenario; deterministic in scenario.seed"""
    if min(n1, n2, T) < 1:
        raise ParameterError(f"n1, n2 and T must be >= 1, got ({n1}, {n2}, {T})")
    q, p = scenario.q, scenario.p
    rng = np.random.default_rng(scenario.seed)
    scale = 1.0 / np.arange(1, q + 1, dtype=float)

    x = rng.uniform(-scale, scale, size=(T, q))
    e = rng.uniform(-0.2 * scale, 0.2 * scale, size=(T, q))
    Z = rng.uniform(-1.0 / SQRT3, 1.0 / SQRT3, size=(T, p))

    lam = None
    b = None
    if scenario.kind == ScenarioKind.B_RANDOM:
        lam = rng.standard_normal((q, q))
        lam = lam / np.linalg.norm(lam, 2)
        b = rng.standard_normal(q)
        b = b / np.linalg.norm(b)

    x_grid = _draw_grid(scenario.grid_kind, n1, rng)
    y_grid = _draw_grid(scenario.grid_kind, n2, rng)

    oracle = OracleModel(kind=scenario.kind, kappa=scenario.kappa, q=q, p=p, lam=lam, b=b)
    X = cosine_basis_matrix(q, x_grid.points).T @ x.T
    noise = cosine_basis_matrix(q, y_grid.points).T @ e.T
    Y = oracle.signal(x.T, Z.T, y_grid.points) + noise

    logger.debug(
        "dataset_simulated",
        scenario=scenario.kind.value,
        q=q,
        kappa=scenario.kappa,
        p=p,
        n1=n1,
        n2=n2,
        T=T,
        seed=scenario.seed
    )
    dataset = FunctionalDataset(x_grid=x_grid, y_grid=y_grid, X=X, Y=Y, Z=Z.T, x_basis=x.T)
    return dataset, oracle


def dense_functional_signal(oracle: OracleModel, x_coefficients: np.ndarray, r_points, nodes: int | None = None) -> np.ndarray:
    """int A*(r, s) X_t(s) ds by composite Simpson on an auxiliary grid; m x T"""
    nodes = nodes or get_solver_settings().simpson_nodes
    s = np.linspace(0.0, 1.0, nodes)
    coeffs = np.atleast_2d(np.asarray(x_coefficients, dtype=float))
    curves = cosine_basis_matrix(oracle.q, s).T @ coeffs
    kernel = oracle.A(np.asarray(r_points, dtype=float).ravel()[:, None], s[None, :])
    return simpson(kernel[:, :, None] * curves[None, :, :], x=s, axis=1)
