"""
Tests for the closed-form R step
"""

import itertools

import numpy as np
import pytest

from src.errors import ParameterError, ShapeError
from src.estimator.objective import objective
from src.estimator.ridge import ridge_target, update_R
from src.estimator.workspace import precompute
from tests.factories import PenaltyConfigFactory, random_dataset


def dense_ridge_solution(ws, B, lambda1: float) -> np.ndarray:
    """
    E = K1^{1/2} R K2^{1/2} from the dense (n1 n2) x (n1 n2) normal equations

    The loss is ||Y~ - W_R K1^{1/2} E S4||^2 with S4 = (1/n1) K2^{1/2} W_S X,
    and the penalty is lambda1 ||E||^2. Vectorized column-major.
    """
    target = ridge_target(ws, B)
    S4 = ws.K2_half @ (ws.ws[:, None] * ws.X) / ws.n1
    design = np.kron(S4.T, ws.wr_sqrt[:, None] * ws.K1_half)
    system = design.T @ design + lambda1 * np.eye(design.shape[1])
    rhs = design.T @ target.flatten(order="F")
    return np.linalg.solve(system, rhs).reshape(ws.n2, ws.n1, order="F")


INSTANCES = list(itertools.product(range(4), [0, 2], [1e-4, 1e-1, 1.0]))[:20]


class TestUpdateR:
    """Ridge step"""

    @pytest.mark.parametrize("seed,p,lambda1", INSTANCES)
    def test_matches_dense_solve(self, seed, p, lambda1):
        """Spectral closed form equals the Kronecker linear system"""
        rng = np.random.default_rng(100 + seed)
        ws = precompute(random_dataset(rng, n1=4, n2=4, T=6, p=p))
        B = rng.standard_normal((ws.n2, p))

        R = update_R(ws, B, lambda1)
        expected = dense_ridge_solution(ws, B, lambda1)
        E = ws.K1_half @ R @ ws.K2_half

        assert np.linalg.norm(E - expected) <= 1e-8 * np.linalg.norm(expected)

    def test_is_minimizer(self, tiny_mixed_workspace, rng):
        """Perturbing the solution never lowers the objective"""
        ws = tiny_mixed_workspace
        cfg = PenaltyConfigFactory(lambda1=1e-2, lambda2=0.1)
        B = rng.standard_normal((ws.n2, ws.p))
        R = update_R(ws, B, cfg.lambda1)
        best = objective(ws, R, B, cfg)

        for _ in range(20):
            perturbed = R + 1e-3 * rng.standard_normal(R.shape)
            assert objective(ws, perturbed, B, cfg) >= best - 1e-10 * (1 + abs(best))

    def test_no_covariates(self, tiny_workspace):
        """B may be None or empty when p = 0"""
        ws = tiny_workspace

        assert np.array_equal(update_R(ws, None, 0.1), update_R(ws, np.zeros((ws.n2, 0)), 0.1))

    @pytest.mark.parametrize("lambda1", [0.0, -1.0])
    def test_lambda1_positive(self, tiny_workspace, lambda1):
        with pytest.raises(ParameterError):
            update_R(tiny_workspace, None, lambda1)

    def test_b_shape(self, tiny_mixed_workspace):
        with pytest.raises(ShapeError):
            update_R(tiny_mixed_workspace, np.zeros((3, 3)), 0.1)
