"""
Accuracy metrics for predicted curves
"""

from typing import Optional

import numpy as np

from src.config import get_solver_settings
from src.data.dataset import FunctionalDataset
from src.data.grid import SampleGrid
from src.data.simulation import OracleModel, dense_functional_signal
from src.errors import GridError, ParameterError, ShapeError, UndefinedMetricError
from src.estimator.solver import CoefficientFit
from src.estimator.workspace import SolverWorkspace
from src.evaluation.prediction import PredictionRequest, predict


def rmise(predictions: np.ndarray, oracles: np.ndarray, grid: SampleGrid) -> float:
    """
    Relative root mean integrated squared error

        sqrt( sum_t int (O_t - P_t)^2 / sum_t int O_t^2 )

    with integrals taken as weighted Riemann sums on grid.
    """
    predictions = np.atleast_2d(np.asarray(predictions, dtype=float))
    oracles = np.atleast_2d(np.asarray(oracles, dtype=float))
    if predictions.shape != oracles.shape:
        raise ShapeError(f"predictions {predictions.shape} and oracles {oracles.shape} differ")
    if oracles.shape[0] != grid.size:
        raise ShapeError(f"curves have {oracles.shape[0]} points but the grid has {grid.size}")
    denominator = float(np.sum(grid.integrate(oracles ** 2)))
    if denominator <= 0.0:
        raise UndefinedMetricError("RMISE is undefined for an all-zero oracle")
    numerator = float(np.sum(grid.integrate((oracles - predictions) ** 2)))
    return float(np.sqrt(numerator / denominator))


def rmse_mae(predicted, observed, window=None) -> tuple[float, float]:
    """
    Root mean squared and mean absolute error over a window of points

    Args:
        predicted: Predicted values (points along the first axis)
        observed: Observed values, same shape
        window: Row indices or boolean mask selecting the window; all rows when omitted

    Returns:
        (rmse, mae)
    """
    predicted = np.asarray(predicted, dtype=float)
    observed = np.asarray(observed, dtype=float)
    if predicted.shape != observed.shape:
        raise ShapeError(f"predicted {predicted.shape} and observed {observed.shape} differ")
    errors = predicted - observed
    if window is not None:
        errors = errors[np.asarray(window)]
    if errors.size == 0:
        raise ParameterError("the evaluation window is empty")
    return float(np.sqrt(np.mean(errors ** 2))), float(np.mean(np.abs(errors)))


def oracle_signal(oracle: OracleModel, dataset: FunctionalDataset, nodes: Optional[int] = None) -> np.ndarray:
    """
    Noise-free responses of a simulated dataset on its y_grid

    The functional integral uses composite Simpson on an auxiliary grid of
    `nodes` points (simpson_nodes by default).
    """
    if dataset.x_basis is None:
        raise ParameterError("oracle responses need the basis coefficients of the simulated curves")
    nodes = nodes or get_solver_settings().simpson_nodes
    values = dense_functional_signal(oracle, dataset.x_basis, dataset.y_grid.points, nodes)
    if oracle.p > 0 and dataset.p > 0:
        values = values + np.outer(oracle.beta(0, dataset.y_grid.points), dataset.Z[0])
    return values


def discretized_excess_risk(
    fitted: CoefficientFit,
    test: FunctionalDataset,
    oracle: OracleModel,
    ws: Optional[SolverWorkspace] = None,
) -> float:
    """
    Mean over test subjects of (1/n2) sum_j [(Y - Y_hat)^2 - (Y - Y_oracle)^2]

    Monte-Carlo noise can make the value slightly negative; it is returned as is.
    """
    if not (test.x_grid.same_as(fitted.x_grid) and test.y_grid.same_as(fitted.y_grid)):
        raise GridError("the test dataset must be observed on the training grids")
    request = PredictionRequest(X_new=test.X, Z_new=test.Z, target_points=test.y_grid.points)
    predicted = predict(fitted, request, ws)
    truth = oracle_signal(oracle, test)
    excess = (test.Y - predicted) ** 2 - (test.Y - truth) ** 2
    return float(np.mean(np.mean(excess, axis=0)))
