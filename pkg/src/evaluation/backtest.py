"""
Rolling-origin backtest on a panel of curves

At each split point s the observed part of every curve, [0, s], becomes
the functional covariate rescaled to (0, 1], and the remainder (s, horizon]
becomes the response, also rescaled to (0, 1]. The panel is cut into two
halves; each half trains a model (penalties by cross-validation) that
predicts the other half.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd
import structlog

from src.data.dataset import FunctionalDataset
from src.data.grid import make_grid
from src.data.io import CurvePanel
from src.errors import GridError, ParameterError
from src.estimator.solver import fit
from src.estimator.workspace import precompute
from src.evaluation.metrics import rmse_mae
from src.evaluation.prediction import PredictionRequest, predict
from src.models import CVConfig, KernelSpec, PenaltyConfig
from src.tuning.cross_validation import cv_select

logger = structlog.get_logger()


def split_curves(panel: CurvePanel, split_point: float, horizon: Optional[float] = None,
                 use_covariates: bool = True) -> FunctionalDataset:
    """Covariate / response dataset for one split point"""
    horizon = float(panel.points[-1]) if horizon is None else float(horizon)
    if not 0.0 < split_point < horizon:
        raise ParameterError(f"split point must lie in (0, {horizon}), got {split_point}")
    points = panel.points
    x_mask = (points > 0.0) & (points <= split_point)
    y_mask = (points > split_point) & (points <= horizon)
    if not x_mask.any() or not y_mask.any():
        raise ParameterError(f"split point {split_point} leaves an empty covariate or response window")
    try:
        x_grid = make_grid(points[x_mask] / split_point)
        y_grid = make_grid((points[y_mask] - split_point) / (horizon - split_point))
    except GridError as e:
        raise ParameterError(f"split point {split_point}: {e}") from e
    Z = panel.Z if use_covariates else np.zeros((0, panel.size))
    return FunctionalDataset(
        x_grid=x_grid,
        y_grid=y_grid,
        X=panel.values[x_mask],
        Y=panel.values[y_mask],
        Z=Z,
    )


@dataclass
class BacktestResult:
    """Per-curve errors and per-model selections"""
    curves: pd.DataFrame
    models: pd.DataFrame

    def summary(self) -> pd.DataFrame:
        """RMSE_s and MAE_s averaged over curves, with the number of models selecting no covariate"""
        errors = self.curves.groupby("split_point")[["rmse", "mae"]].mean()
        no_covariate = self.models.assign(empty=self.models["active_groups"] == 0) \
            .groupby("split_point")["empty"].sum().rename("models_without_covariates")
        return errors.join(no_covariate).reset_index()


def _halves(T: int) -> list[tuple[np.ndarray, np.ndarray]]:
    if T < 4:
        raise ParameterError(f"a two-fold backtest needs at least 4 curves, got {T}")
    half = T // 2
    first, second = np.arange(half), np.arange(half, T)
    return [(first, second), (second, first)]


def rolling_backtest(
    panel: CurvePanel,
    split_points: Sequence[float],
    cvcfg: CVConfig,
    kernel: KernelSpec | None = None,
    horizon: Optional[float] = None,
    base: Optional[PenaltyConfig] = None,
    use_covariates: bool = True,
) -> BacktestResult:
    """
    Two-fold backtest at every split point

    Args:
        panel: Curves on a common grid over [0, horizon]
        split_points: Prediction times s
        cvcfg: Grid and folds for penalty selection on each training half
        kernel: Reproducing kernel
        horizon: End of the observation window (last panel point by default)
        base: Supplies epsilon and l_max
        use_covariates: False fits function-on-function models only

    Returns:
        BacktestResult with one row per (split point, test curve) and per fitted model
    """
    if not split_points:
        raise ParameterError("at least one split point is required")
    curve_rows = []
    model_rows = []
    for s in split_points:
        dataset = split_curves(panel, s, horizon, use_covariates)
        for fold, (train_idx, test_idx) in enumerate(_halves(dataset.T)):
            train = dataset.subset(train_idx)
            test = dataset.subset(test_idx)
            selected, _ = cv_select(train, kernel, cvcfg, base=base)
            fitted = fit(train, kernel, selected, workspace=precompute(train, kernel))
            request = PredictionRequest(X_new=test.X, Z_new=test.Z, target_points=test.y_grid.points)
            predicted = predict(fitted, request)
            for column, subject in enumerate(test_idx):
                rmse, mae = rmse_mae(predicted[:, column], test.Y[:, column])
                curve_rows.append({
                    "split_point": float(s), "fold": fold, "subject": int(subject), "rmse": rmse, "mae": mae
                })
            model_rows.append({
                "split_point": float(s),
                "fold": fold,
                "lambda1": selected.lambda1,
                "lambda2": selected.lambda2,
                "lambda3": selected.lambda3,
                "active_groups": len(fitted.active_groups()),
                "converged": fitted.converged,
            })
            logger.info(
                "backtest_fold_done",
                split_point=float(s),
                fold=fold,
                active_groups=len(fitted.active_groups())
            )
    return BacktestResult(curves=pd.DataFrame(curve_rows), models=pd.DataFrame(model_rows))
