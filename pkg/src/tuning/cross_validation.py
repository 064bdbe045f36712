"""
k-fold cross-validation over penalty grids

Folds are a seeded permutation of the subjects cut into contiguous
blocks. The criterion for one fold is the mean over held-out subjects of
(1/n2) sum_j w_r(j) (Y_t(r_j) - Y_hat_t(r_j))^2. Workspaces are built once
per fold and reused for every grid point. Grid points are visited with
lambda1 outermost and lambda3 innermost; parallel evaluation returns
results in that same order so the outcome matches a sequential run.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd
import structlog

from src.config import get_solver_settings
from src.data.dataset import FunctionalDataset
from src.errors import FoldFitError, FunctionalRegressionError, ParameterError, SelectionError
from src.estimator.solver import fit
from src.estimator.workspace import SolverWorkspace, precompute
from src.evaluation.prediction import PredictionRequest, predict
from src.models import CVConfig, KernelSpec, PenaltyConfig

logger = structlog.get_logger()

SCORE_COLUMNS = ["lambda1", "lambda2", "lambda3", "fold", "fold_score", "mean_score"]


def kfold_split(T: int, folds: int, seed: int) -> list[np.ndarray]:
    """Partition range(T) into `folds` held-out index blocks whose sizes differ by at most one"""
    if folds < 2:
        raise ParameterError(f"need at least 2 folds, got {folds}")
    if folds > T:
        raise ParameterError(f"cannot split {T} subjects into {folds} folds")
    order = np.random.default_rng(seed).permutation(T)
    return [np.sort(block) for block in np.array_split(order, folds)]


@dataclass(frozen=True)
class FoldData:
    """Training workspace and held-out subjects of one fold"""
    index: int
    train: FunctionalDataset
    test: FunctionalDataset
    workspace: SolverWorkspace


def prepare_folds(
    dataset: FunctionalDataset,
    kernel: KernelSpec | None,
    split: Sequence[np.ndarray],
) -> list[FoldData]:
    folds = []
    every = np.arange(dataset.T)
    for index, held_out in enumerate(split):
        train = dataset.subset(np.setdiff1d(every, held_out))
        folds.append(FoldData(
            index=index,
            train=train,
            test=dataset.subset(held_out),
            workspace=precompute(train, kernel),
        ))
    return folds


def holdout_error(fitted, fold: FoldData) -> float:
    """Weighted squared prediction error averaged over the held-out subjects"""
    test = fold.test
    request = PredictionRequest(X_new=test.X, Z_new=test.Z, target_points=test.y_grid.points)
    predicted = predict(fitted, request, fold.workspace)
    squared = test.y_grid.weights[:, None] * (test.Y - predicted) ** 2
    return float(np.mean(np.mean(squared, axis=0)))


def cv_fold_scores(
    dataset: FunctionalDataset,
    kernel: KernelSpec | None,
    cfg: PenaltyConfig,
    split: Sequence[np.ndarray],
    folds: Optional[list[FoldData]] = None,
) -> list[float]:
    """Held-out score of every fold for one penalty configuration"""
    folds = folds if folds is not None else prepare_folds(dataset, kernel, split)
    scores = []
    for fold in folds:
        try:
            fitted = fit(fold.train, kernel, cfg, workspace=fold.workspace)
            score = holdout_error(fitted, fold)
        except FunctionalRegressionError as e:
            raise FoldFitError(fold.index, e) from e
        if not np.isfinite(score):
            raise FoldFitError(fold.index, ParameterError("non-finite held-out score"))
        scores.append(score)
    return scores


def cv_score(
    dataset: FunctionalDataset,
    kernel: KernelSpec | None,
    cfg: PenaltyConfig,
    split: Sequence[np.ndarray],
) -> float:
    """Mean held-out score over folds"""
    return float(np.mean(cv_fold_scores(dataset, kernel, cfg, split)))


def _grid(cvcfg: CVConfig) -> list[tuple[float, float, float]]:
    return list(itertools.product(cvcfg.lambda1_grid, cvcfg.lambda2_grid, cvcfg.lambda3_grid))


def cv_select(
    dataset: FunctionalDataset,
    kernel: KernelSpec | None,
    cvcfg: CVConfig,
    base: Optional[PenaltyConfig] = None,
    n_jobs: Optional[int] = None,
) -> tuple[PenaltyConfig, pd.DataFrame]:
    """
    Pick the penalty levels with the smallest mean fold score

    Args:
        dataset: Training data
        kernel: Reproducing kernel
        cvcfg: Folds, seed and lambda grids
        base: Supplies epsilon and l_max for every fit
        n_jobs: Worker threads (solver settings default)

    Returns:
        Selected PenaltyConfig and the score table (one row per grid point and fold)

    Raises:
        SelectionError: every grid point failed on some fold
    """
    base = base or PenaltyConfig(lambda1=1.0)
    n_jobs = n_jobs or get_solver_settings().n_jobs
    split = kfold_split(dataset.T, cvcfg.folds, cvcfg.seed)
    folds = prepare_folds(dataset, kernel, split)
    grid = _grid(cvcfg)

    def evaluate(point: tuple[float, float, float]) -> Optional[list[float]]:
        cfg = base.with_lambdas(*point)
        try:
            scores = cv_fold_scores(dataset, kernel, cfg, split, folds)
        except FoldFitError as e:
            logger.warning("cv_grid_point_failed", lambda1=point[0], lambda2=point[1], lambda3=point[2],
                           fold=e.fold, error=str(e.cause))
            return None
        logger.debug("cv_grid_point_scored", lambda1=point[0], lambda2=point[1], lambda3=point[2],
                     mean_score=float(np.mean(scores)))
        return scores

    if n_jobs > 1 and len(grid) > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as executor:
            results = list(executor.map(evaluate, grid))
    else:
        results = [evaluate(point) for point in grid]

    rows = []
    best_key = None
    best_point = None
    for point, scores in zip(grid, results):
        if scores is None:
            for fold in range(len(folds)):
                rows.append((*point, fold, np.nan, np.nan))
            continue
        mean = float(np.mean(scores))
        for fold, score in enumerate(scores):
            rows.append((*point, fold, score, mean))
        # ties go to the larger penalties
        key = (mean, -point[0], -point[1], -point[2])
        if best_key is None or key < best_key:
            best_key, best_point = key, point

    table = pd.DataFrame(rows, columns=SCORE_COLUMNS)
    if best_point is None:
        raise SelectionError(f"all {len(grid)} grid points failed")

    selected = base.with_lambdas(*best_point)
    logger.debug(
        "cv_selected",
        lambda1=selected.lambda1,
        lambda2=selected.lambda2,
        lambda3=selected.lambda3,
        mean_score=best_key[0],
        grid_size=len(grid)
    )
    return selected, table
