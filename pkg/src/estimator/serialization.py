"""
JSON model files
"""

from pathlib import Path

import numpy as np
import structlog
from pydantic import ValidationError

from src.data.grid import make_grid
from src.errors import GridError, ParseError, ShapeError
from src.estimator.solver import CoefficientFit
from src.models import ModelFile

logger = structlog.get_logger()


def to_model_file(fitted: CoefficientFit) -> ModelFile:
    return ModelFile(
        kernel=fitted.kernel,
        x_grid=fitted.x_grid.points.tolist(),
        y_grid=fitted.y_grid.points.tolist(),
        R=fitted.R.tolist(),
        B=fitted.B.tolist(),
        p=fitted.p,
        penalty=fitted.penalty,
        converged=fitted.converged,
        iterations=fitted.iterations,
        objective_trace=list(fitted.objective_trace),
    )


def from_model_file(record: ModelFile) -> CoefficientFit:
    try:
        x_grid = make_grid(record.x_grid)
        y_grid = make_grid(record.y_grid)
    except GridError as e:
        raise ParseError(f"invalid grid in model file: {e}") from e
    R = np.asarray(record.R, dtype=float).reshape(y_grid.size, -1)
    B = np.asarray(record.B, dtype=float).reshape(y_grid.size, record.p)
    if R.shape != (y_grid.size, x_grid.size):
        raise ShapeError(f"R must be {y_grid.size} x {x_grid.size}, got {R.shape}")
    return CoefficientFit(
        R=R,
        B=B,
        converged=record.converged,
        iterations=record.iterations,
        objective_trace=list(record.objective_trace),
        x_grid=x_grid,
        y_grid=y_grid,
        penalty=record.penalty,
        kernel=record.kernel,
    )


def save_model(fitted: CoefficientFit, path) -> Path:
    """Write a fit as JSON; floats keep their exact repr"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_model_file(fitted).model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.debug("model_saved", path=str(path))
    return path


def load_model(path) -> CoefficientFit:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read model file: {e}", path=str(path)) from e
    try:
        record = ModelFile.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"malformed model file: {e.errors()[0]['msg']}", path=str(path)) from e
    return from_model_file(record)
