"""
Named penalty grids

    fof    lambda1 in 10^(-15:0.5:2), no vector penalties (function-on-function)
    mixed  lambda1, lambda2 in 10^(-18:1:-1), lambda3 in 10^(-1:1:3)
"""

import numpy as np

from src.errors import ParameterError
from src.models import CVConfig


def _powers(start: float, stop: float, step: float) -> list[float]:
    exponents = np.arange(start, stop + step / 2, step)
    return [float(10.0 ** e) for e in exponents]


PRESET_GRIDS: dict[str, dict[str, list[float]]] = {
    "fof": {
        "lambda1_grid": _powers(-15, 2, 0.5),
        "lambda2_grid": [0.0],
        "lambda3_grid": [0.0],
    },
    "mixed": {
        "lambda1_grid": _powers(-18, -1, 1),
        "lambda2_grid": _powers(-18, -1, 1),
        "lambda3_grid": _powers(-1, 3, 1),
    },
}


def preset_names() -> list[str]:
    return sorted(PRESET_GRIDS)


def preset_config(name: str, folds: int = 5, seed: int = 0) -> CVConfig:
    """CVConfig for a named grid"""
    if name not in PRESET_GRIDS:
        raise ParameterError(f"unknown preset {name!r}; expected one of {preset_names()}")
    return CVConfig(folds=folds, seed=seed, **PRESET_GRIDS[name])


def default_preset(p: int) -> str:
    """Grid used when none is configured"""
    return "fof" if p == 0 else "mixed"
