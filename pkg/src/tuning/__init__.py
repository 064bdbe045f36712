"""
Penalty selection by k-fold cross-validation
"""

from src.tuning.cross_validation import kfold_split, cv_score, cv_fold_scores, cv_select
from src.tuning.presets import PRESET_GRIDS, preset_config, preset_names, default_preset

__all__ = [
    "kfold_split",
    "cv_score",
    "cv_fold_scores",
    "cv_select",
    "PRESET_GRIDS",
    "preset_config",
    "preset_names",
    "default_preset",
]
