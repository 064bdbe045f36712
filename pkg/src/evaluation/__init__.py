"""
Prediction, accuracy metrics and rolling backtests
"""

from src.evaluation.prediction import PredictionRequest, eval_A, eval_beta, predict, fitted_values
from src.evaluation.metrics import rmise, rmse_mae, discretized_excess_risk, oracle_signal

__all__ = [
    "PredictionRequest",
    "eval_A",
    "eval_beta",
    "predict",
    "fitted_values",
    "rmise",
    "rmse_mae",
    "discretized_excess_risk",
    "oracle_signal",
]
