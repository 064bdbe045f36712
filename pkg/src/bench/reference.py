"""
Published RMISE_avg x 100 of the RKHS estimator

Keyed by (table, scenario, n, T, q) with one value per kappa in 0.5, 1, 2.
"fof" is the function-on-function study (p = 0) and "mixed" the study with
p = 3 vector covariates. Used only for comparison columns.
"""

from typing import Optional

from src.models import ScenarioKind

KAPPAS = (0.5, 1.0, 2.0)

_A = ScenarioKind.A_EXPONENTIAL
_B = ScenarioKind.B_RANDOM

REFERENCE_RMISE_X100: dict[tuple[str, ScenarioKind, int, int, int], tuple[float, float, float]] = {
    ("fof", _A, 5, 50, 5): (15.98, 9.14, 4.99),
    ("fof", _B, 5, 50, 5): (20.86, 10.42, 5.21),
    ("fof", _A, 20, 100, 20): (10.61, 5.89, 3.60),
    ("fof", _B, 20, 100, 20): (37.41, 18.39, 9.19),
    ("fof", _A, 40, 200, 50): (7.37, 3.98, 2.34),
    ("fof", _B, 40, 200, 50): (39.22, 20.75, 12.59),
    ("mixed", _A, 5, 50, 5): (17.16, 9.43, 5.03),
    ("mixed", _B, 5, 50, 5): (14.81, 7.42, 3.72),
    ("mixed", _A, 20, 100, 20): (11.25, 5.95, 3.38),
    ("mixed", _B, 20, 100, 20): (23.95, 11.83, 5.92),
    ("mixed", _A, 40, 200, 50): (8.50, 4.36, 2.33),
    ("mixed", _B, 40, 200, 50): (27.52, 14.23, 8.20),
}


def table_for(p: int) -> Optional[str]:
    if p == 0:
        return "fof"
    if p == 3:
        return "mixed"
    return None


def reference_value(scenario: ScenarioKind, n: int, T: int, q: int, kappa: float, p: int) -> Optional[float]:
    """Published value for a cell, or None when the cell was not studied"""
    table = table_for(p)
    if table is None:
        return None
    values = REFERENCE_RMISE_X100.get((table, ScenarioKind(scenario), n, T, q))
    if values is None:
        return None
    for k, value in zip(KAPPAS, values):
        if abs(k - kappa) < 1e-12:
            return value
    return None
