"""
Replicated simulation studies
Slow: each test runs tens to hundreds of simulate / select / fit cycles
"""

import numpy as np
import pytest
from scipy.stats import binomtest

from src.bench.harness import run_cell
from src.data.simulation import simulate
from src.estimator.solver import fit
from src.models import BenchCell, CVConfig, ScenarioKind, SimulationScenario
from src.tuning.cross_validation import cv_select
from src.tuning.presets import preset_config


@pytest.mark.slow
class TestFunctionOnFunctionStudy:
    """Scenario A, n = 5, T = 50, q = 5, no vector covariates"""

    def test_desk_scale_rmise(self):
        """100 replicates land in the band around the published 9.14"""
        cell = BenchCell(scenario=ScenarioKind.A_EXPONENTIAL, n=5, T=50, q=5, kappa=1.0, p=0)

        table = run_cell(cell, replicates=100, seed=0, cvcfg=preset_config("fof"), timing=False)

        assert 7.0 <= table.iloc[-1]["rmise_x100"] <= 12.0

    def test_signal_to_noise_ordering(self):
        """RMISE decreases in kappa on average and replicate by replicate"""
        scores = {}
        for kappa in (0.5, 1.0, 2.0):
            cell = BenchCell(scenario=ScenarioKind.A_EXPONENTIAL, n=5, T=50, q=5, kappa=kappa, p=0)
            table = run_cell(cell, replicates=50, seed=0, cvcfg=preset_config("fof"), timing=False)
            scores[kappa] = table["rmise_x100"].iloc[:-1].to_numpy(dtype=float)

        assert scores[0.5].mean() > scores[1.0].mean() > scores[2.0].mean()
        for low, high in ((0.5, 1.0), (1.0, 2.0)):
            wins = int(np.sum(scores[low] > scores[high]))
            assert binomtest(wins, n=50, p=0.5, alternative="greater").pvalue < 0.01


@pytest.mark.slow
class TestGroupSelectionStudy:
    """Scenario A with p = 3 where only the first covariate matters"""

    def test_irrelevant_groups_zeroed(self):
        cvcfg = CVConfig(
            folds=5,
            lambda1_grid=[1e-8, 1e-6, 1e-4],
            lambda2_grid=[1e-10, 1e-6],
            lambda3_grid=[1.0, 10.0, 100.0, 1000.0],
        )
        hits = 0
        for seed in range(50):
            scenario = SimulationScenario(kind=ScenarioKind.A_EXPONENTIAL, q=20, kappa=2.0, p=3, seed=seed)
            data, _ = simulate(scenario, 20, 20, 100)
            selected, _ = cv_select(data, None, cvcfg)
            fitted = fit(data, None, selected)
            hits += fitted.active_groups() == [0]

        assert hits / 50 > 0.6
