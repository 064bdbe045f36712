"""
Tests for the simulation benchmark harness
"""

import numpy as np
import pytest

from src.bench.harness import BENCH_COLUMNS, holdout_size, run_bench, run_cell, run_replicate
from src.bench.reference import reference_value, table_for
from src.models import ScenarioKind
from tests.factories import BenchCellFactory, CVConfigFactory


@pytest.fixture
def small_cv():
    return CVConfigFactory(folds=2, lambda1_grid=[1e-6, 1e-3, 1.0])


class TestReference:
    """Published comparison values"""

    def test_lookup(self):
        assert reference_value(ScenarioKind.A_EXPONENTIAL, 5, 50, 5, 1.0, 0) == 9.14
        assert reference_value(ScenarioKind.B_RANDOM, 40, 200, 50, 2.0, 3) == 8.20

    def test_unknown_cells(self):
        assert reference_value(ScenarioKind.A_EXPONENTIAL, 5, 50, 5, 3.0, 0) is None
        assert reference_value(ScenarioKind.A_EXPONENTIAL, 7, 50, 5, 1.0, 0) is None
        assert table_for(2) is None


class TestReplicates:
    """Single replicates and cells"""

    def test_holdout_size(self):
        assert holdout_size(50) == 25
        assert holdout_size(1) == 1

    def test_replicate(self, small_cv):
        result = run_replicate(BenchCellFactory(), seed=3, cvcfg=small_cv)

        assert result.seed == 3
        assert 0.0 < result.rmise_x100 < 100.0
        assert result.lambda1 in small_cv.lambda1_grid
        assert result.runtime_ms > 0.0

    def test_no_timing(self, small_cv):
        result = run_replicate(BenchCellFactory(), seed=3, cvcfg=small_cv, timing=False)

        assert result.runtime_ms == 0.0

    def test_cell_rows(self, small_cv):
        """One row per replicate plus the average row"""
        table = run_cell(BenchCellFactory(T=50), replicates=3, seed=10, cvcfg=small_cv, timing=False)

        assert list(table.columns) == BENCH_COLUMNS
        assert list(table["seed"]) == [10, 11, 12, "avg"]
        average = table.iloc[-1]
        assert average["rmise_x100"] == pytest.approx(table["rmise_x100"].iloc[:3].mean())
        assert average["reference_x100"] == 9.14
        assert average["ratio_to_reference"] == pytest.approx(average["rmise_x100"] / 9.14)

    def test_parallel_matches_sequential(self, small_cv):
        cell = BenchCellFactory()
        sequential = run_cell(cell, replicates=3, cvcfg=small_cv, n_jobs=1, timing=False)
        parallel = run_cell(cell, replicates=3, cvcfg=small_cv, n_jobs=3, timing=False)

        assert sequential.equals(parallel)

    def test_bench_stacks_cells(self, small_cv):
        cells = [BenchCellFactory(kappa=0.5), BenchCellFactory(kappa=2.0)]

        table = run_bench(cells, replicates=2, cvcfg=small_cv, timing=False)

        assert len(table) == 6
        assert list(table["kappa"].unique()) == [0.5, 2.0]
        assert np.isnan(table.iloc[2]["reference_x100"])
