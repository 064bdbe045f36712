"""
Tests for k-fold cross-validation and preset grids
"""

import numpy as np
import pytest

from src.data.dataset import FunctionalDataset
from src.data.grid import canonical_grid
from src.errors import FoldFitError, ParameterError, SelectionError
from src.kernels.bernoulli import gram_matrix
from src.tuning.cross_validation import SCORE_COLUMNS, cv_score, cv_select, kfold_split
from src.tuning.presets import PRESET_GRIDS, default_preset, preset_config, preset_names
from tests.factories import CVConfigFactory, PenaltyConfigFactory


class TestKFoldSplit:
    """Seeded fold assignment"""

    def test_partition(self):
        blocks = kfold_split(23, 5, seed=3)
        everything = np.sort(np.concatenate(blocks))

        assert np.array_equal(everything, np.arange(23))
        assert {len(block) for block in blocks} <= {4, 5}
        assert all(np.all(np.diff(block) > 0) for block in blocks)

    def test_deterministic(self):
        first = kfold_split(30, 5, seed=1)
        second = kfold_split(30, 5, seed=1)

        assert all(np.array_equal(a, b) for a, b in zip(first, second))

    def test_seed_changes_assignment(self):
        first = kfold_split(30, 5, seed=1)
        second = kfold_split(30, 5, seed=2)

        assert not all(np.array_equal(a, b) for a, b in zip(first, second))

    @pytest.mark.parametrize("T,folds", [(10, 1), (3, 5)])
    def test_invalid(self, T, folds):
        with pytest.raises(ParameterError):
            kfold_split(T, folds, seed=0)


class TestCVScore:
    """Held-out criterion of one penalty configuration"""

    def test_heavy_shrinkage_scores_held_out_energy(self, tiny_dataset):
        """With lambda1 huge the predictions vanish and the score is the weighted energy of Y"""
        data = tiny_dataset
        split = kfold_split(data.T, 2, seed=0)
        energy = [
            np.mean(np.mean(data.y_grid.weights[:, None] * data.Y[:, block] ** 2, axis=0))
            for block in split
        ]

        score = cv_score(data, None, PenaltyConfigFactory(lambda1=1e12), split)

        assert score == pytest.approx(np.mean(energy), rel=1e-6)

    def test_noiseless_in_span_scores_near_zero(self, rng):
        """Y generated by a representer surface is recovered on held-out subjects"""
        x_grid, y_grid = canonical_grid(3), canonical_grid(3)
        X = rng.standard_normal((3, 12))
        R0 = rng.standard_normal((3, 3))
        K1, K2 = gram_matrix(None, y_grid.points), gram_matrix(None, x_grid.points)
        Y = K1 @ R0 @ K2 @ (x_grid.weights[:, None] * X) / 3
        data = FunctionalDataset(x_grid=x_grid, y_grid=y_grid, X=X, Y=Y, Z=np.zeros((0, 12)))
        energy = float(np.mean(y_grid.weights[:, None] * Y ** 2))

        score = cv_score(data, None, PenaltyConfigFactory(lambda1=1e-12), kfold_split(12, 3, seed=5))

        assert 0.0 <= score <= 1e-8 * energy


class TestCVSelect:
    """Grid search"""

    def test_selects_minimum(self, simulated_a):
        data, _ = simulated_a
        cvcfg = CVConfigFactory(lambda1_grid=[1e-8, 1e-5, 1e-2, 10.0])

        selected, table = cv_select(data, None, cvcfg)

        means = table.groupby("lambda1")["mean_score"].first()
        assert list(table.columns) == SCORE_COLUMNS
        assert len(table) == 4 * cvcfg.folds
        assert selected.lambda1 == means.idxmin()

    def test_mean_matches_cv_score(self, simulated_a):
        data, _ = simulated_a
        cvcfg = CVConfigFactory(lambda1_grid=[1e-4])
        _, table = cv_select(data, None, cvcfg, base=PenaltyConfigFactory())
        split = kfold_split(data.T, cvcfg.folds, cvcfg.seed)

        score = cv_score(data, None, PenaltyConfigFactory(lambda1=1e-4), split)

        assert table["mean_score"].iloc[0] == pytest.approx(score)

    def test_ties_prefer_larger_penalties(self, tiny_mixed_dataset, mocker):
        mocker.patch("src.tuning.cross_validation.cv_fold_scores", return_value=[1.0, 1.0, 1.0])
        cvcfg = CVConfigFactory(lambda1_grid=[1e-3, 1e-1], lambda2_grid=[0.0, 1.0], lambda3_grid=[0.0, 2.0])

        selected, _ = cv_select(tiny_mixed_dataset, None, cvcfg)

        assert (selected.lambda1, selected.lambda2, selected.lambda3) == (1e-1, 1.0, 2.0)

    def test_base_controls_kept(self, simulated_a):
        """epsilon and l_max come from the base configuration"""
        data, _ = simulated_a
        base = PenaltyConfigFactory(epsilon=1e-5, l_max=7)

        selected, _ = cv_select(data, None, CVConfigFactory(), base=base)

        assert (selected.epsilon, selected.l_max) == (1e-5, 7)

    def test_parallel_matches_sequential(self, simulated_mixed):
        data, _ = simulated_mixed
        cvcfg = CVConfigFactory(lambda1_grid=[1e-5, 1e-2], lambda2_grid=[1e-6], lambda3_grid=[0.1, 10.0])

        sequential, seq_table = cv_select(data, None, cvcfg, n_jobs=1)
        parallel, par_table = cv_select(data, None, cvcfg, n_jobs=3)

        assert sequential == parallel
        assert seq_table.equals(par_table)

    def test_failed_points_recorded(self, tiny_dataset, mocker):
        """A failing grid point gets NaN rows and is never selected"""
        def scores(dataset, kernel, cfg, split, folds=None):
            if cfg.lambda1 == 1e-3:
                raise FoldFitError(0, ParameterError("boom"))
            return [2.0, 2.0, 2.0]

        mocker.patch("src.tuning.cross_validation.cv_fold_scores", side_effect=scores)
        cvcfg = CVConfigFactory(lambda1_grid=[1e-3, 1e-1])

        selected, table = cv_select(tiny_dataset, None, cvcfg)

        assert selected.lambda1 == 1e-1
        assert table[table["lambda1"] == 1e-3]["mean_score"].isna().all()

    def test_all_points_fail(self, tiny_dataset, mocker):
        mocker.patch(
            "src.tuning.cross_validation.cv_fold_scores",
            side_effect=FoldFitError(1, ParameterError("boom")),
        )

        with pytest.raises(SelectionError):
            cv_select(tiny_dataset, None, CVConfigFactory())


class TestPresets:
    """Named grids"""

    def test_function_on_function_grid(self):
        grid = PRESET_GRIDS["fof"]["lambda1_grid"]

        assert len(grid) == 35
        assert grid[0] == pytest.approx(1e-15)
        assert grid[-1] == pytest.approx(1e2)

    def test_mixed_grid(self):
        cfg = preset_config("mixed", folds=4, seed=2)

        assert (len(cfg.lambda1_grid), len(cfg.lambda2_grid), len(cfg.lambda3_grid)) == (18, 18, 5)
        assert cfg.lambda3_grid[0] == pytest.approx(0.1)
        assert cfg.folds == 4

    def test_unknown(self):
        with pytest.raises(ParameterError):
            preset_config("nope")

    def test_defaults(self):
        assert preset_names() == ["fof", "mixed"]
        assert default_preset(0) == "fof"
        assert default_preset(3) == "mixed"
