"""
Tests for dataset, curve panel and oracle files
"""

import numpy as np
import pytest

from src.data.io import (
    CurvePanel,
    load_csv,
    load_curve_panel,
    load_oracle,
    save_csv,
    save_curve_panel,
    save_oracle,
)
from src.data.simulation import simulate
from src.errors import ParseError
from src.models import ScenarioKind
from tests.factories import SimulationScenarioFactory


class TestDatasetCSV:
    """Dataset files"""

    def test_round_trip_exact(self, tmp_path, tiny_mixed_dataset):
        """Saved reals are read back bit for bit"""
        path = save_csv(tiny_mixed_dataset, tmp_path / "data.csv")
        loaded = load_csv(path)

        assert np.array_equal(loaded.X, tiny_mixed_dataset.X)
        assert np.array_equal(loaded.Y, tiny_mixed_dataset.Y)
        assert np.array_equal(loaded.Z, tiny_mixed_dataset.Z)
        assert loaded.x_grid.same_as(tiny_mixed_dataset.x_grid)

    def test_byte_identical(self, tmp_path, tiny_dataset):
        """Saving the same dataset twice gives the same bytes"""
        first = save_csv(tiny_dataset, tmp_path / "a.csv").read_bytes()
        second = save_csv(tiny_dataset, tmp_path / "b.csv").read_bytes()

        assert first == second

    def test_no_covariates(self, tmp_path, tiny_dataset):
        loaded = load_csv(save_csv(tiny_dataset, tmp_path / "fof.csv"))

        assert loaded.p == 0
        assert loaded.Z.shape == (0, tiny_dataset.T)

    def test_ragged_row(self, tmp_path):
        """A short row is reported with its line number"""
        path = tmp_path / "bad.csv"
        path.write_text("#x_grid: 0.5\n#y_grid: 0.5\n#p: 0\n1.0,2.0\n3.0\n")

        with pytest.raises(ParseError) as info:
            load_csv(path)
        assert info.value.line == 5
        assert info.value.to_dict()["error"] == "parse"

    def test_missing_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("#x_grid: 0.5\n#p: 0\n1.0,2.0\n")

        with pytest.raises(ParseError):
            load_csv(path)

    def test_not_a_number(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("#x_grid: 0.5\n#y_grid: 0.5\n#p: 0\n1.0,abc\n")

        with pytest.raises(ParseError) as info:
            load_csv(path)
        assert info.value.line == 4

    def test_invalid_grid(self, tmp_path):
        """Unsorted grid points are a parse error on the header line"""
        path = tmp_path / "bad.csv"
        path.write_text("#x_grid: 0.5,0.2\n#y_grid: 0.5\n#p: 0\n1.0,2.0,3.0\n")

        with pytest.raises(ParseError) as info:
            load_csv(path)
        assert info.value.line == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_csv(tmp_path / "absent.csv")


class TestCurvePanel:
    """Panel files for rolling backtests"""

    def test_round_trip(self, tmp_path, rng):
        panel = CurvePanel(points=np.arange(1.0, 11.0), values=rng.standard_normal((10, 6)),
                           Z=rng.standard_normal((2, 6)))
        loaded = load_curve_panel(save_curve_panel(panel, tmp_path / "panel.csv"))

        assert np.array_equal(loaded.values, panel.values)
        assert np.array_equal(loaded.Z, panel.Z)
        assert loaded.size == 6

    def test_unsorted_points(self, tmp_path):
        path = tmp_path / "panel.csv"
        path.write_text("#points: 2,1\n#p: 0\n1.0,2.0\n")

        with pytest.raises(ParseError):
            load_curve_panel(path)


class TestOracleFile:
    """Simulation truth files"""

    def test_scenario_b_round_trip(self, tmp_path):
        """Lambda, b and basis coefficients survive JSON"""
        data, oracle = simulate(SimulationScenarioFactory(kind=ScenarioKind.B_RANDOM, p=1), 5, 5, 6)
        path = save_oracle(oracle, 4, tmp_path / "oracle.json", data.x_basis, None)

        loaded, record = load_oracle(path)

        assert np.array_equal(loaded.lam, oracle.lam)
        assert np.array_equal(loaded.b, oracle.b)
        assert np.array_equal(np.asarray(record.train_x_basis), data.x_basis)
        assert record.seed == 4
        assert np.allclose(
            loaded.signal(data.x_basis, data.Z, data.y_grid.points),
            oracle.signal(data.x_basis, data.Z, data.y_grid.points),
        )
