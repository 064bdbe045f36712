"""
Tests for sample grids, quadrature weights and datasets
"""

import numpy as np
import pytest

from src.data.dataset import FunctionalDataset
from src.data.grid import canonical_grid, make_grid, uniform_random_grid
from src.errors import GridError, ShapeError


class TestQuadrature:
    """Riemann weights on [0, 1]"""

    @pytest.mark.parametrize("n", [1, 5, 20, 40, 99])
    def test_canonical_weights_exactly_one(self, n):
        """Equispaced grids i / (n + 1) get unit weights"""
        grid = canonical_grid(n)

        assert np.all(grid.weights == 1.0)

    @pytest.mark.parametrize("n", [5, 20, 40])
    def test_constant_integrates_to_one(self, n):
        """The quadrature of 1 on a canonical grid is exactly 1"""
        assert canonical_grid(n).integrate(np.ones(n)) == 1.0

    def test_nonuniform_weights(self):
        """w(i) = (n + 1)(s_i - s_{i-1}) with s_0 = 0"""
        grid = make_grid([0.1, 0.5, 0.6])

        assert np.allclose(grid.weights, [0.4, 1.6, 0.4])

    def test_integrate_columns(self):
        """Integration runs along the first axis"""
        grid = canonical_grid(4)
        values = np.column_stack([np.ones(4), 2 * np.ones(4)])

        assert np.allclose(grid.integrate(values), [1.0, 2.0])


class TestGridValidation:
    """Invalid point sets"""

    @pytest.mark.parametrize("points", [[0.5, 0.2], [0.2, 0.2], [0.3, 1.5], [-0.1, 0.5], [0.0, 0.5], []])
    def test_rejected(self, points):
        """Unsorted, duplicated, out of range, zero-weight and empty grids fail"""
        with pytest.raises(GridError):
            make_grid(points)

    def test_read_only(self):
        """Grid arrays cannot be mutated"""
        grid = canonical_grid(3)
        with pytest.raises(ValueError):
            grid.points[0] = 0.9

    def test_random_grid_deterministic(self):
        """Same seed, same points"""
        first = uniform_random_grid(10, np.random.default_rng(3))
        second = uniform_random_grid(10, np.random.default_rng(3))

        assert np.array_equal(first.points, second.points)
        assert np.all(np.diff(first.points) > 0)


class TestFunctionalDataset:
    """Shape checks and subject selection"""

    def test_shape_mismatch(self):
        """X rows must match the x_grid"""
        with pytest.raises(ShapeError):
            FunctionalDataset(
                x_grid=canonical_grid(3), y_grid=canonical_grid(2),
                X=np.zeros((4, 5)), Y=np.zeros((2, 5)), Z=np.zeros((0, 5))
            )

    def test_subject_mismatch(self):
        """Y and Z need one column per subject"""
        with pytest.raises(ShapeError):
            FunctionalDataset(
                x_grid=canonical_grid(3), y_grid=canonical_grid(2),
                X=np.zeros((3, 5)), Y=np.zeros((2, 4)), Z=np.zeros((0, 5))
            )

    def test_subset_preserves_order(self, tiny_mixed_dataset):
        """subset keeps the requested column order"""
        part = tiny_mixed_dataset.subset([3, 1])

        assert part.T == 2
        assert np.array_equal(part.Y[:, 0], tiny_mixed_dataset.Y[:, 3])
        assert np.array_equal(part.Z[:, 1], tiny_mixed_dataset.Z[:, 1])
