"""
Sample grids on [0, 1] with Riemann quadrature weights

    w(i) = (n + 1) * (points[i] - points[i - 1]),  points[-1] = 0

so that (1/n) * sum_i w(i) f(points[i]) approximates the integral of f.
"""

from dataclasses import dataclass, field

import numpy as np

from src.errors import GridError


@dataclass(frozen=True)
class SampleGrid:
    """Strictly increasing sample points in [0, 1] and their quadrature weights"""
    points: np.ndarray
    weights: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Weighted Riemann sum along the first axis: (1/n) sum_i w(i) values[i]"""
        values = np.asarray(values, dtype=float)
        return np.tensordot(self.weights, values, axes=(0, 0)) / self.size

    def same_as(self, other: "SampleGrid") -> bool:
        return self.size == other.size and np.array_equal(self.points, other.points)


def quadrature_weights(points: np.ndarray) -> np.ndarray:
    n = points.shape[0]
    weights = (n + 1) * np.diff(points, prepend=0.0)
    # equispaced grids i / (n + 1) give exactly 1 up to rounding
    weights[np.abs(weights - 1.0) <= 1e-12] = 1.0
    return weights


def make_grid(points) -> SampleGrid:
    """Validate points and attach quadrature weights"""
    points = np.array(points, dtype=float).ravel()
    if points.size == 0:
        raise GridError("a grid needs at least one point")
    if not np.all(np.isfinite(points)):
        raise GridError("grid points must be finite")
    out_of_range = points[(points < 0.0) | (points > 1.0)]
    if out_of_range.size:
        raise GridError(f"grid points must lie in [0, 1], got {out_of_range[0]!r}")
    if np.any(np.diff(points) <= 0.0):
        raise GridError("grid points must be strictly increasing without duplicates")
    weights = quadrature_weights(points)
    if np.any(weights <= 0.0):
        raise GridError("first grid point must be > 0 so every weight is positive")
    points.setflags(write=False)
    weights.setflags(write=False)
    return SampleGrid(points=points, weights=weights)


def canonical_grid(n: int) -> SampleGrid:
    """Equispaced points i / (n + 1), i = 1..n; every weight equals 1"""
    if n < 1:
        raise GridError(f"grid size must be >= 1, got {n}")
    return make_grid(np.arange(1, n + 1, dtype=float) / (n + 1))


def uniform_random_grid(n: int, rng: np.random.Generator) -> SampleGrid:
    """Sorted i.i.d. Unif[0, 1] sample points drawn from rng; redraws on ties or a zero"""
    if n < 1:
        raise GridError(f"grid size must be >= 1, got {n}")
    while True:
        points = np.sort(rng.uniform(0.0, 1.0, size=n))
        if points[0] > 0.0 and np.all(np.diff(points) > 0.0):
            return make_grid(points)
