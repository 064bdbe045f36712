"""
Discretely observed functional datasets
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.data.grid import SampleGrid
from src.errors import ShapeError


@dataclass(frozen=True)
class FunctionalDataset:
    """
    Curves sharing one x_grid and one y_grid

    X is n1 x T (column t is X_t on x_grid), Y is n2 x T, Z is p x T.
    x_basis optionally holds the basis coefficients (q x T) of each X_t
    when the data were simulated, so oracle integrals can be exact.
    """
    x_grid: SampleGrid
    y_grid: SampleGrid
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    x_basis: Optional[np.ndarray] = None

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X, dtype=float))
        Y = np.atleast_2d(np.asarray(self.Y, dtype=float))
        Z = np.asarray(self.Z, dtype=float)
        if Z.ndim == 1:
            Z = Z.reshape(0, X.shape[1]) if Z.size == 0 else Z.reshape(1, -1)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "Z", Z)

        T = X.shape[1]
        if T < 1:
            raise ShapeError("a dataset needs at least one subject")
        if Y.shape[1] != T or Z.shape[1] != T:
            raise ShapeError(f"subject counts differ: X has {T}, Y has {Y.shape[1]}, Z has {Z.shape[1]}")
        if X.shape[0] != self.x_grid.size:
            raise ShapeError(f"X has {X.shape[0]} rows but x_grid has {self.x_grid.size} points")
        if Y.shape[0] != self.y_grid.size:
            raise ShapeError(f"Y has {Y.shape[0]} rows but y_grid has {self.y_grid.size} points")
        if self.x_basis is not None and np.asarray(self.x_basis).shape[1] != T:
            raise ShapeError("x_basis must have one column per subject")

    @property
    def n1(self) -> int:
        return self.x_grid.size

    @property
    def n2(self) -> int:
        return self.y_grid.size

    @property
    def T(self) -> int:
        return self.X.shape[1]

    @property
    def p(self) -> int:
        return self.Z.shape[0]

    def subset(self, indices: Sequence[int]) -> "FunctionalDataset":
        """Dataset restricted to the given subject columns (order preserved)"""
        idx = np.asarray(indices, dtype=int)
        return FunctionalDataset(
            x_grid=self.x_grid,
            y_grid=self.y_grid,
            X=self.X[:, idx],
            Y=self.Y[:, idx],
            Z=self.Z[:, idx],
            x_basis=None if self.x_basis is None else self.x_basis[:, idx],
        )
