"""
Precomputed solver state

Gram matrices, weight vectors, transformed kernels and the spectral
factors of the ridge step depend only on the grids, X and Z. They are
built once per dataset and shared by every fit on it, including all
penalty levels of a cross-validation grid.
"""

from dataclasses import dataclass

import numpy as np
import structlog

from src.data.dataset import FunctionalDataset
from src.data.grid import SampleGrid
from src.kernels.bernoulli import gram_matrix
from src.kernels.spectral import SymmetricSpectrum, check_psd, sym_eig
from src.models import KernelSpec

logger = structlog.get_logger()


@dataclass(frozen=True)
class SolverWorkspace:
    """
    Read-only matrices reused across iterations and fits

    Diagonal weight matrices are kept as vectors: wr_sqrt holds the
    diagonal of W_R (square roots of the y-grid weights) and ws holds the
    diagonal of W_S (the x-grid weights themselves).
    """
    kernel: KernelSpec
    x_grid: SampleGrid
    y_grid: SampleGrid
    X: np.ndarray
    Z: np.ndarray
    Y: np.ndarray

    K1: np.ndarray
    K2: np.ndarray
    wr_sqrt: np.ndarray
    ws: np.ndarray
    K1star: np.ndarray
    K2star: np.ndarray
    K1star_inv: np.ndarray
    K3: np.ndarray
    Ystar: np.ndarray

    K1_half: np.ndarray
    K1_inv_half: np.ndarray
    K2_half: np.ndarray
    K2_inv_half: np.ndarray

    # (1/n1) K2* X, so that (1/n1) K1* R K2* X = K1* R design_x
    design_x: np.ndarray
    # X^T W_S K2^{1/2}, the right factor of the ridge right-hand side
    x_right: np.ndarray
    spectrum_x: SymmetricSpectrum
    spectrum_y: SymmetricSpectrum

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

    @property
    def W_R(self) -> np.ndarray:
        return np.diag(self.wr_sqrt)

    @property
    def W_S(self) -> np.ndarray:
        return np.diag(self.ws)


def _roots(gram: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """K^{1/2}, K^{-1/2}, K^{-1} from one eigendecomposition"""
    spectrum = sym_eig(gram)
    check_psd(spectrum)
    return spectrum.power(0.5), spectrum.power(-0.5), spectrum.power(-1.0)


def precompute(dataset: FunctionalDataset, kernel: KernelSpec | None = None) -> SolverWorkspace:
    """
    Build the workspace for a dataset

    Args:
        dataset: Training curves and covariates
        kernel: Reproducing kernel (Bernoulli W^{2,2} by default)

    Returns:
        SolverWorkspace reusable for any penalty configuration

    Raises:
        NumericError: a Gram eigendecomposition failed
    """
    kernel = kernel or KernelSpec()
    n1 = dataset.n1

    K1 = gram_matrix(kernel, dataset.y_grid.points)
    K2 = gram_matrix(kernel, dataset.x_grid.points)
    wr_sqrt = np.sqrt(dataset.y_grid.weights)
    ws = np.array(dataset.x_grid.weights)

    K1_half, K1_inv_half, K1_inv = _roots(K1)
    K2_half, K2_inv_half, _ = _roots(K2)

    K1star = wr_sqrt[:, None] * K1
    K2star = K2 * ws[None, :]
    K1star_inv = K1_inv / wr_sqrt[None, :]
    K3 = K1star_inv.T @ K1 @ K1star_inv
    K3 = 0.5 * (K3 + K3.T)

    X = dataset.X
    S4 = (K2_half * ws[None, :]) @ X / n1
    spectrum_x = sym_eig(S4 @ S4.T)
    spectrum_y = sym_eig((K1_half * wr_sqrt[None, :] ** 2) @ K1_half)

    workspace = SolverWorkspace(
        kernel=kernel,
        x_grid=dataset.x_grid,
        y_grid=dataset.y_grid,
        X=X,
        Z=dataset.Z,
        Y=dataset.Y,
        K1=K1,
        K2=K2,
        wr_sqrt=wr_sqrt,
        ws=ws,
        K1star=K1star,
        K2star=K2star,
        K1star_inv=K1star_inv,
        K3=K3,
        Ystar=wr_sqrt[:, None] * dataset.Y,
        K1_half=K1_half,
        K1_inv_half=K1_inv_half,
        K2_half=K2_half,
        K2_inv_half=K2_inv_half,
        design_x=K2star @ X / n1,
        x_right=(X.T * ws[None, :]) @ K2_half,
        spectrum_x=spectrum_x,
        spectrum_y=spectrum_y,
    )
    logger.debug("workspace_built", n1=n1, n2=dataset.n2, T=dataset.T, p=dataset.p)
    return workspace
