"""
Symmetric eigendecomposition and floored matrix powers

Gram matrices of smooth kernels are numerically rank deficient, so
fractional and negative powers are taken on eigenvalues floored at
max(eigenvalue) * eigen_floor.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from src.config import get_solver_settings
from src.errors import NotPSDError, NumericError, ParameterError, ShapeError

ALLOWED_EXPONENTS = (0.5, -0.5, -1.0)


@dataclass(frozen=True)
class SymmetricSpectrum:
    """Eigenvalues in descending order with matching orthonormal eigenvectors (columns)"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T

    def floored(self, eigen_floor: float | None = None) -> np.ndarray:
        """Eigenvalues clipped from below at max(eigenvalue) * eigen_floor"""
        eigen_floor = get_solver_settings().eigen_floor if eigen_floor is None else eigen_floor
        top = self.eigenvalues[0] if self.size else 0.0
        if top <= 0.0:
            raise NumericError("matrix has no positive eigenvalue; power is undefined")
        return np.maximum(self.eigenvalues, top * eigen_floor)

    def power(self, exponent: float, eigen_floor: float | None = None) -> np.ndarray:
        """U diag(floored(d) ** exponent) U^T"""
        d = self.floored(eigen_floor) ** exponent
        return (self.eigenvectors * d) @ self.eigenvectors.T


def _symmetrize(m, tolerance: float) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    scale = max(np.abs(m).max(initial=0.0), 1.0)
    asymmetry = np.abs(m - m.T).max(initial=0.0)
    if asymmetry > tolerance * scale:
        raise ShapeError(f"matrix is not symmetric (max asymmetry {asymmetry:.3e})")
    return 0.5 * (m + m.T)


def sym_eig(m) -> SymmetricSpectrum:
    """Eigendecomposition of a symmetric matrix, eigenvalues descending"""
    settings = get_solver_settings()
    sym = _symmetrize(m, settings.symmetry_tolerance)
    try:
        values, vectors = linalg.eigh(sym)
    except linalg.LinAlgError as e:
        raise NumericError(f"eigendecomposition failed: {e}") from e
    order = np.argsort(values)[::-1]
    return SymmetricSpectrum(eigenvalues=values[order], eigenvectors=vectors[:, order])


def check_psd(spectrum: SymmetricSpectrum) -> None:
    """Raise NotPSDError when an eigenvalue is below -psd_tolerance * max"""
    tolerance = get_solver_settings().psd_tolerance
    top = max(spectrum.eigenvalues[0], 0.0) if spectrum.size else 0.0
    lowest = spectrum.eigenvalues[-1] if spectrum.size else 0.0
    if lowest < -tolerance * top or (top == 0.0 and lowest < 0.0):
        raise NotPSDError(f"matrix is not positive semidefinite (min eigenvalue {lowest:.3e}, max {top:.3e})")


def spectral_power(m, exponent: float) -> np.ndarray:
    """Floored symmetric matrix power for exponent in {1/2, -1/2, -1}"""
    if not any(np.isclose(exponent, allowed) for allowed in ALLOWED_EXPONENTS):
        raise ParameterError(f"unsupported exponent {exponent}; expected one of {ALLOWED_EXPONENTS}")
    spectrum = sym_eig(m)
    check_psd(spectrum)
    return spectrum.power(exponent)
