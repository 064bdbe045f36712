"""
Tests for the Bernoulli kernel and spectral utilities
"""

import numpy as np
import pytest

from src.errors import DomainError, NotPSDError, NumericError, ParameterError, ShapeError, SizeError
from src.kernels.bernoulli import cross_gram, gram_matrix, kernel_eval
from src.kernels.spectral import check_psd, spectral_power, sym_eig


class TestBernoulliKernel:
    """Kernel values and Gram matrices"""

    def test_known_values(self):
        """K(0, 0) and K(0, 1) in closed form"""
        assert kernel_eval(None, 0.0, 0.0) == pytest.approx(1 + 1 / 4 + 1 / 144 + 1 / 720, abs=1e-14)
        assert kernel_eval(None, 0.0, 1.0) == pytest.approx(1 - 1 / 4 + 1 / 144 + 1 / 720, abs=1e-14)

    def test_symmetric(self):
        """K(x, y) = K(y, x)"""
        assert kernel_eval(None, 0.2, 0.7) == pytest.approx(kernel_eval(None, 0.7, 0.2), abs=1e-15)

    def test_domain(self):
        """Arguments outside [0, 1] are rejected"""
        with pytest.raises(DomainError):
            kernel_eval(None, -0.1, 0.5)
        with pytest.raises(DomainError):
            cross_gram(None, [0.5, 1.2], [0.3])

    def test_gram_symmetric_psd(self, rng):
        """Gram matrices are exactly symmetric and PSD"""
        points = np.sort(rng.uniform(0.0, 1.0, size=12))
        gram = gram_matrix(None, points)

        assert np.array_equal(gram, gram.T)
        assert np.linalg.eigvalsh(gram).min() > -1e-10

    def test_cross_gram_shape(self):
        """Cross Gram has one row per row point"""
        assert cross_gram(None, [0.1, 0.2, 0.3], [0.5, 0.6]).shape == (3, 2)

    def test_gram_matches_pairwise(self):
        """Gram entries equal pointwise evaluation"""
        points = np.array([0.1, 0.45, 0.9])
        gram = gram_matrix(None, points)

        assert gram[0, 2] == pytest.approx(kernel_eval(None, 0.1, 0.9), abs=1e-15)

    def test_empty_points(self):
        """An empty point set has no Gram matrix"""
        with pytest.raises(SizeError):
            gram_matrix(None, [])


class TestSpectral:
    """Eigendecomposition and floored powers"""

    def test_eigenvalues_descending(self):
        """sym_eig orders eigenvalues from largest to smallest"""
        spectrum = sym_eig(np.diag([1.0, 3.0, 2.0]))

        assert spectrum.eigenvalues.tolist() == [3.0, 2.0, 1.0]
        assert np.allclose(spectrum.reconstruct(), np.diag([1.0, 3.0, 2.0]))

    def test_square_root(self):
        """K^{1/2} K^{1/2} = K"""
        gram = gram_matrix(None, np.arange(1, 6) / 6)
        half = spectral_power(gram, 0.5)

        assert np.allclose(half @ half, gram, atol=1e-10)

    def test_inverse(self):
        """K^{-1} K = I on a well conditioned matrix"""
        m = np.array([[2.0, 0.5], [0.5, 1.0]])

        assert np.allclose(spectral_power(m, -1.0) @ m, np.eye(2), atol=1e-12)

    def test_inverse_square_root(self):
        """K^{-1/2} K K^{-1/2} = I"""
        m = np.array([[4.0, 1.0], [1.0, 3.0]])
        inv_half = spectral_power(m, -0.5)

        assert np.allclose(inv_half @ m @ inv_half, np.eye(2), atol=1e-12)

    def test_floor_on_singular(self):
        """Zero eigenvalues are floored instead of producing infinities"""
        m = np.array([[1.0, 1.0], [1.0, 1.0]])

        assert np.all(np.isfinite(spectral_power(m, -1.0)))

    def test_unsupported_exponent(self):
        """Only 1/2, -1/2 and -1 are supported"""
        with pytest.raises(ParameterError):
            spectral_power(np.eye(2), 2.0)

    def test_not_symmetric(self):
        """Asymmetric input is a shape error"""
        with pytest.raises(ShapeError):
            sym_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_not_square(self):
        with pytest.raises(ShapeError):
            sym_eig(np.ones((2, 3)))

    def test_not_psd(self):
        """A clearly indefinite matrix is rejected"""
        with pytest.raises(NotPSDError):
            check_psd(sym_eig(np.diag([1.0, -0.5])))

    def test_zero_matrix(self):
        """Powers of the zero matrix are undefined"""
        with pytest.raises(NumericError):
            spectral_power(np.zeros((2, 2)), -1.0)
