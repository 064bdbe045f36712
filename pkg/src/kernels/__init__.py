"""
Reproducing kernels and symmetric spectral utilities
"""

from src.kernels.bernoulli import kernel_eval, cross_gram, gram_matrix
from src.kernels.spectral import SymmetricSpectrum, sym_eig, spectral_power

__all__ = [
    "kernel_eval",
    "cross_gram",
    "gram_matrix",
    "SymmetricSpectrum",
    "sym_eig",
    "spectral_power",
]
