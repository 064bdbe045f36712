"""
Rescaled Bernoulli polynomial kernel, the reproducing kernel of W^{2,2}[0, 1]

    K(x, y) = 1 + k1(x) k1(y) + k2(x) k2(y) - k4(|x - y|)

with k1(x) = x - 1/2, k2(x) = (k1(x)^2 - 1/12) / 2 and
k4(x) = (k1(x)^4 - k1(x)^2 / 2 + 7/240) / 24.
"""

import numpy as np

from src.errors import DomainError, SizeError
from src.models import KernelKind, KernelSpec

_DEFAULT_SPEC = KernelSpec()


def _k1(x):
    return x - 0.5


def _k2(x):
    k1 = _k1(x)
    return 0.5 * (k1 * k1 - 1.0 / 12.0)


def _k4(x):
    k1sq = _k1(x) ** 2
    return (k1sq * k1sq - 0.5 * k1sq + 7.0 / 240.0) / 24.0


def _check_unit_interval(values: np.ndarray, name: str) -> None:
    if values.size and (not np.all(np.isfinite(values)) or values.min() < 0.0 or values.max() > 1.0):
        bad = values[~((values >= 0.0) & (values <= 1.0))]
        raise DomainError(f"{name} must lie in [0, 1], got {bad[:5].tolist()}")


def _bernoulli(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return 1.0 + _k1(x) * _k1(y) + _k2(x) * _k2(y) - _k4(np.abs(x - y))


def kernel_eval(spec: KernelSpec | None, x: float, y: float) -> float:
    """Evaluate the kernel at a single pair of points"""
    spec = spec or _DEFAULT_SPEC
    xy = np.array([x, y], dtype=float)
    _check_unit_interval(xy, "kernel arguments")
    if spec.kind != KernelKind.BERNOULLI_W22:
        raise DomainError(f"unsupported kernel kind {spec.kind}")
    return float(_bernoulli(xy[0], xy[1]))


def cross_gram(spec: KernelSpec | None, rows, cols) -> np.ndarray:
    """M[i, j] = K(rows[i], cols[j])"""
    spec = spec or _DEFAULT_SPEC
    rows = np.asarray(rows, dtype=float).ravel()
    cols = np.asarray(cols, dtype=float).ravel()
    _check_unit_interval(rows, "points")
    _check_unit_interval(cols, "points")
    if spec.kind != KernelKind.BERNOULLI_W22:
        raise DomainError(f"unsupported kernel kind {spec.kind}")
    return _bernoulli(rows[:, None], cols[None, :])


def gram_matrix(spec: KernelSpec | None, points) -> np.ndarray:
    """Symmetric PSD Gram matrix of the kernel on a point set"""
    points = np.asarray(points, dtype=float).ravel()
    if points.size == 0:
        raise SizeError("gram_matrix needs at least one point")
    gram = cross_gram(spec, points, points)
    # the formula is symmetric, this removes last-bit differences
    return 0.5 * (gram + gram.T)
