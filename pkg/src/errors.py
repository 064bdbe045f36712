"""
Exception hierarchy for fregress
Every error carries a short machine-readable class used by the CLI
"""

from typing import Optional


class FunctionalRegressionError(Exception):
    """Base class for all fregress errors"""

    error_class = "error"

    def to_dict(self) -> dict:
        return {"error": self.error_class, "message": str(self)}


class DomainError(FunctionalRegressionError, ValueError):
    """Argument outside the unit interval"""

    error_class = "domain"


class SizeError(FunctionalRegressionError, ValueError):
    """Empty or otherwise unusable input size"""

    error_class = "size"


class ShapeError(FunctionalRegressionError, ValueError):
    """Matrix or vector dimensions do not conform"""

    error_class = "shape"


class NotPSDError(FunctionalRegressionError, ValueError):
    """Matrix has eigenvalues below the PSD tolerance"""

    error_class = "not_psd"


class GridError(FunctionalRegressionError, ValueError):
    """Sample points are unsorted, duplicated or outside [0, 1]"""

    error_class = "grid"


class ParameterError(FunctionalRegressionError, ValueError):
    """Invalid tuning or control parameter"""

    error_class = "parameter"


class ParseError(FunctionalRegressionError, ValueError):
    """Malformed input file"""

    error_class = "parse"

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        self.line = line
        self.path = path
        location = ""
        if path is not None:
            location += f"{path}:"
        if line is not None:
            location += f"{line}:"
        super().__init__(f"{location} {message}" if location else message)

    def to_dict(self) -> dict:
        data = super().to_dict()
        data["line"] = self.line
        return data


class DegenerateCoordinateError(FunctionalRegressionError, ArithmeticError):
    """Scalar subproblem is not strictly convex"""

    error_class = "degenerate_coordinate"


class DivergenceError(FunctionalRegressionError, ArithmeticError):
    """Objective became non-finite"""

    error_class = "divergence"


class NumericError(FunctionalRegressionError, ArithmeticError):
    """Factorization or other numerical failure"""

    error_class = "numeric"


class UndefinedMetricError(FunctionalRegressionError, ArithmeticError):
    """Metric has a zero denominator"""

    error_class = "undefined_metric"


class FoldFitError(FunctionalRegressionError):
    """A cross-validation fold failed to fit"""

    error_class = "fold"

    def __init__(self, fold: int, cause: Exception):
        self.fold = fold
        self.cause = cause
        super().__init__(f"fold {fold} failed: {cause}")


class SelectionError(FunctionalRegressionError):
    """Every grid point failed during cross-validation"""

    error_class = "selection"
