"""Semigroup generators in the unit disk: A_beta classes, convolution
criteria, radii of starlikeness and numerical semiflows."""

from .errors import NumericalError, SemigenError, ValidationError
from .series import NormalizedSeries, PowerSeries

__all__ = ["NormalizedSeries", "NumericalError", "PowerSeries", "SemigenError", "ValidationError"]
__version__ = "0.1.0"
