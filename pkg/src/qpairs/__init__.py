"""Exact truncated q-series arithmetic for overpartition-pair rank statistics."""

from .poly import AlgebraError, ParamPoly
from .series import QSeries, TruncationError

__all__ = ["AlgebraError", "ParamPoly", "QSeries", "TruncationError"]
__version__ = "0.1.0"
