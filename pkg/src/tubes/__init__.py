"""Exact computer-algebra verification engine for a classification of
homogeneous tube domains in C^4."""

from .poly import MultiPoly, RationalFunction, series_expand, substitute
from .scalars import GaussianRational, Rational

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "MultiPoly",
    "Rational",
    "RationalFunction",
    "series_expand",
    "substitute",
]
