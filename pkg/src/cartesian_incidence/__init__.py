"""Exact incidence counting for curves on Cartesian-product point sets."""

from .exact import GaussianRational, format_gaussian, gr, parse_gaussian
from .poly import BivariatePoly, UnivariatePoly

__version__ = "0.1.0"

__all__ = [
    "BivariatePoly",
    "GaussianRational",
    "UnivariatePoly",
    "format_gaussian",
    "gr",
    "parse_gaussian",
]
