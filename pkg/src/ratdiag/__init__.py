"""Exact diagonals of trivariate rational functions and their 2F1 closed forms."""
from .exact import (
    Q,
    RatFn,
    TruncatedSeries,
    UniPoly,
    schwarzian,
    series_compose,
    series_derivative,
    series_mul,
    series_pow_rational,
)

__version__ = "0.1.0"
