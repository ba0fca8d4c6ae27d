"""Normalized Ricci flow on generalized Wallach spaces (equal-parameter case)."""

from ._core import (
    DomainError,
    Error,
    classify,
    equilibria,
    gamma,
    integrate,
    lambda_,
    normalize,
    p0,
    sample_curve,
    vector_field,
    verify,
    volume,
)

__all__ = [
    "DomainError",
    "Error",
    "classify",
    "equilibria",
    "gamma",
    "integrate",
    "lambda_",
    "normalize",
    "p0",
    "sample_curve",
    "vector_field",
    "verify",
    "volume",
]
