"""Difference sets, symmetric designs and the symmetric difference property."""

from ._core import (
    DifferenceSet,
    DimensionError,
    Error,
    FeasibilityError,
    HomomorphismError,
    Matrix,
    NotADifferenceSetError,
    ParameterError,
    ParseError,
    are_isomorphic,
    catalog,
    develop,
    has_sdp,
    homomorphisms,
    is_bent,
    parse_ds,
    product,
    rm1_basis,
    run_cli,
    symplectic_matrix,
    two_rank,
)

__all__ = [
    "DifferenceSet",
    "DimensionError",
    "Error",
    "FeasibilityError",
    "HomomorphismError",
    "Matrix",
    "NotADifferenceSetError",
    "ParameterError",
    "ParseError",
    "are_isomorphic",
    "catalog",
    "develop",
    "has_sdp",
    "homomorphisms",
    "is_bent",
    "parse_ds",
    "product",
    "rm1_basis",
    "run_cli",
    "symplectic_matrix",
    "two_rank",
]
