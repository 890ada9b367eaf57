"""Exact scalar fields and exact linear algebra."""

from .fields import (
    GF,
    QQ,
    FFElement,
    Field,
    FiniteField,
    RatFunc,
    RationalFunctionField,
    Rationals,
    derive_scalar,
    field_from_json,
    parse_field,
)
from .linalg import (
    DimensionError,
    Matrix,
    Subspace,
    inverse,
    kernel,
    kernel_of_rows,
    rank,
    rref,
    solve,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
)
from .parsing import ScalarParseError, parse_scalar

__all__ = [
    "GF", "QQ", "FFElement", "Field", "FiniteField", "RatFunc", "RationalFunctionField",
    "Rationals", "derive_scalar", "field_from_json", "parse_field", "DimensionError",
    "Matrix", "Subspace", "inverse", "kernel", "kernel_of_rows", "rank", "rref", "solve",
    "subspace_contains", "subspace_intersect", "subspace_sum", "ScalarParseError",
    "parse_scalar",
]
