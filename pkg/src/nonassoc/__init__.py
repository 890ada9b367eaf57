"""Exact computations with finite-dimensional algebras given by structure constants."""

from .algebra import (
    AdditiveMap,
    Algebra,
    AlgebraError,
    AlgebraParseError,
    Element,
    check_axioms,
    direct_product,
    dumps,
    from_json,
    load,
    loads,
    quotient,
    restrict_scalars,
    save,
    subalgebra,
    to_json,
    verify_automorphism,
    verify_homomorphism,
)
from .exactmath import GF, QQ, Matrix, Subspace, parse_field

__version__ = "0.1.0"

__all__ = [
    "AdditiveMap",
    "Algebra",
    "AlgebraError",
    "AlgebraParseError",
    "Element",
    "check_axioms",
    "direct_product",
    "dumps",
    "from_json",
    "load",
    "loads",
    "quotient",
    "restrict_scalars",
    "save",
    "subalgebra",
    "to_json",
    "verify_automorphism",
    "verify_homomorphism",
    "GF",
    "QQ",
    "Matrix",
    "Subspace",
    "parse_field",
]
