"""Exact scalars, polynomials and sparse linear algebra."""

from .fields import (QQ, Field, MultivariateIntegerPolynomials, PrimeField,
                     Rationals, UnivariatePolynomials, field_from_name, is_prime)
from .poly import MPoly, RingMismatch, UPoly, upoly_gcd
from .matrix import (ComplexError, InvariantFactors, NotAField, SparseMatrix,
                     UnsupportedRing, homology_of_complex_over_pid, rank,
                     smith_normal_form)

__all__ = [
    "QQ", "Field", "PrimeField", "Rationals", "UnivariatePolynomials",
    "MultivariateIntegerPolynomials", "field_from_name", "is_prime",
    "MPoly", "UPoly", "RingMismatch", "upoly_gcd",
    "SparseMatrix", "InvariantFactors", "rank", "smith_normal_form",
    "homology_of_complex_over_pid", "ComplexError", "NotAField", "UnsupportedRing",
]
