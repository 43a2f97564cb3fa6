"""Exact arithmetic kernel: rationals, polynomials, small number fields, Q(t)."""

from .poly import (
    Poly,
    X,
    discriminant_resultant,
    format_poly,
    interpolate,
    poly,
    poly_gcd,
    rational_roots,
    resultant,
    resultant_bivariate,
    squarefree_decompose,
    squarefree_part,
)
from .numfield import NumField, NumFieldElement, quadratic_field
from .ratfn import RATFN_T, RatFn, ratfn
from .rationals import (
    Rat,
    enumerate_rationals,
    is_square,
    rat_from_string,
    rat_height,
    rat_sqrt,
    rat_to_string,
)

__all__ = [
    "Poly",
    "X",
    "discriminant_resultant",
    "format_poly",
    "interpolate",
    "poly",
    "poly_gcd",
    "rational_roots",
    "resultant",
    "resultant_bivariate",
    "squarefree_decompose",
    "squarefree_part",
    "NumField",
    "NumFieldElement",
    "quadratic_field",
    "RATFN_T",
    "RatFn",
    "ratfn",
    "Rat",
    "enumerate_rationals",
    "is_square",
    "rat_from_string",
    "rat_height",
    "rat_sqrt",
    "rat_to_string",
]
