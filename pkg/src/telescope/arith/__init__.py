"""Exact arithmetic: rationals, univariate polynomials over field towers, gcds, resultants, factorization."""

from .core import (QQ, AlgebraicField, DomainError, FracField, Poly, PolyRing, RatFun, poly_gcd,
                   poly_lcm, poly_xgcd, qq)
from .algorithms import (Factorization, integer_roots, resultant, solvemod, split,
                         squarefree_decomposition, squarefree_part, subresultant_resultant)
from .factor import factor_rationals

__all__ = [
    "QQ", "AlgebraicField", "DomainError", "FracField", "Poly", "PolyRing", "RatFun", "qq",
    "poly_gcd", "poly_lcm", "poly_xgcd", "Factorization", "integer_roots", "resultant",
    "solvemod", "split", "squarefree_decomposition", "squarefree_part",
    "subresultant_resultant", "factor_rationals",
]
