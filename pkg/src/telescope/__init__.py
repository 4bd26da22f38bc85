"""Exact symbolic summation and integration."""

from .arith import QQ, FracField, Poly, PolyRing, RatFun
from .expr import parse

__all__ = ["QQ", "FracField", "Poly", "PolyRing", "RatFun", "parse"]
__version__ = "0.1.0"
