"""Exact computation in generalized Riordan groups and zero generalized Pascal algebras."""

from zeropascal.fps import ParamPolynomial, Series
from zeropascal.triangle import LowerTriangular

__all__ = ["Series", "ParamPolynomial", "LowerTriangular"]
__version__ = "0.1.0"
