"""Exact computations with MCP structures: dglas, BV algebras and the Poisson
structures they induce on Maurer-Cartan gauge orbits."""

__version__ = "0.1.0"

from .ratlin import Q, RationalMatrix, Subspace, QuotientSpace, rank, rref_decompose, inverse
from .graded import ExteriorAlgebra, GradedVectorSpace
from .dgla import Dgla, check_dgla_axioms, is_mc, mc_residual
from .bv import BvAlgebra, GradedAlgebra, ExteriorProductAlgebra, check_bv_axioms
from .poly import Polynomial, parse_polynomial
from .mcp import McpStructure, McpPoint, verify_mcp, jacobiator, poisson_eval

__all__ = [
    "__version__", "Q", "RationalMatrix", "Subspace", "QuotientSpace", "rank", "rref_decompose", "inverse",
    "ExteriorAlgebra", "GradedVectorSpace", "Dgla", "check_dgla_axioms", "is_mc", "mc_residual",
    "BvAlgebra", "GradedAlgebra", "ExteriorProductAlgebra", "check_bv_axioms", "Polynomial",
    "parse_polynomial", "McpStructure", "McpPoint", "verify_mcp", "jacobiator", "poisson_eval",
]
