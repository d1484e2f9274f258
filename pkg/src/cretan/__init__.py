"""Cretan matrices: orthogonal matrices with entry moduli at most one.

The package constructs Cretan matrices of odd order from combinatorial
designs, verifies them with exact arithmetic where possible, and catalogs
the best known radius for each odd order.
"""

from cretan.scalar import Scalar, VERIFY_TOL, REFINE_TOL

__all__ = ["Scalar", "VERIFY_TOL", "REFINE_TOL"]

__version__ = "0.1.0"
