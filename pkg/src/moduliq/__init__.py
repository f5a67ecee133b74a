"""Exact arithmetic for even lattices, vector-valued modular forms,
Borcherds products, equivariant Betti tables, and divisor-class ledgers."""

from ._rational import BACKEND, QQ, qq

__version__ = "0.1.0"
__all__ = ["BACKEND", "QQ", "qq", "__version__"]
