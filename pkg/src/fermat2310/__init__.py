"""Exact arithmetic and verification tools for x^2 + y^3 = z^10."""

__version__ = "0.1.0"
