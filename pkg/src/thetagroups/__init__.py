"""Exact computations with positive-rank theta-groups of G2, F4 and D4^(3)."""

__version__ = "0.1.0"
