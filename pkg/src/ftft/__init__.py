"""Exact algebraic data for low-dimensional field theories with reflection and spin-statistics."""

__version__ = "0.1.0"
