"""Exact-arithmetic toolkit for rigidity of generator tuples in matrix
groups over finite fields."""

__version__ = "0.1.0"
