"""Constant-dimension subspace codes: finite fields, rank-metric codes,
multilevel-type constructions, exact bounds and verification."""

__version__ = "0.1.0"
