"""Exact finite-invariant computations for twisting tensor products and Schur functors."""

__version__ = "0.1.0"
