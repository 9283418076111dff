"""Exact variation-of-GIT computations for log pairs (hypersurface, hyperplane)."""

__version__ = "0.1.0"
