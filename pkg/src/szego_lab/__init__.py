"""Numerical Szego kernels for punctured and hypersurface-deleted domains."""

__version__ = "0.1.0"
