"""Exact computations for infinitesimal deformations of quiver algebras."""

__version__ = "0.1.0"
