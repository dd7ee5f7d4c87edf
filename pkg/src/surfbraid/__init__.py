"""Computational toolkit for surface pure braid groups and twisted conjugacy."""

__version__ = "0.1.0"
