"""Exact finite rings and modules with regularity, extension and Morita context checks."""

__version__ = "0.1.0"
