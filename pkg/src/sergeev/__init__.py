"""Exact computations in cyclotomic Sergeev superalgebras."""

__version__ = "0.1.0"
