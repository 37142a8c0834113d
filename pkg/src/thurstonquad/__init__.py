"""Combinatorial models of entire Thurston maps and their polynomial approximants."""

__version__ = "0.1.0"
