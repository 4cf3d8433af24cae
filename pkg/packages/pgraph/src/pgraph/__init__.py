"""Numerical toolkit for p-Schrödinger operators and their energy functionals on weighted graphs."""

__version__ = "0.1.0"
