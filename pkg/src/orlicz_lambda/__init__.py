"""Numerical toolkit for Lambda(Phi)-sets in Orlicz spaces on the circle."""

__version__ = "0.1.0"
