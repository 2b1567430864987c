"""Jumarie fractional calculus, the fractional Weierstrass function and roughness estimators."""

__version__ = "0.1.0"
