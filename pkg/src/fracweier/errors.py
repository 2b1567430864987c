"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes, so every failure a user can trigger
should surface as one of the classes below.
"""

from __future__ import annotations


class FracError(Exception):
    """Base class for all errors raised by :mod:`fracweier`."""


class ParamError(FracError, ValueError):
    """A parameter lies outside its admissible range."""


class DomainError(ParamError):
    """An operation was asked for an order or exponent it does not support."""


class PoleError(ParamError):
    """The gamma function was requested at a nonpositive integer."""


class DivergentSeries(ParamError):
    """The fractional derivative series of the Weierstrass function diverges.

    :attr:`ratio` is the geometric growth ratio ``lambda**(s - 2 + alpha)``
    of the series terms, which is ``>= 1`` whenever this is raised.
    """

    def __init__(self, message: str, ratio: float) -> None:
        super().__init__(message)
        self.ratio = ratio


class NoConvergence(FracError, ArithmeticError):
    """A power series did not meet its tolerance within the term budget."""


class ScaleError(FracError):
    """Too few admissible scales remain for a regression."""


class DegenerateError(FracError):
    """The signal is constant, so a scaling exponent is undefined."""
