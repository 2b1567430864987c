"""Compensated (error-free transform) accumulation.

Both accumulators keep a running sum and a running correction built from
Knuth's TwoSum, so the rounding error of every addition is carried forward
instead of being lost. This matters for alternating series whose
intermediate terms are much larger than the final value.
"""

from __future__ import annotations

import numpy as np


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Return ``(s, e)`` with ``s = fl(a + b)`` and ``a + b = s + e`` exactly."""
    s = a + b
    bp = s - a
    ap = s - bp
    return s, (a - ap) + (b - bp)


class Accumulator:
    """Running compensated sum of real or complex scalars.

    Complex addition is componentwise, so :func:`two_sum` is exact for the
    real and imaginary parts at once.
    """

    __slots__ = ("_s", "_c")

    def __init__(self) -> None:
        self._s: complex | float = 0.0
        self._c: complex | float = 0.0

    def add(self, x: complex | float) -> None:
        self._s, e = two_sum(self._s, x)
        self._c += e

    @property
    def value(self) -> complex | float:
        return self._s + self._c


class ArrayAccumulator:
    """Elementwise compensated sum of equally shaped numpy arrays."""

    def __init__(self, shape: tuple[int, ...], dtype: type = float) -> None:
        self._s = np.zeros(shape, dtype=dtype)
        self._c = np.zeros(shape, dtype=dtype)

    def add(self, x: np.ndarray) -> None:
        s = self._s + x
        bp = s - self._s
        ap = s - bp
        self._c += (self._s - ap) + (x - bp)
        self._s = s

    @property
    def value(self) -> np.ndarray:
        return self._s + self._c
