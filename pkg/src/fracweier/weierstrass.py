r"""Classical and fractional Weierstrass functions.

With frequency ratio ``lam > 1``, dimension parameter ``1 < s < 2`` and order
``0 < alpha <= 1``, the fractional function is

.. math::

    W_\alpha(x) = \sum_{k=1}^{K} \lambda^{(s-2)k} \sin_\alpha(\lambda^{\alpha k} x^\alpha),

and its fractional derivative of order ``alpha`` is the same sum with
weights :math:`\lambda^{(s-2+\alpha)k}` and :math:`\cos_\alpha`. The latter
only converges for ``alpha < 2 - s``. Both vanish for ``x < 0``. At
``alpha = 1`` the first is the classical Weierstrass function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from fracweier import mlf
from fracweier._compensated import ArrayAccumulator
from fracweier.errors import DivergentSeries, ParamError
from fracweier.mlf import SeriesEvalResult
from fracweier.roughness import SampledSignal

DEFAULT_TAIL = 1.0e-8
# frequencies lam**(alpha k) are kept well inside the float range
_MAX_LOG_FREQ = 600.0
# orders this close to 2 - s count as divergent: the ratio is 1 to rounding
_THRESHOLD_SLACK = 1.0e-12
_POLE_SLACK = 1.0e-14

Which = Literal["function", "derivative"]


@dataclass(frozen=True)
class WeierstrassParams:
    """Frequency ratio, dimension parameter, order and truncation depth.

    ``K = None`` picks the smallest depth whose tail bound is at most
    :data:`DEFAULT_TAIL`.
    """

    lam: float
    s: float
    alpha: float = 1.0
    K: int | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam > 1.0):
            raise ParamError(f"lambda must be > 1: got {self.lam!r}")
        if not (math.isfinite(self.s) and 1.0 < self.s < 2.0):
            raise ParamError(f"s must lie in (1, 2): got {self.s!r}")
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha <= 1.0):
            raise ParamError(f"alpha must lie in (0, 1]: got {self.alpha!r}")
        if self.K is not None:
            if isinstance(self.K, bool) or int(self.K) != self.K or self.K < 1:
                raise ParamError(f"K must be a positive integer: got {self.K!r}")
            object.__setattr__(self, "K", int(self.K))

    @property
    def growth_exponent(self) -> float:
        """``s - 2 + alpha``; the derivative series converges iff it is negative."""
        return self.s - 2.0 + self.alpha

    @property
    def derivative_converges(self) -> bool:
        return self.alpha < 2.0 - self.s - _THRESHOLD_SLACK


def _weight_exponent(p: WeierstrassParams, derivative: bool) -> float:
    return p.growth_exponent if derivative else p.s - 2.0


def _max_depth(p: WeierstrassParams) -> int:
    return max(1, int(_MAX_LOG_FREQ / (p.alpha * math.log(p.lam))))


def _tail(p: WeierstrassParams, K: int, derivative: bool) -> float:
    r = p.lam ** _weight_exponent(p, derivative)
    return mlf.sup_bound(p.alpha) * r ** (K + 1) / (1.0 - r)


def depth(p: WeierstrassParams, derivative: bool = False) -> int:
    """Truncation depth used for *p*: explicit ``K`` or the default rule."""
    if p.K is not None:
        return p.K
    r = p.lam ** _weight_exponent(p, derivative)
    target = DEFAULT_TAIL * (1.0 - r) / mlf.sup_bound(p.alpha)
    k = math.ceil(math.log(target) / math.log(r)) - 1
    return min(max(k, 1), _max_depth(p))


def _require_convergent(p: WeierstrassParams) -> None:
    if not p.derivative_converges:
        ratio = p.lam**p.growth_exponent
        raise DivergentSeries(
            f"derivative series diverges: alpha must be < 2 - s "
            f"(alpha={p.alpha!r}, 2 - s={2.0 - p.s!r}, term ratio {ratio:.6g} >= 1)",
            ratio=ratio,
        )


def series_terms(p: WeierstrassParams, x: float, *, derivative: bool = False) -> np.ndarray:
    """The terms ``k = 1 .. K`` at *x*, with no convergence check.

    A divergent derivative series needs an explicit ``p.K``.
    """
    if derivative and p.K is None and not p.derivative_converges:
        raise ParamError("a divergent series needs an explicit K")
    return _terms_matrix(p, np.array([float(x)]), depth(p, derivative), derivative)[:, 0]


def _terms_matrix(p: WeierstrassParams, x: np.ndarray, K: int, derivative: bool) -> np.ndarray:
    out = np.zeros((K, x.size))
    for k, row in enumerate(_iter_terms(p, x, K, derivative)):
        out[k] = row
    return out


def _iter_terms(p: WeierstrassParams, x: np.ndarray, K: int, derivative: bool):
    xa = np.where(x > 0.0, x, 0.0) ** p.alpha
    e = _weight_exponent(p, derivative)
    for k in range(1, K + 1):
        c, s = mlf.sincos_alpha(p.alpha, p.lam ** (p.alpha * k) * xa)
        yield p.lam ** (e * k) * (c if derivative else s)


def _evaluate(p: WeierstrassParams, x: np.ndarray, derivative: bool) -> tuple[np.ndarray, int]:
    K = depth(p, derivative)
    acc = ArrayAccumulator(x.shape)
    for row in _iter_terms(p, x, K, derivative):
        acc.add(row)
    return np.where(x < 0.0, 0.0, acc.value), K


def _scalar(p: WeierstrassParams, x: float, derivative: bool) -> SeriesEvalResult:
    x = float(x)
    if not math.isfinite(x):
        raise ParamError(f"x must be finite: got {x!r}")
    values, K = _evaluate(p, np.array([x]), derivative)
    if x < 0.0:
        return SeriesEvalResult(0.0, K, 0.0)
    return SeriesEvalResult(float(values[0]), K, _tail(p, K, derivative))


def w_classical(lam: float, s: float, x: float, K: int | None = None) -> SeriesEvalResult:
    """Classical Weierstrass function ``sum lam**((s-2)k) sin(lam**k x)``."""
    return _scalar(WeierstrassParams(lam, s, 1.0, K), x, derivative=False)


def w_frac(p: WeierstrassParams, x: float) -> SeriesEvalResult:
    """Fractional Weierstrass function at *x* (exactly 0 for ``x < 0``)."""
    return _scalar(p, x, derivative=False)


def w_frac_deriv(p: WeierstrassParams, x: float) -> SeriesEvalResult:
    """Fractional derivative of order ``alpha`` of the fractional Weierstrass function.

    :raises DivergentSeries: unless ``alpha < 2 - s``; the exception's
        ``ratio`` is the term ratio ``lam**(s - 2 + alpha)``.
    """
    _require_convergent(p)
    return _scalar(p, x, derivative=True)


def evaluate(p: WeierstrassParams, x: np.ndarray, which: Which = "function") -> np.ndarray:
    """Vectorized :func:`w_frac` or :func:`w_frac_deriv` values."""
    derivative = _which(which)
    if derivative:
        _require_convergent(p)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ParamError("x must be finite")
    return _evaluate(p, x, derivative)[0]


def _which(which: str) -> bool:
    if which not in ("function", "derivative"):
        raise ParamError(f"which must be 'function' or 'derivative': got {which!r}")
    return which == "derivative"


def sample(
    p: WeierstrassParams, x_max: float, n_points: int, which: Which = "function"
) -> SampledSignal:
    """Sample on the uniform grid of *n_points* points spanning ``[0, x_max]``."""
    if not (math.isfinite(x_max) and x_max > 0.0):
        raise ParamError(f"x_max must be positive: got {x_max!r}")
    if int(n_points) != n_points or n_points < 2:
        raise ParamError(f"n_points must be an integer >= 2: got {n_points!r}")
    n = int(n_points)
    h = x_max / (n - 1)
    x = h * np.arange(n)
    return SampledSignal(0.0, h, evaluate(p, x, which))


class HolderConstants(NamedTuple):
    """Constants of the oscillation bounds for the function and its derivative.

    ``c2`` is ``None`` when the derivative series diverges. Either constant
    may come out nonpositive, in which case the corresponding bound is
    vacuous; see :attr:`c1_positive` and :attr:`c2_positive`.
    """

    c1: float
    c2: float | None

    @property
    def c1_positive(self) -> bool:
        return self.c1 > 0.0

    @property
    def c2_positive(self) -> bool:
        return self.c2 is not None and self.c2 > 0.0


def holder_constants(p: WeierstrassParams) -> HolderConstants:
    """Return ``C1 = 1/(lam**g - 1) + 1/(1 - lam**(s-2))`` and
    ``C2 = 1/(lam**(g+alpha) - 1) + 1/(1 - lam**g)`` with ``g = s - 2 + alpha``.

    :raises ParamError: where a denominator vanishes.
    """
    g = p.growth_exponent
    if abs(g) < _POLE_SLACK:
        raise ParamError(f"C1 has a pole at s - 2 + alpha = 0 (s={p.s!r}, alpha={p.alpha!r})")
    lam = p.lam
    c1 = 1.0 / (lam**g - 1.0) + 1.0 / (1.0 - lam ** (p.s - 2.0))
    if g > 0.0:
        return HolderConstants(c1, None)
    g2 = g + p.alpha
    if abs(g2) < _POLE_SLACK:
        raise ParamError(
            f"C2 has a pole at s - 2 + 2 alpha = 0 (s={p.s!r}, alpha={p.alpha!r})"
        )
    c2 = 1.0 / (lam**g2 - 1.0) + 1.0 / (1.0 - lam**g)
    return HolderConstants(c1, c2)
