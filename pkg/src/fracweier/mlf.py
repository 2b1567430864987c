r"""Gamma, Mittag-Leffler and fractional trigonometric functions.

The scalar functions in this module evaluate the defining power series

.. math::

    E_{\alpha,\beta}(z) = \sum_{k=0}^\infty \frac{z^k}{\Gamma(\beta + k\alpha)},
    \qquad
    \cos_{\alpha,\beta}(u) = \sum_{k=0}^\infty
        \frac{(-1)^k u^{2k}}{\Gamma(\beta + 2k\alpha)},
    \qquad
    \sin_{\alpha,\beta}(u) = \sum_{k=0}^\infty
        \frac{(-1)^k u^{2k+1}}{\Gamma(\beta + (2k+1)\alpha)},

and return a :class:`SeriesEvalResult` carrying a bound on the discarded
tail. The trigonometric functions take the already powered argument, so
:math:`\sin_\alpha(a x^\alpha)` is ``frac_sin(alpha, a * x**alpha)``.

For arrays of large arguments, where the series loses every digit to
cancellation, :func:`mittag_leffler_iu` and :func:`sincos_alpha` switch to
an asymptotic expansion or a contour integral (see :mod:`fracweier._largearg`).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from fracweier import _largearg
from fracweier._compensated import Accumulator, ArrayAccumulator
from fracweier.errors import NoConvergence, ParamError, PoleError

DEFAULT_TOL = 1.0e-15
DEFAULT_TERMS_MAX = 10_000

# cancellation guard: eps * max|term| may not exceed this fraction of max(|sum|, 1)
_CANCELLATION_LIMIT = 1.0e-8
_EPS = np.finfo(float).eps


# {{{ gamma


def _is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Gamma function.

    :raises PoleError: if *x* is zero or a negative integer.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ParamError(f"gamma argument must be finite: {x!r}")
    if _is_pole(x):
        raise PoleError(f"gamma has a pole at {x!r}")
    try:
        return math.gamma(x)
    except OverflowError:
        return math.inf


def rgamma(x: float) -> float:
    """Reciprocal gamma function, defined as ``0`` at the poles of gamma."""
    x = float(x)
    if _is_pole(x):
        return 0.0
    if x < 171.0:
        g = math.gamma(x)
        return 1.0 / g
    return math.exp(-math.lgamma(x))


def _log_rgamma(x: float) -> tuple[float, float]:
    """Return ``(sign, log|1/gamma(x)|)`` for a non-pole *x*."""
    if x > 0:
        return 1.0, -math.lgamma(x)
    # gamma alternates sign between consecutive negative integers
    sign = -1.0 if math.floor(x) % 2 else 1.0
    return sign, -math.lgamma(x)


# }}}


# {{{ types


@dataclass(frozen=True)
class FracParams:
    """Fractional order *alpha* and optional second parameter *beta*."""

    alpha: float
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.alpha) or not 0.0 < self.alpha <= 2.0:
            raise ParamError(f"alpha must lie in (0, 2]: got {self.alpha!r}")
        if not math.isfinite(self.beta) or self.beta <= 0.0:
            raise ParamError(f"beta must be positive: got {self.beta!r}")


@dataclass(frozen=True)
class SeriesEvalResult:
    """Value of a truncated series with its truncation bound."""

    value: float | complex
    """Partial sum of the series."""
    terms_used: int
    """Number of series terms that were summed."""
    tail_bound: float
    """Bound on the absolute value of the discarded remainder."""


# }}}


# {{{ series engine


def _term(z: float | complex, p: int, arg: float) -> float | complex:
    """Return ``z**p / gamma(arg)`` without intermediate overflow."""
    if _is_pole(arg):
        return 0.0
    if arg < 171.0:
        try:
            zp = z**p
            big = abs(zp)
        except OverflowError:
            big = math.inf
        if big < 1.0e300:
            return zp / math.gamma(arg)
    sign, lrg = _log_rgamma(arg)
    try:
        if isinstance(z, complex):
            t = sign * cmath.exp(p * cmath.log(z) + lrg)
            abs(t)  # a finite pair whose modulus overflows raises here
            return t
        zsign = -1.0 if (z < 0 and p % 2) else 1.0
        return sign * zsign * math.exp(p * math.log(abs(z)) + lrg)
    except OverflowError:
        raise NoConvergence(
            f"series term {p} overflows at |z| = {abs(z):g}; the argument is too large"
        ) from None


def _modulus(v: float | complex) -> float:
    try:
        return abs(v)
    except OverflowError:
        return math.inf


def _sum_series(
    z: float | complex,
    alpha: float,
    beta: float,
    *,
    step: int,
    offset: int,
    alternate: bool,
    tol: float,
    terms_max: int,
    terms: int | None,
) -> SeriesEvalResult:
    """Sum ``sum_j s_j z**p_j / gamma(beta + p_j alpha)`` with ``p_j = offset + step j``.

    ``s_j`` is ``(-1)**j`` when *alternate* is set and ``1`` otherwise.
    """
    if not tol > 0:
        raise ParamError(f"tol must be positive: got {tol!r}")
    if terms is not None and terms < 1:
        raise ParamError(f"terms must be at least 1: got {terms!r}")

    if z == 0:
        first = rgamma(beta) if offset == 0 else 0.0
        value = complex(first) if isinstance(z, complex) else first
        return SeriesEvalResult(value=value, terms_used=1, tail_bound=0.0)

    budget = terms if terms is not None else terms_max
    acc = Accumulator()
    prev = 0.0
    prev_small = False
    tmax = 0.0
    tail = math.inf

    n = 0
    for j in range(budget):
        p = offset + step * j
        t = _term(z, p, beta + p * alpha)
        if alternate and j % 2:
            t = -t

        acc.add(t)
        n = j + 1
        a = abs(t)
        tmax = max(tmax, a)

        if a > 0 and prev > 0:
            r = a / prev
            tail = a * r / (1.0 - r) if r < 1.0 else math.inf
        elif a == 0 and j > 0:
            # gamma has no poles at positive arguments, so a zero term has
            # underflowed and every later term is smaller still
            tail = 0.0

        if terms is None:
            s = _modulus(acc.value)
            if math.isinf(s):
                raise NoConvergence(
                    f"partial sums overflow at |z| = {abs(z):g}; the argument is too large"
                )
            small = a <= tol * s
            if small and prev_small and tail <= tol * s:
                break
            prev_small = small

        if a > 0:
            prev = a
    else:
        if terms is None:
            raise NoConvergence(
                f"series did not reach tol={tol:g} within {budget} terms "
                f"(|z| = {abs(z):g} is too large for the power series)"
            )

    value = acc.value
    if terms is None and _EPS * tmax > _CANCELLATION_LIMIT * max(abs(value), 1.0):
        raise NoConvergence(
            f"cancellation destroys the series sum at |z| = {abs(z):g} "
            f"(largest term {tmax:.3e}, sum {abs(value):.3e})"
        )

    return SeriesEvalResult(value=value, terms_used=n, tail_bound=tail)


# }}}


# {{{ Mittag-Leffler


def mittag_leffler2(
    alpha: float,
    beta: float,
    z: float | complex,
    *,
    tol: float = DEFAULT_TOL,
    terms_max: int = DEFAULT_TERMS_MAX,
    terms: int | None = None,
) -> SeriesEvalResult:
    r"""Two-parameter Mittag-Leffler function :math:`E_{\alpha,\beta}(z)`.

    Terms are added until two consecutive terms and the geometric tail
    estimate ``|t_K| r / (1 - r)``, with ``r = |t_K / t_{K-1}|``, all fall
    below ``tol * |sum|``. Passing *terms* sums exactly that many terms
    instead.

    :raises NoConvergence: if the tolerance is not met within *terms_max*
        terms, or if cancellation between terms leaves fewer than half of
        the significant digits.
    """
    p = FracParams(alpha, beta)
    if not cmath.isfinite(z):
        raise ParamError(f"argument must be finite: got {z!r}")

    return _sum_series(
        z,
        p.alpha,
        p.beta,
        step=1,
        offset=0,
        alternate=False,
        tol=tol,
        terms_max=terms_max,
        terms=terms,
    )


def mittag_leffler(
    alpha: float,
    z: float | complex,
    *,
    tol: float = DEFAULT_TOL,
    terms_max: int = DEFAULT_TERMS_MAX,
    terms: int | None = None,
) -> SeriesEvalResult:
    r"""One-parameter Mittag-Leffler function :math:`E_\alpha(z) = E_{\alpha,1}(z)`."""
    return mittag_leffler2(alpha, 1.0, z, tol=tol, terms_max=terms_max, terms=terms)


# }}}


# {{{ fractional trigonometric functions


def _trig(
    alpha: float,
    beta: float,
    u: float,
    offset: int,
    tol: float,
    terms_max: int,
    terms: int | None,
) -> SeriesEvalResult:
    p = FracParams(alpha, beta)
    u = float(u)
    if not math.isfinite(u):
        raise ParamError(f"argument must be finite: got {u!r}")

    return _sum_series(
        u,
        p.alpha,
        p.beta,
        step=2,
        offset=offset,
        alternate=True,
        tol=tol,
        terms_max=terms_max,
        terms=terms,
    )


def frac_cos2(
    alpha: float,
    beta: float,
    u: float,
    *,
    tol: float = DEFAULT_TOL,
    terms_max: int = DEFAULT_TERMS_MAX,
    terms: int | None = None,
) -> SeriesEvalResult:
    r"""Two-parameter fractional cosine :math:`\cos_{\alpha,\beta}(u)`."""
    return _trig(alpha, beta, u, 0, tol, terms_max, terms)


def frac_sin2(
    alpha: float,
    beta: float,
    u: float,
    *,
    tol: float = DEFAULT_TOL,
    terms_max: int = DEFAULT_TERMS_MAX,
    terms: int | None = None,
) -> SeriesEvalResult:
    r"""Two-parameter fractional sine :math:`\sin_{\alpha,\beta}(u)`."""
    return _trig(alpha, beta, u, 1, tol, terms_max, terms)


def frac_cos(
    alpha: float,
    u: float,
    *,
    tol: float = DEFAULT_TOL,
    terms_max: int = DEFAULT_TERMS_MAX,
    terms: int | None = None,
) -> SeriesEvalResult:
    r"""Fractional cosine :math:`\cos_\alpha(u)`, with ``u`` standing for :math:`x^\alpha`."""
    return frac_cos2(alpha, 1.0, u, tol=tol, terms_max=terms_max, terms=terms)


def frac_sin(
    alpha: float,
    u: float,
    *,
    tol: float = DEFAULT_TOL,
    terms_max: int = DEFAULT_TERMS_MAX,
    terms: int | None = None,
) -> SeriesEvalResult:
    r"""Fractional sine :math:`\sin_\alpha(u)`, with ``u`` standing for :math:`x^\alpha`."""
    return frac_sin2(alpha, 1.0, u, tol=tol, terms_max=terms_max, terms=terms)


def mlf_imag_decompose(
    alpha: float,
    u: float,
    *,
    tol: float = DEFAULT_TOL,
    terms_max: int = DEFAULT_TERMS_MAX,
) -> tuple[float, float]:
    """Real and imaginary parts of ``E_alpha(i u)``.

    These are the fractional cosine and sine, obtained here from the single
    interleaved complex series rather than the two real ones.
    """
    r = mittag_leffler(alpha, complex(0.0, float(u)), tol=tol, terms_max=terms_max)
    value = complex(r.value)
    return value.real, value.imag


# }}}


# {{{ vectorized evaluation on the imaginary axis

# series is used while |z|**(1/alpha) stays below this; the largest term is
# then at most exp(_SERIES_RADIUS) so no digits are lost
_SERIES_RADIUS = 2.0


def _series_iu(alpha: float, u: np.ndarray) -> np.ndarray:
    """Vectorized series for ``E_alpha(i u)`` with small ``|u|``."""
    z = 1j * u
    acc = ArrayAccumulator(u.shape, dtype=complex)
    zk = np.ones_like(z)
    k = 0
    while True:
        t = zk * special.rgamma(1.0 + k * alpha)
        acc.add(t)
        if k > 2 and np.all(np.abs(t) <= 1.0e-18):
            break
        k += 1
        zk = zk * z
    return acc.value


def mittag_leffler_iu(alpha: float, u: np.ndarray | float) -> np.ndarray:
    r"""Evaluate :math:`E_\alpha(i u)` for real arrays *u* and ``0 < alpha <= 2``.

    For ``alpha <= 1`` this is accurate to a few ulps for every finite *u*:
    small arguments use the power series, large ones an asymptotic
    expansion or a contour integral. For ``1 < alpha <= 2`` only the power
    series is available and :class:`NoConvergence` is raised when
    cancellation makes it meaningless.
    """
    FracParams(alpha)
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise ParamError("arguments must be finite")

    if alpha == 1.0:
        return np.exp(1j * u)

    au = np.abs(u)
    out = np.empty(u.shape, dtype=complex)

    if alpha > 1.0:
        flat = au.ravel()
        vals = np.empty(flat.shape, dtype=complex)
        for i, v in enumerate(flat):
            vals[i] = mittag_leffler(alpha, complex(0.0, v), tol=1.0e-16).value
        out = vals.reshape(u.shape)
    else:
        small = au ** (1.0 / alpha) <= _SERIES_RADIUS
        if np.any(small):
            out[small] = _series_iu(alpha, au[small])
        large = ~small
        if np.any(large):
            out[large] = _largearg.mittag_leffler_iu_large(alpha, au[large])

    # real coefficients: E(-iu) = conj(E(iu))
    return np.where(u < 0, np.conj(out), out)


def sincos_alpha(alpha: float, u: np.ndarray | float) -> tuple[np.ndarray, np.ndarray]:
    r"""Return :math:`(\cos_\alpha(u), \sin_\alpha(u))` elementwise."""
    e = mittag_leffler_iu(alpha, u)
    return e.real, e.imag


@lru_cache(maxsize=64)
def sup_bound(alpha: float) -> float:
    r"""Bound ``M(alpha) >= 1`` on :math:`|\sin_\alpha|` and :math:`|\cos_\alpha|`.

    The supremum is sampled on ``[0, 50]``. For ``alpha < 1`` both functions
    decay beyond the sampled window, so the sample maximum (clipped below at
    one) bounds them on the whole half line.
    """
    if not 0.0 < alpha <= 1.0:
        raise ParamError(f"sup bound needs 0 < alpha <= 1: got {alpha!r}")
    if alpha == 1.0:
        return 1.0
    u = np.linspace(0.0, 50.0, 20_001)
    c, s = sincos_alpha(alpha, u)
    return max(1.0, float(np.max(np.abs(c))), float(np.max(np.abs(s))))


# }}}
