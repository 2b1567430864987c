r"""Jumarie (modified Riemann-Liouville) fractional derivative.

For ``0 < alpha < 1`` and lower terminal ``x0``

.. math::

    D^\alpha f(x) = \frac{1}{\Gamma(1-\alpha)} \frac{d}{dx}
        \int_{x_0}^x (x - \tau)^{-\alpha} \left(f(\tau) - f(x_0)\right) d\tau,

so constants are annihilated and monomials obey
:math:`D^\alpha x^\nu = \Gamma(1+\nu)/\Gamma(1+\nu-\alpha)\, x^{\nu-\alpha}`.

Three evaluation routes are offered: the power rule on single monomials
(:func:`deriv_power_coeff`), term by term on finite power series
(:func:`deriv_series`) and from uniform samples (:func:`deriv_numeric`).
:func:`identity_table` pairs closed forms built from the Mittag-Leffler and
fractional trigonometric functions with their term-by-term derivatives.

The term-by-term routes also accept ``alpha = 1``, where they reduce to the
ordinary derivative. The sampled route needs ``0 < alpha < 1`` strictly.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import signal, special

from fracweier import mlf
from fracweier._compensated import Accumulator
from fracweier.errors import DomainError, NoConvergence, ParamError
from fracweier.mlf import SeriesEvalResult

_EPS = float(np.finfo(float).eps)
# above this many samples the fractional integral is convolved via FFT
_DIRECT_CONV_MAX = 4096


def _check_order(alpha: float, *, allow_one: bool) -> float:
    alpha = float(alpha)
    upper_ok = alpha <= 1.0 if allow_one else alpha < 1.0
    if not (math.isfinite(alpha) and alpha > 0.0 and upper_ok):
        interval = "(0, 1]" if allow_one else "(0, 1)"
        raise DomainError(f"derivative order must lie in {interval}: got {alpha!r}")
    return alpha


# {{{ power series


@dataclass(frozen=True)
class PowerSeries:
    """Finite sum ``sum c_j x**nu_j`` on ``x >= 0``, zero for ``x < 0``.

    *terms* holds ``(coefficient, exponent)`` pairs with strictly increasing
    nonnegative exponents.
    """

    terms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        terms = tuple((float(c), float(nu)) for c, nu in self.terms)
        prev = -math.inf
        for c, nu in terms:
            if not math.isfinite(c):
                raise ParamError(f"coefficient must be finite: got {c!r}")
            if not (math.isfinite(nu) and nu >= 0.0):
                raise ParamError(f"exponent must be finite and >= 0: got {nu!r}")
            if nu <= prev:
                raise ParamError("exponents must be strictly increasing")
            prev = nu
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[float, float]]) -> PowerSeries:
        """Build a series from unordered pairs, merging equal exponents."""
        merged: dict[float, float] = {}
        for c, nu in terms:
            merged[float(nu)] = merged.get(float(nu), 0.0) + float(c)
        return cls(tuple((c, nu) for nu, c in sorted(merged.items())))

    def __add__(self, other: PowerSeries) -> PowerSeries:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return PowerSeries.from_terms(self.terms + other.terms)

    @property
    def exponents(self) -> tuple[float, ...]:
        return tuple(nu for _, nu in self.terms)

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        xa = np.asarray(x, dtype=float)
        pos = np.where(xa > 0.0, xa, 0.0)
        out = np.zeros(xa.shape)
        for c, nu in self.terms:
            out = out + c * (pos**nu if nu > 0 else np.ones_like(pos))
        out = np.where(xa < 0.0, 0.0, out)
        return float(out) if out.ndim == 0 else out


def deriv_power_coeff(alpha: float, nu: float) -> float:
    """Coefficient ``c`` in ``D^alpha x**nu = c x**(nu - alpha)``.

    Zero for ``nu = 0``, since constants are annihilated.
    """
    alpha = _check_order(alpha, allow_one=True)
    nu = float(nu)
    if not (math.isfinite(nu) and nu >= 0.0):
        raise ParamError(f"exponent must be finite and >= 0: got {nu!r}")
    if nu == 0.0:
        return 0.0
    # 1 - alpha first: exact for alpha >= 1/2 and keeps tiny nu from vanishing
    return _gamma_ratio((1.0 - alpha) + nu, alpha)


_STIRLING = (
    1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,
)


def _stirling_tail(z: float) -> float:
    zi = 1.0 / z
    return sum(c * zi ** (2 * k + 1) for k, c in enumerate(_STIRLING))


def _gamma_ratio(x: float, a: float) -> float:
    """``gamma(x + a) / gamma(x)`` for ``x > 0`` and ``0 <= a <= 1``."""
    if x < 1.0:
        # gamma(x) = gamma(1 + x) / x, which stays finite as x -> 0
        return math.gamma(x + a) * x / math.gamma(1.0 + x)
    if x < 20.0:
        return math.gamma(x + a) / math.gamma(x)
    # difference of Stirling expansions, arranged so nothing large cancels
    log_ratio = (
        (x - 0.5) * math.log1p(a / x)
        + a * math.log(x + a)
        - a
        + (_stirling_tail(x + a) - _stirling_tail(x))
    )
    return math.exp(log_ratio)


def deriv_series(alpha: float, f: PowerSeries) -> PowerSeries:
    """Differentiate *f* term by term.

    :raises DomainError: if an exponent lies strictly between 0 and *alpha*,
        where the result would carry a negative power.
    """
    alpha = _check_order(alpha, allow_one=True)
    out = []
    for c, nu in f.terms:
        if nu == 0.0:
            continue
        if nu < alpha:
            raise DomainError(
                f"exponent {nu!r} lies in (0, alpha={alpha!r}); "
                "its derivative would have a negative power"
            )
        out.append((c * deriv_power_coeff(alpha, nu), nu - alpha))
    return PowerSeries(tuple(out))


# }}}


# {{{ sampled functions


@dataclass(frozen=True)
class GridFunction:
    """Samples ``values[j] = f(x0 + j h)`` on a uniform grid."""

    x0: float
    h: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        x0, h = float(self.x0), float(self.h)
        if not (math.isfinite(x0) and x0 >= 0.0):
            raise ParamError(f"x0 must be finite and >= 0: got {x0!r}")
        if not (math.isfinite(h) and h > 0.0):
            raise ParamError(f"h must be positive: got {h!r}")
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size < 3:
            raise ParamError("a grid function needs a 1d array of at least 3 values")
        if not np.all(np.isfinite(values)):
            raise ParamError("grid values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(
        cls, f: Callable[[np.ndarray], np.ndarray], x_max: float, n: int, x0: float = 0.0
    ) -> GridFunction:
        """Sample *f* at *n* uniform points on ``[x0, x_max]``."""
        h = (x_max - x0) / (n - 1)
        return cls(x0, h, f(x0 + h * np.arange(n)))

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.h * np.arange(self.values.size)

    def __len__(self) -> int:
        return int(self.values.size)


def _product_trapezoid_weights(mu: float, n: int) -> np.ndarray:
    m = np.arange(n, dtype=float)
    p = mu + 1.0
    w = (m + 1.0) ** p - 2.0 * m**p + np.abs(m - 1.0) ** p
    w[0] = 1.0
    return w


def frac_integral(mu: float, f: GridFunction) -> np.ndarray:
    r"""Riemann-Liouville integral :math:`I^\mu[f - f(x_0)]` on the grid of *f*.

    *f* is interpolated piecewise linearly and the kernel
    :math:`(x - \tau)^{\mu - 1}` is integrated exactly on every cell.
    """
    phi = f.values - f.values[0]
    n = phi.size
    w = _product_trapezoid_weights(mu, n)
    if n <= _DIRECT_CONV_MAX:
        conv = np.convolve(w, phi)[:n]
    else:
        conv = signal.fftconvolve(w, phi)[:n]
    conv[0] = 0.0
    return f.h**mu / special.gamma(mu + 2.0) * conv


def deriv_numeric(alpha: float, f: GridFunction) -> GridFunction:
    """Fractional derivative of sampled data, lower terminal ``f.x0``.

    The fractional integral of order ``1 - alpha`` is formed by product
    integration and then differentiated with second-order centered
    differences (one-sided at the two ends). For smooth *f* the error at a
    fixed interior point decays like ``h**2``; near ``x0`` it is limited
    by the ``(x - x0)**(1 - alpha)`` behaviour of the result.
    """
    alpha = _check_order(alpha, allow_one=False)
    if len(f) < 5:
        raise ParamError("numeric derivative needs at least 5 samples")
    g = frac_integral(1.0 - alpha, f)
    return GridFunction(f.x0, f.h, np.gradient(g, f.h))


def observed_orders(errors: Sequence[float]) -> list[float]:
    """Convergence orders ``log2(e_k / e_(k+1))`` from errors at halved steps."""
    e = np.asarray(errors, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return [float(v) for v in np.log2(e[:-1] / e[1:])]


@dataclass(frozen=True)
class ConvergenceStudy:
    """Errors of :func:`deriv_numeric` against a closed form under h-halving."""

    steps: tuple[float, ...]
    max_errors: tuple[float, ...]
    orders: tuple[float, ...]

    @property
    def order(self) -> float:
        """Order observed between the two finest grids."""
        return self.orders[-1]


def convergence_study(
    alpha: float,
    f: Callable[[np.ndarray], np.ndarray],
    exact: Callable[[np.ndarray], np.ndarray],
    *,
    x_max: float = 1.0,
    n_coarse: int = 101,
    levels: int = 4,
    window: tuple[float, float] = (0.1, 0.9),
) -> ConvergenceStudy:
    """Measure the error of :func:`deriv_numeric` while halving the step.

    Errors are taken at the coarse-grid points inside
    ``window * x_max``; these lie on every refined grid, so the comparison
    is made at the same abscissae throughout.
    """
    x_coarse = np.linspace(0.0, x_max, n_coarse)
    keep = np.flatnonzero((x_coarse >= window[0] * x_max) & (x_coarse <= window[1] * x_max))
    ref = exact(x_coarse[keep])
    steps, errs = [], []
    for level in range(levels):
        stride = 2**level
        grid = GridFunction.from_function(f, x_max, (n_coarse - 1) * stride + 1)
        d = deriv_numeric(alpha, grid)
        steps.append(grid.h)
        errs.append(float(np.max(np.abs(d.values[keep * stride] - ref))))
    return ConvergenceStudy(tuple(steps), tuple(errs), tuple(observed_orders(errs)))


# }}}


# {{{ closed-form identities


@dataclass(frozen=True)
class IdentityParams:
    """Parameters shared by the identities: order, scale and second parameter."""

    alpha: float
    a: float = 1.0
    beta: float | None = None


def _sum_adaptive(
    term: Callable[[int], float], tol: float, terms_max: int
) -> SeriesEvalResult:
    """Sum ``term(0) + term(1) + ...`` with the stopping rule used in :mod:`fracweier.mlf`.

    The reported bound adds a rounding allowance ``4 n eps sum|t|`` to the
    geometric tail estimate, so it also covers floating-point error.
    """
    acc = Accumulator()
    abs_sum = 0.0
    prev, prev_small, tail = 0.0, False, math.inf
    for k in range(terms_max):
        t = term(k)
        acc.add(t)
        a = abs(t)
        abs_sum += a
        if a > 0 and prev > 0:
            r = a / prev
            tail = a * r / (1.0 - r) if r < 1.0 else math.inf
        s = abs(acc.value)
        small = a <= tol * s
        if k > 0 and small and prev_small and tail <= tol * s:
            break
        prev_small = small
        if a > 0:
            prev = a
    else:
        raise NoConvergence(f"term-by-term series did not converge in {terms_max} terms")
    n = k + 1
    return SeriesEvalResult(acc.value, n, tail + 4.0 * n * _EPS * abs_sum)


def _with_rounding(r: SeriesEvalResult, scale: float = 1.0) -> SeriesEvalResult:
    """Scale a closed-form value and widen its bound by a rounding allowance."""
    value = scale * r.value
    bound = abs(scale) * r.tail_bound + 8.0 * _EPS * max(abs(value), _EPS)
    return SeriesEvalResult(value, r.terms_used, bound)


@dataclass(frozen=True)
class Identity:
    """A closed-form derivative rule ``D^order f = rhs``.

    ``lhs`` differentiates the power series of ``f`` term by term; ``rhs``
    evaluates the closed form; ``function`` samples ``f`` itself and
    ``derivative`` the closed form, both vectorized, for comparisons with
    :func:`deriv_numeric`.
    """

    name: str
    formula: str
    _series: Callable[[IdentityParams], Callable[[int], tuple[float, float]]] = field(repr=False)
    _order: Callable[[IdentityParams], float] = field(repr=False)
    _rhs: Callable[[float, IdentityParams], SeriesEvalResult] = field(repr=False)
    _function: Callable[[np.ndarray, IdentityParams], np.ndarray] = field(repr=False)
    _check: Callable[[IdentityParams], None] = field(repr=False)
    needs_beta: bool = False
    _rhs_vec: Callable[[np.ndarray, IdentityParams], np.ndarray] | None = field(
        default=None, repr=False
    )

    def check(self, p: IdentityParams) -> None:
        """Raise :class:`DomainError` if *p* lies outside this rule's range."""
        if not (math.isfinite(p.a) and math.isfinite(p.alpha)):
            raise DomainError("parameters must be finite")
        if self.needs_beta and p.beta is None:
            raise DomainError(f"identity {self.name!r} needs beta")
        self._check(p)

    def order(self, p: IdentityParams) -> float:
        return self._order(p)

    def lhs(self, x: float, p: IdentityParams, *, tol: float = mlf.DEFAULT_TOL) -> SeriesEvalResult:
        self.check(p)
        _check_positive(x)
        order = self._order(p)
        gen = self._series(p)

        def term(k: int) -> float:
            c, nu = gen(k)
            if c == 0.0 or nu == 0.0:
                return 0.0
            return c * deriv_power_coeff(order, nu) * x ** (nu - order)

        return _sum_adaptive(term, tol, mlf.DEFAULT_TERMS_MAX)

    def rhs(self, x: float, p: IdentityParams, *, tol: float = mlf.DEFAULT_TOL) -> SeriesEvalResult:
        self.check(p)
        _check_positive(x)
        return self._rhs(x, p, tol)

    def residual(self, x: float, p: IdentityParams) -> tuple[float, float]:
        """Return ``(|lhs - rhs|, combined error bound of both sides)``."""
        left, right = self.lhs(x, p), self.rhs(x, p)
        return abs(left.value - right.value), left.tail_bound + right.tail_bound

    def function(self, x: np.ndarray, p: IdentityParams) -> np.ndarray:
        self.check(p)
        return self._function(np.asarray(x, dtype=float), p)

    def derivative(self, x: np.ndarray, p: IdentityParams) -> np.ndarray:
        """Vectorized closed form, ``nan`` where it is undefined (``x = 0``)."""
        self.check(p)
        xs = np.asarray(x, dtype=float)
        out = np.full(xs.shape, np.nan)
        if self._rhs_vec is not None:
            pos = xs > 0
            out[pos] = self._rhs_vec(xs[pos], p)
            return out
        for i in np.flatnonzero(xs > 0):
            out.flat[i] = self._rhs(float(xs.flat[i]), p, mlf.DEFAULT_TOL).value
        return out


def _check_positive(x: float) -> None:
    if not (math.isfinite(x) and x > 0.0):
        raise DomainError(f"identities are evaluated at x > 0: got {x!r}")


def _order_in_unit(p: IdentityParams) -> None:
    _check_order(p.alpha, allow_one=True)


def _real_ml(alpha: float, beta: float, z: np.ndarray) -> np.ndarray:
    return np.array([mlf.mittag_leffler2(alpha, beta, float(v)).value for v in z.ravel()]).reshape(
        z.shape
    )


def _ml_eigen() -> Identity:
    def series(p):
        return lambda k: (p.a**k * mlf.rgamma(1.0 + k * p.alpha), k * p.alpha)

    def rhs(x, p, tol):
        return _with_rounding(mlf.mittag_leffler(p.alpha, p.a * x**p.alpha, tol=tol), p.a)

    return Identity(
        "ml_eigen",
        "D^alpha E_alpha(a x^alpha) = a E_alpha(a x^alpha)",
        series,
        lambda p: p.alpha,
        rhs,
        lambda x, p: _real_ml(p.alpha, 1.0, p.a * x**p.alpha),
        _order_in_unit,
    )


def _ml_order() -> Identity:
    # here beta is the derivative order and alpha the Mittag-Leffler index
    def series(p):
        return lambda k: (mlf.rgamma(1.0 + k * p.alpha), k * p.alpha)

    def rhs(x, p, tol):
        b = p.beta
        r = mlf.mittag_leffler2(p.alpha, p.alpha - b + 1.0, x**p.alpha, tol=tol)
        return _with_rounding(r, x ** (p.alpha - b))

    def check(p):
        _order_in_unit(p)
        _check_order(p.beta, allow_one=True)
        if p.beta > p.alpha:
            raise DomainError(f"needs beta <= alpha: got beta={p.beta!r}, alpha={p.alpha!r}")

    return Identity(
        "ml_order",
        "D^beta E_alpha(x^alpha) = x^(alpha-beta) E_(alpha,alpha-beta+1)(x^alpha)",
        series,
        lambda p: p.beta,
        rhs,
        lambda x, p: _real_ml(p.alpha, 1.0, x**p.alpha),
        check,
        needs_beta=True,
    )


def _trig_series(alpha: float, a: float, beta: float, shift: float, sine: bool):
    """Terms of ``x**shift * trig_(alpha,beta)(a x**alpha)``."""
    odd = 1 if sine else 0

    def gen(k: int) -> tuple[float, float]:
        q = 2 * k + odd
        c = (-1.0) ** k * a**q * mlf.rgamma(beta + q * alpha)
        return c, q * alpha + shift

    return gen


def _frac_trig(sine: bool) -> Identity:
    def series(p):
        return _trig_series(p.alpha, p.a, 1.0, 0.0, sine)

    def rhs(x, p, tol):
        u = p.a * x**p.alpha
        if sine:
            return _with_rounding(mlf.frac_cos(p.alpha, u, tol=tol), p.a)
        return _with_rounding(mlf.frac_sin(p.alpha, u, tol=tol), -p.a)

    def function(x, p):
        c, s = mlf.sincos_alpha(p.alpha, p.a * np.maximum(x, 0.0) ** p.alpha)
        return s if sine else c

    def rhs_vec(x, p):
        c, s = mlf.sincos_alpha(p.alpha, p.a * x**p.alpha)
        return p.a * c if sine else -p.a * s

    if sine:
        name, formula = "frac_sin", "D^alpha sin_alpha(a x^alpha) = a cos_alpha(a x^alpha)"
    else:
        name, formula = "frac_cos", "D^alpha cos_alpha(a x^alpha) = -a sin_alpha(a x^alpha)"
    return Identity(
        name, formula, series, lambda p: p.alpha, rhs, function, _order_in_unit, _rhs_vec=rhs_vec
    )


def _two_param_trig(sine: bool) -> Identity:
    def series(p):
        return _trig_series(p.alpha, 1.0, p.beta, p.beta - 1.0, sine)

    def rhs(x, p, tol):
        f = mlf.frac_sin2 if sine else mlf.frac_cos2
        r = f(p.alpha, p.beta - p.alpha, x**p.alpha, tol=tol)
        return _with_rounding(r, x ** (p.beta - p.alpha - 1.0))

    def function(x, p):
        f = mlf.frac_sin2 if sine else mlf.frac_cos2
        vals = [f(p.alpha, p.beta, float(v) ** p.alpha).value for v in x.ravel()]
        return np.asarray(vals).reshape(x.shape) * x ** (p.beta - 1.0)

    def check(p):
        _order_in_unit(p)
        b = p.beta
        if not math.isfinite(b):
            raise DomainError("beta must be finite")
        if sine:
            # lowest exponent alpha + beta - 1 must be >= alpha, and beta - alpha > 0
            if b < 1.0 or b <= p.alpha:
                raise DomainError(f"needs beta >= 1 and beta > alpha: got beta={b!r}")
        elif b < 1.0 + p.alpha:
            # lowest exponent beta - 1 must be >= alpha (a constant would be annihilated)
            raise DomainError(f"needs beta >= 1 + alpha: got beta={b!r}, alpha={p.alpha!r}")

    trig = "sin" if sine else "cos"
    formula = (
        f"D^alpha [x^(beta-1) {trig}_(alpha,beta)(x^alpha)]"
        f" = x^(beta-alpha-1) {trig}_(alpha,beta-alpha)(x^alpha)"
    )
    return Identity(
        f"{trig}_two_param", formula, series, lambda p: p.alpha, rhs, function, check, needs_beta=True
    )


def _exp() -> Identity:
    def series(p):
        return lambda k: (p.a**k * mlf.rgamma(1.0 + k), float(k))

    def rhs(x, p, tol):
        r = mlf.mittag_leffler2(1.0, 2.0 - p.alpha, p.a * x, tol=tol)
        return _with_rounding(r, p.a * x ** (1.0 - p.alpha))

    return Identity(
        "exp",
        "D^alpha exp(a x) = a x^(1-alpha) E_(1,2-alpha)(a x)",
        series,
        lambda p: p.alpha,
        rhs,
        lambda x, p: np.exp(p.a * x),
        _order_in_unit,
    )


def _classical_trig(sine: bool) -> Identity:
    def series(p):
        return _trig_series(1.0, p.a, 1.0, 0.0, sine)

    def rhs(x, p, tol):
        f = mlf.frac_cos2 if sine else mlf.frac_sin2
        r = f(1.0, 2.0 - p.alpha, p.a * x, tol=tol)
        return _with_rounding(r, (p.a if sine else -p.a) * x ** (1.0 - p.alpha))

    if sine:
        name, formula = "sin", "D^alpha sin(a x) = a x^(1-alpha) cos_(1,2-alpha)(a x)"
    else:
        name, formula = "cos", "D^alpha cos(a x) = -a x^(1-alpha) sin_(1,2-alpha)(a x)"
    return Identity(
        name,
        formula,
        series,
        lambda p: p.alpha,
        rhs,
        lambda x, p: np.sin(p.a * x) if sine else np.cos(p.a * x),
        _order_in_unit,
    )


_TABLE: tuple[Identity, ...] = (
    _ml_eigen(),
    _ml_order(),
    _frac_trig(sine=False),
    _frac_trig(sine=True),
    _two_param_trig(sine=False),
    _two_param_trig(sine=True),
    _exp(),
    _classical_trig(sine=False),
    _classical_trig(sine=True),
)


def identity_table() -> list[Identity]:
    """All closed-form derivative rules, in a fixed order."""
    return list(_TABLE)


def get_identity(name: str) -> Identity:
    for ident in _TABLE:
        if ident.name == name:
            return ident
    known = ", ".join(i.name for i in _TABLE)
    raise ParamError(f"unknown identity {name!r}; known: {known}")


def default_params(ident: Identity, alpha: float, a: float = 1.0) -> IdentityParams:
    """Representative in-range parameters for *ident* at order *alpha*."""
    beta = None
    if ident.name == "ml_order":
        beta = alpha / 2.0
    elif ident.name == "cos_two_param":
        beta = 1.5 + alpha
    elif ident.name == "sin_two_param":
        beta = 1.5
    return IdentityParams(alpha, a, beta)


# }}}


def addition_residual(alpha: float, x: float, y: float) -> tuple[float, float]:
    """Residuals of the angle-addition rules for the fractional sine and cosine.

    Returns the absolute differences between ``sin_alpha((x+y)**alpha)`` and
    ``sin_alpha(x**alpha) cos_alpha(y**alpha) + cos_alpha(x**alpha) sin_alpha(y**alpha)``,
    and between the cosine counterparts. They vanish for ``alpha = 1`` and
    for ``y = 0``; for other orders they measure how far the rules are from
    holding.
    """
    alpha = _check_order(alpha, allow_one=True)
    if not (x >= 0.0 and y >= 0.0 and math.isfinite(x) and math.isfinite(y)):
        raise DomainError("addition residual needs finite x, y >= 0")
    u = np.array([x, y, x + y]) ** alpha
    c, s = mlf.sincos_alpha(alpha, u)
    sin_res = abs(s[2] - (s[0] * c[1] + c[0] * s[1]))
    cos_res = abs(c[2] - (c[0] * c[1] - s[0] * s[1]))
    return float(sin_res), float(cos_res)
