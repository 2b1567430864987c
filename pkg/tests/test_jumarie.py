import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracweier import jumarie, mlf
from fracweier.errors import DomainError, ParamError
from fracweier.jumarie import GridFunction, IdentityParams, PowerSeries

ORDERS = [0.3, 0.5, 0.7, 0.9, 1.0]


def quad_derivative(alpha, f, x):
    """Fractional derivative at *x* by quadrature plus numerical differentiation.

    ``f`` takes and returns mpmath numbers; the kernel singularity at the
    upper end is handled by the tanh-sinh rule.
    """
    with mp.workdps(30):
        a = mp.mpf(alpha)
        f0 = f(mp.mpf(0))

        def integral(y):
            return mp.quad(lambda t: (y - t) ** (-a) * (f(t) - f0), [0, y]) / mp.gamma(1 - a)

        return float(mp.diff(integral, mp.mpf(x)))


def mp_trig(alpha, a, sine):
    al = mp.mpf(alpha)

    def f(t):
        if t == 0:
            return mp.mpf(0) if sine else mp.mpf(1)
        u = a * t**al
        # u < 1 on the test interval, so 25 terms exceed working precision
        return mp.fsum(
            (-1) ** k * u ** (2 * k + int(sine)) * mp.rgamma(1 + (2 * k + int(sine)) * al)
            for k in range(25)
        )

    return f


# {{{ power rule


def test_power_coeff_examples():
    assert jumarie.deriv_power_coeff(0.5, 1.0) == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-15)
    assert jumarie.deriv_power_coeff(1.0, 3.0) == pytest.approx(3.0, rel=1e-15)
    assert jumarie.deriv_power_coeff(0.4, 0.0) == 0.0


@given(st.floats(0.0, 1.0, exclude_min=True), st.one_of(st.floats(0.0, 40.0), st.floats(0.0, 1e6)))
def test_power_coeff_gamma_ratio(alpha, nu):
    if nu == 0:
        return
    with mp.workdps(40):
        ref = mp.gamma(1 + mp.mpf(nu)) / mp.gamma((1 - mp.mpf(alpha)) + mp.mpf(nu))
    assert abs(jumarie.deriv_power_coeff(alpha, nu) - ref) <= 2e-14 * ref


@pytest.mark.parametrize(("alpha", "nu"), [(0.3, 1.0), (0.5, 2.5), (0.8, 1.3)])
def test_power_coeff_matches_quadrature(alpha, nu):
    x = 0.7
    got = jumarie.deriv_power_coeff(alpha, nu) * x ** (nu - alpha)
    assert got == pytest.approx(quad_derivative(alpha, lambda t: t ** mp.mpf(nu), x), rel=1e-8)


def test_series_rejects_small_exponent():
    with pytest.raises(DomainError):
        jumarie.deriv_series(0.6, PowerSeries(((1.0, 0.3),)))


def test_constants_are_annihilated():
    d = jumarie.deriv_series(0.5, PowerSeries(((4.0, 0.0), (1.0, 1.0))))
    assert d.exponents == (0.5,)


exponent_sets = st.lists(st.floats(1.0, 6.0), min_size=1, max_size=4, unique=True)
coefficients = st.floats(-10.0, 10.0)


@given(st.floats(0.05, 1.0), exponent_sets, exponent_sets, st.data())
def test_linearity_disjoint_exponents(alpha, e1, e2, data):
    e2 = [e for e in e2 if e not in e1]
    f = PowerSeries.from_terms((data.draw(coefficients), e) for e in e1)
    g = PowerSeries.from_terms((data.draw(coefficients), e) for e in e2)
    whole = jumarie.deriv_series(alpha, f + g)
    parts = jumarie.deriv_series(alpha, f) + jumarie.deriv_series(alpha, g)
    assert whole == parts


@given(st.floats(0.05, 1.0), st.floats(-5, 5), st.floats(-5, 5), st.floats(0.0, 3.0))
def test_linearity_in_values(alpha, c1, c2, x):
    f = PowerSeries(((1.0, 1.0), (1.0, 2.5)))
    g = PowerSeries(((1.0, 1.5), (-2.0, 2.5)))
    combo = PowerSeries.from_terms([(c1 * c, nu) for c, nu in f.terms] + [(c2 * c, nu) for c, nu in g.terms])
    lhs = jumarie.deriv_series(alpha, combo)(x)
    rhs = c1 * jumarie.deriv_series(alpha, f)(x) + c2 * jumarie.deriv_series(alpha, g)(x)
    assert lhs == pytest.approx(rhs, abs=1e-12 * (1 + abs(c1) + abs(c2)) * (1 + x) ** 3)


@pytest.mark.parametrize(
    "terms", [((1.0, -0.5),), ((1.0, 2.0), (1.0, 1.0)), ((math.inf, 1.0),), ((1.0, math.nan),)]
)
def test_power_series_validation(terms):
    with pytest.raises(ParamError):
        PowerSeries(terms)


def test_power_series_vanishes_left_of_origin():
    f = PowerSeries(((2.0, 0.0), (1.0, 0.5)))
    assert np.array_equal(f(np.array([-1.0, 0.0, 4.0])), np.array([0.0, 2.0, 4.0]))


@pytest.mark.parametrize("alpha", [0.0, -0.1, 1.2, math.nan])
def test_order_range(alpha):
    with pytest.raises(DomainError):
        jumarie.deriv_power_coeff(alpha, 1.0)


# }}}


# {{{ sampled data


def test_grid_function_validation():
    with pytest.raises(ParamError):
        GridFunction(0.0, 0.1, [1.0, 2.0])
    with pytest.raises(ParamError):
        GridFunction(0.0, 0.0, [1.0, 2.0, 3.0])
    with pytest.raises(ParamError):
        GridFunction(0.0, 0.1, [1.0, math.nan, 3.0])
    g = GridFunction(0.0, 0.5, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        g.values[0] = 5.0
    assert len(g) == 3 and np.array_equal(g.x, [0.0, 0.5, 1.0])


@pytest.mark.parametrize("mu", [0.1, 0.5, 0.9])
def test_integral_exact_for_linear_data(mu):
    g = GridFunction.from_function(lambda x: 3.0 * x + 1.0, 2.0, 257)
    exact = 3.0 * g.x ** (1.0 + mu) / math.gamma(2.0 + mu)
    assert np.max(np.abs(jumarie.frac_integral(mu, g) - exact)) <= 1e-12


def test_integral_fft_and_direct_agree():
    f = np.sin
    small = GridFunction.from_function(f, 1.0, 4097)
    large = GridFunction.from_function(f, 2.0, 8193)
    a = jumarie.frac_integral(0.4, small)
    b = jumarie.frac_integral(0.4, large)[: a.size]
    assert np.max(np.abs(a - b)) <= 1e-12


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
def test_constant_is_annihilated_numerically(alpha):
    d = jumarie.deriv_numeric(alpha, GridFunction(0.0, 0.01, np.full(101, 7.5)))
    assert np.max(np.abs(d.values)) <= 1e-12


def test_numeric_needs_five_points_and_open_order():
    with pytest.raises(ParamError):
        jumarie.deriv_numeric(0.5, GridFunction(0.0, 0.1, [0.0, 1.0, 2.0, 3.0]))
    with pytest.raises(DomainError):
        jumarie.deriv_numeric(1.0, GridFunction.from_function(np.sin, 1.0, 11))


@pytest.mark.parametrize(
    ("alpha", "nu", "min_order"),
    [(0.5, 1.0, 1.9), (0.7, 1.0, 1.9), (0.7, 2.0, 1.9), (0.5, 0.5, 1.4), (0.7, 0.5, 1.4),
     (0.3, 2.0, 1.9)],
)
def test_power_rule_convergence(alpha, nu, min_order):
    c = jumarie.deriv_power_coeff(alpha, nu)
    study = jumarie.convergence_study(
        alpha, lambda x: x**nu, lambda x: c * x ** (nu - alpha), levels=4
    )
    assert all(e > 0 for e in study.max_errors)
    assert study.order >= min_order
    assert np.all(np.diff(study.max_errors) < 0)


def test_observed_orders():
    assert jumarie.observed_orders([1.0, 0.25, 0.0625]) == [2.0, 2.0]


# }}}


# {{{ identities


def test_table_names():
    names = [i.name for i in jumarie.identity_table()]
    assert names == [
        "ml_eigen", "ml_order", "frac_cos", "frac_sin",
        "cos_two_param", "sin_two_param", "exp", "cos", "sin",
    ]
    with pytest.raises(ParamError):
        jumarie.get_identity("tan")


@pytest.mark.parametrize("ident", jumarie.identity_table(), ids=lambda i: i.name)
@pytest.mark.parametrize("alpha", ORDERS)
def test_identity_series_matches_closed_form(ident, alpha):
    p = jumarie.default_params(ident, alpha)
    for x in np.linspace(0.05, 2.0, 40):
        res, bound = ident.residual(float(x), p)
        assert res <= bound, (x, res, bound)


@pytest.mark.parametrize(
    ("name", "alpha", "a", "f"),
    [
        ("exp", 0.5, 1.0, mp.exp),
        ("sin", 0.3, 2.0, mp.sin),
        ("cos", 0.8, 1.5, mp.cos),
        ("frac_sin", 0.5, 1.0, mp_trig(0.5, 1.0, True)),
        ("frac_cos", 0.7, 1.0, mp_trig(0.7, 1.0, False)),
    ],
)
def test_identity_closed_form_against_quadrature(name, alpha, a, f):
    ident = jumarie.get_identity(name)
    x = 0.8
    if name in ("exp", "sin", "cos"):
        g = lambda t: f(a * t)  # noqa: E731
    else:
        g = f
    got = ident.rhs(x, IdentityParams(alpha, a)).value
    assert got == pytest.approx(quad_derivative(alpha, g, x), rel=1e-7, abs=1e-9)


@pytest.mark.parametrize("name", ["exp", "sin", "cos", "frac_sin", "frac_cos", "ml_eigen"])
@pytest.mark.parametrize("alpha", [0.3, 0.6, 0.9])
@pytest.mark.parametrize("a", [1.0, 2.0])
def test_numeric_scheme_matches_identity(name, alpha, a):
    ident = jumarie.get_identity(name)
    p = jumarie.default_params(ident, alpha, a)
    grid = GridFunction.from_function(lambda x: ident.function(x, p), 2.0, 2001)
    d = jumarie.deriv_numeric(alpha, grid)
    keep = grid.x >= 0.2
    keep[-1] = False
    exact = ident.derivative(grid.x[keep], p)
    err = np.abs(d.values[keep] - exact)
    # exp and the Mittag-Leffler function grow, so their error is relative
    assert np.all(err <= 1e-3 * np.maximum(1.0, np.abs(exact)))


def test_frac_sin_numeric_order():
    ident = jumarie.get_identity("frac_sin")
    p = IdentityParams(0.4, 1.0)
    study = jumarie.convergence_study(
        0.4, lambda x: ident.function(x, p), lambda x: ident.derivative(x, p), levels=4
    )
    assert study.order >= 1.3


@pytest.mark.parametrize("name", ["frac_sin", "frac_cos", "exp", "sin", "cos"])
@pytest.mark.parametrize("x", [0.3, 1.0, 2.5])
def test_continuity_towards_first_order(name, x):
    ident = jumarie.get_identity(name)
    a = 1.3
    near = ident.rhs(x, IdentityParams(1.0 - 1e-6, a)).value
    classical = {
        "frac_sin": a * math.cos(a * x),
        "sin": a * math.cos(a * x),
        "frac_cos": -a * math.sin(a * x),
        "cos": -a * math.sin(a * x),
        "exp": a * math.exp(a * x),
    }[name]
    assert abs(near - classical) <= 1e-4 * max(1.0, abs(classical))


def test_ml_order_reduces_to_eigen_rule():
    x, alpha = 0.9, 0.6
    order = jumarie.get_identity("ml_order").rhs(x, IdentityParams(alpha, 1.0, alpha)).value
    eigen = jumarie.get_identity("ml_eigen").rhs(x, IdentityParams(alpha, 1.0)).value
    assert order == pytest.approx(eigen, rel=1e-13)


@pytest.mark.parametrize(
    ("name", "p"),
    [
        ("ml_order", IdentityParams(0.5, 1.0, 0.7)),
        ("ml_order", IdentityParams(0.5, 1.0, None)),
        ("cos_two_param", IdentityParams(0.5, 1.0, 1.2)),
        ("sin_two_param", IdentityParams(0.5, 1.0, 0.8)),
        ("exp", IdentityParams(1.5, 1.0)),
        ("exp", IdentityParams(0.0, 1.0)),
    ],
)
def test_identity_parameter_range(name, p):
    with pytest.raises(ParamError):
        jumarie.get_identity(name).lhs(0.5, p)


@pytest.mark.parametrize("x", [0.0, -1.0, math.inf])
def test_identity_needs_positive_x(x):
    with pytest.raises(DomainError):
        jumarie.get_identity("exp").lhs(x, IdentityParams(0.5))


def test_derivative_is_nan_at_origin():
    ident = jumarie.get_identity("frac_sin")
    out = ident.derivative(np.array([0.0, 0.5]), IdentityParams(0.5))
    assert math.isnan(out[0]) and math.isfinite(out[1])


# }}}


# {{{ angle addition


@settings(deadline=None)
@given(st.floats(0.0, 5.0), st.floats(0.0, 5.0))
def test_addition_exact_for_first_order(x, y):
    s, c = jumarie.addition_residual(1.0, x, y)
    assert s <= 1e-13 and c <= 1e-13


@settings(deadline=None)
@given(st.sampled_from([0.3, 0.5, 0.8]), st.floats(0.0, 5.0))
def test_addition_exact_for_zero_shift(alpha, x):
    s, c = jumarie.addition_residual(alpha, x, 0.0)
    assert s <= 1e-13 and c <= 1e-13


def test_addition_fails_for_fractional_order():
    s, c = jumarie.addition_residual(0.5, 1.0, 1.0)
    assert s > 1e-3 or c > 1e-3


def test_addition_domain():
    with pytest.raises(DomainError):
        jumarie.addition_residual(0.5, -1.0, 1.0)


def test_sincos_alpha_used_by_addition_matches_series():
    c, s = mlf.sincos_alpha(0.5, np.array([1.0]))
    assert s[0] == pytest.approx(mlf.frac_sin(0.5, 1.0).value, abs=1e-14)


# }}}
