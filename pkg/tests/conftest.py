"""Extended-precision oracles shared by the test modules."""

from __future__ import annotations

import mpmath as mp
import numpy as np
import pytest


def _digits_for(magnitude: float) -> int:
    # largest term is about exp(magnitude); keep 30 digits beyond it
    return int(max(magnitude, 0.0) / 2.3) + 40


def ml_oracle(alpha: float, beta: float, z: complex, *, step: int = 1, offset: int = 0,
              alternate: bool = False) -> complex:
    """Direct high-precision summation of ``sum s_k z^p / Gamma(beta + p alpha)``.

    Orders are converted exactly (``mpf(alpha)``) so the oracle sees the same
    double-precision parameters as the code under test.
    """
    r = abs(complex(z)) ** (1.0 / alpha) if z != 0 else 0.0
    with mp.workdps(_digits_for(r)):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        zz = mp.mpc(complex(z))
        s = mp.mpf(0)
        j = 0
        tiny = mp.mpf(10) ** (-mp.mp.dps + 5)
        while True:
            p = offset + step * j
            t = zz**p * mp.rgamma(b + p * a)
            if alternate and j % 2:
                t = -t
            s += t
            j += 1
            if j > 20 and p * float(a) > 2 * r + 20 and abs(t) < tiny:
                break
        return complex(s)


def cos_oracle(alpha: float, beta: float, u: float) -> float:
    return ml_oracle(alpha, beta, u, step=2, offset=0, alternate=True).real


def sin_oracle(alpha: float, beta: float, u: float) -> float:
    return ml_oracle(alpha, beta, u, step=2, offset=1, alternate=True).real


def sup_rounding(alpha: float, beta: float, u: float) -> float:
    """Rounding allowance ``8 eps sum|t_k|`` for a series at argument of modulus *u*.

    The sum of absolute terms of any of the series equals ``E_(alpha,beta)(|u|)``.
    """
    return 8.0 * np.finfo(float).eps * abs(ml_oracle(alpha, beta, abs(u)))


@pytest.fixture(scope="session")
def classical_fixture():
    from fracweier import weierstrass

    p = weierstrass.WeierstrassParams(2.0, 1.5, 1.0, 30)
    return weierstrass.sample(p, 1.0, 2**16 + 1)


# lines reported by the acceptance suite, echoed once at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
