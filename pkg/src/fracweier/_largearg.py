r"""Mittag-Leffler function on the imaginary axis for large arguments.

For ``0 < alpha < 1`` the power series of :math:`E_\alpha(iu)` has terms of
size :math:`\exp(u^{1/\alpha})` while the sum stays bounded, so beyond
moderate ``u`` it carries no correct digits in double precision. Two
representations that do not cancel are used instead.

*Contour integral.* Deforming the Hankel contour of

.. math::

    E_\alpha(z) = \frac{1}{2\pi i} \int_{Ha}
        \frac{e^s s^{\alpha - 1}}{s^\alpha - z} \,\mathrm{d}s

onto the two rays :math:`s = r e^{\pm i\varphi}`, ``pi/2 < phi <= pi``,
leaves the residues :math:`\alpha^{-1} \exp(s_*)` of the poles
:math:`s_*^\alpha = z` with :math:`|\arg s_*| < \varphi`. With
:math:`r = t^{1/\alpha}` the ray integrands are smooth at the origin; they
are integrated by composite Gauss-Legendre on panels that halve towards
zero. The panels are scale invariant, so a pole at distance
``|z| sin(delta)`` from the path is resolved for any ``|z|`` once the angle
``delta`` between ``z`` and the ray image is bounded away from zero, which
is what the choice of ``phi`` guarantees.

*Asymptotic expansion.* For :math:`|z|^{1/\alpha}` large,

.. math::

    E_\alpha(z) \sim \sum_{|\arg s_*| < \pi} \frac{e^{s_*}}{\alpha}
        - \sum_{k \ge 1} \frac{z^{-k}}{\Gamma(1 - \alpha k)},

accepted only where its terms have decreased below the working precision.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special

# exp(-_DECAY) is the neglected size of the ray integrand at the far end
_DECAY = 42.0
_GL_ORDER = 20
# smallest panel edge relative to the integration length
_TMIN_REL = 1.0e-6
# maximum phase (or decay) change allowed inside a single panel
_PANEL_PHASE = 6.0

_ASYM_RADIUS = 40.0
_ASYM_TERMS = 60
_ASYM_TOL = 2.0**-60

_CHUNK = 1 << 21


def _ray_angle(alpha: float, theta: float) -> float:
    """Pick the ray angle ``phi`` keeping ``z = |z| e^{i theta}`` off the path."""
    best = (-1.0, math.pi)
    for phi in math.pi * np.array([1.0, 0.9, 0.8, 0.7, 0.6]):
        d = min(
            abs((theta - sgn * alpha * phi + math.pi) % (2.0 * math.pi) - math.pi)
            for sgn in (1.0, -1.0)
        )
        if d >= 0.15 * math.pi:
            return float(phi)
        if d > best[0]:
            best = (d, float(phi))
    return best[1]


@lru_cache(maxsize=32)
def _ray_nodes(alpha: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    c = abs(math.cos(phi))
    rate = max(abs(math.sin(phi)), c)
    tmax = (_DECAY / c) ** alpha

    edges = [tmax]
    while edges[-1] > _TMIN_REL * tmax:
        edges.append(edges[-1] / 2.0)
    edges.append(0.0)
    edges.reverse()

    # split panels where the oscillation or decay of exp(r e^{i phi}) is fast
    fine = [edges[0]]
    for a, b in zip(edges[:-1], edges[1:]):
        ra, rb = a ** (1.0 / alpha), b ** (1.0 / alpha)
        m = max(1, math.ceil((rb - ra) * rate / _PANEL_PHASE))
        fine.extend((ra + (rb - ra) * j / m) ** alpha for j in range(1, m + 1))

    x, w = leggauss(_GL_ORDER)
    fine_a = np.array(fine)
    half = 0.5 * np.diff(fine_a)
    mid = 0.5 * (fine_a[1:] + fine_a[:-1])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    t.flags.writeable = False
    wt.flags.writeable = False
    return t, wt


def _contour(alpha: float, u: np.ndarray) -> np.ndarray:
    theta = 0.5 * math.pi
    phi = _ray_angle(alpha, theta)
    t, w = _ray_nodes(alpha, phi)

    rays = []
    for sgn in (1.0, -1.0):
        e = np.exp(1j * sgn * phi)
        g = sgn * w / alpha * np.exp(t ** (1.0 / alpha) * e + 1j * sgn * phi * alpha)
        tau = t * np.exp(1j * sgn * phi * alpha)
        rays.append((g, tau))

    z = 1j * u
    out = np.zeros(u.shape, dtype=complex)
    step = max(1, _CHUNK // (2 * t.size))
    for i in range(0, u.size, step):
        zi = z[i : i + step, None]
        acc = np.zeros(zi.shape[0], dtype=complex)
        for g, tau in rays:
            acc += (g / (tau - zi)).sum(axis=1)
        out[i : i + step] = acc / (2j * math.pi)

    # poles outside the contour (|arg s*| < phi) contribute their residues
    for m in range(-1, 2):
        ts = (theta + 2.0 * math.pi * m) / alpha
        if abs(ts) < phi:
            out += np.exp(u ** (1.0 / alpha) * np.exp(1j * ts)) / alpha
    return out


def _asymptotic(alpha: float, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Asymptotic sum and a mask of the entries where it converged."""
    theta = 0.5 * math.pi
    s = np.zeros(u.shape, dtype=complex)
    for m in range(-1, 2):
        ts = (theta + 2.0 * math.pi * m) / alpha
        if abs(ts) < math.pi:
            s += np.exp(u ** (1.0 / alpha) * np.exp(1j * ts)) / alpha

    zinv = 1.0 / (1j * u)
    zk = np.ones_like(zinv)
    prev = np.full(u.shape, np.inf)
    ok = np.zeros(u.shape, dtype=bool)
    bad = np.zeros(u.shape, dtype=bool)
    small_run = np.zeros(u.shape, dtype=int)
    for k in range(1, _ASYM_TERMS + 1):
        zk = zk * zinv
        coef = special.rgamma(1.0 - alpha * k)
        if coef == 0.0:
            continue
        t = -zk * coef
        live = ~(ok | bad)
        s = np.where(live, s + t, s)

        a = np.abs(t)
        bad |= live & (a > prev)
        prev = np.where(live, a, prev)
        small_run = np.where(live & (a <= _ASYM_TOL * np.abs(s)), small_run + 1, 0)
        ok |= live & ~bad & (small_run >= 2)
        if not np.any(~(ok | bad)):
            break
    return s, ok


def mittag_leffler_iu_large(alpha: float, u: np.ndarray) -> np.ndarray:
    """Evaluate ``E_alpha(i u)`` for ``0 < alpha < 1`` and ``u > 0``."""
    u = np.asarray(u, dtype=float)
    out = np.empty(u.shape, dtype=complex)
    flat_u = u.ravel()
    flat = out.ravel()

    use_asym = flat_u ** (1.0 / alpha) >= _ASYM_RADIUS
    rest = ~use_asym
    if np.any(use_asym):
        s, ok = _asymptotic(alpha, flat_u[use_asym])
        idx = np.flatnonzero(use_asym)
        flat[idx[ok]] = s[ok]
        rest[idx[~ok]] = True
    if np.any(rest):
        flat[rest] = _contour(alpha, flat_u[rest])
    return flat.reshape(u.shape)
