"""Box-counting dimension and global Hölder exponent of sampled graphs."""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from fracweier.errors import DegenerateError, ParamError, ScaleError

MIN_ESTIMATOR_POINTS = 16
MIN_SCALES = 4
# narrowest admissible box or window, in grid steps
MIN_CELLS_PER_SCALE = 4
DEFAULT_EXPONENTS = tuple(range(4, 11))


@dataclass(frozen=True)
class SampledSignal:
    """Values on the uniform grid ``x0 + j h``, ``j = 0 .. n-1``.

    Two samples are enough to construct a signal; the estimators in this
    module ask for at least :data:`MIN_ESTIMATOR_POINTS`.
    """

    x0: float
    h: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        x0, h = float(self.x0), float(self.h)
        if not math.isfinite(x0):
            raise ParamError(f"x0 must be finite: got {x0!r}")
        if not (math.isfinite(h) and h > 0.0):
            raise ParamError(f"grid step must be positive: got {h!r}")
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise ParamError("a signal needs a 1d array of at least 2 values")
        if not np.all(np.isfinite(values)):
            raise ParamError("signal values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.h * np.arange(self.values.size)

    @property
    def domain(self) -> float:
        """Length of the sampled interval."""
        return self.h * (self.values.size - 1)

    def scaled(self, c: float) -> SampledSignal:
        return SampledSignal(self.x0, self.h, c * self.values)

    def _require_estimable(self) -> None:
        if self.values.size < MIN_ESTIMATOR_POINTS:
            raise ParamError(
                f"estimators need at least {MIN_ESTIMATOR_POINTS} samples, got {self.values.size}"
            )


@dataclass(frozen=True)
class DimensionEstimate:
    """Least-squares scaling exponent with its regression diagnostics.

    ``scales`` lists ``(scale, measure)`` pairs with strictly decreasing
    scales; the measure is a box count or a worst-case oscillation.
    """

    slope: float
    stderr: float
    r2: float
    scales: tuple[tuple[float, float], ...]
    intercept: float = 0.0
    degenerate: bool = False
    implied_dimension: float | None = None

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "stderr": self.stderr,
            "r2": self.r2,
            "intercept": self.intercept,
            "degenerate": self.degenerate,
            "implied_dimension": self.implied_dimension,
            "scales": [list(p) for p in self.scales],
        }


def _fit(log_x: np.ndarray, log_y: np.ndarray) -> tuple[float, float, float, float]:
    fit = stats.linregress(log_x, log_y)
    r2 = float(fit.rvalue**2) if np.isfinite(fit.rvalue) else 1.0
    stderr = float(fit.stderr) if np.isfinite(fit.stderr) else 0.0
    return float(fit.slope), stderr, r2, float(fit.intercept)


def _scales(signal: SampledSignal, exps: Iterable[int]) -> list[tuple[int, float]]:
    """Admissible ``(e, domain * 2**-e)`` pairs, finest last."""
    cells = signal.values.size - 1
    out = []
    for e in sorted(set(int(e) for e in exps)):
        if e < 0:
            continue
        if cells / 2.0**e >= MIN_CELLS_PER_SCALE:
            out.append((e, signal.domain * 2.0**-e))
    if len(out) < MIN_SCALES:
        raise ScaleError(
            f"need at least {MIN_SCALES} scales spanning {MIN_CELLS_PER_SCALE} or more "
            f"samples each, got {len(out)}"
        )
    return out


def _column_oscillations(values: np.ndarray, n_cols: int) -> np.ndarray:
    """Range of the samples in each of *n_cols* equal columns, shared edges included."""
    cells = values.size - 1
    edges = np.rint(np.arange(n_cols + 1) * (cells / n_cols)).astype(np.intp)
    starts = edges[:-1]
    hi = np.maximum.reduceat(values, starts)
    lo = np.minimum.reduceat(values, starts)
    right = values[edges[1:]]
    return np.maximum(hi, right) - np.minimum(lo, right)


def box_dimension(
    signal: SampledSignal, r_min_exp: int = 10, r_max_exp: int = 4
) -> DimensionEstimate:
    """Box-counting dimension of the graph of *signal*.

    Box sizes are ``r = domain * 2**-e`` for ``e = r_max_exp .. r_min_exp``;
    sizes narrower than four grid steps are dropped. At each size the
    count is ``sum over columns of max(1, ceil(oscillation / r))`` and the
    estimate is the slope of ``log N`` against ``log(1 / r)``.

    A constant signal is a segment: it yields slope 1 with ``degenerate``
    set.
    """
    signal._require_estimable()
    if r_max_exp >= r_min_exp:
        raise ScaleError(f"need r_max_exp < r_min_exp, got {r_max_exp} and {r_min_exp}")
    scales = _scales(signal, range(r_max_exp, r_min_exp + 1))
    degenerate = bool(np.ptp(signal.values) == 0.0)

    pairs = []
    for e, r in scales:
        osc = _column_oscillations(signal.values, 2**e)
        counts = np.maximum(1.0, np.ceil(osc / r))
        pairs.append((r, float(counts.sum())))

    if degenerate:
        return DimensionEstimate(1.0, 0.0, 1.0, tuple(pairs), degenerate=True)
    r = np.array([p[0] for p in pairs])
    n = np.array([p[1] for p in pairs])
    slope, stderr, r2, intercept = _fit(np.log(1.0 / r), np.log(n))
    return DimensionEstimate(slope, stderr, r2, tuple(pairs), intercept)


def oscillation(signal: SampledSignal, i: int, delta: float) -> float:
    """Largest ``|f(x_j) - f(x_i)|`` over grid points within *delta* of ``x_i``."""
    n = signal.values.size
    if not 0 <= i < n:
        raise ParamError(f"index {i} outside 0..{n - 1}")
    if not delta >= signal.h:
        raise ParamError(f"delta must be at least the grid step {signal.h!r}: got {delta!r}")
    m = int(math.floor(delta / signal.h * (1.0 + 1e-12)))
    window = signal.values[max(0, i - m) : min(n, i + m + 1)]
    return float(np.max(np.abs(window - signal.values[i])))


def worst_oscillation(signal: SampledSignal, delta: float) -> float:
    """``max_i oscillation(signal, i, delta)``, via sliding extrema."""
    if not delta >= signal.h:
        raise ParamError(f"delta must be at least the grid step {signal.h!r}: got {delta!r}")
    m = int(math.floor(delta / signal.h * (1.0 + 1e-12)))
    # the largest gap between points at most m apart is the largest range
    # over windows of m + 1 consecutive samples
    size = min(m + 1, signal.values.size)
    hi = maximum_filter1d(signal.values, size, mode="nearest")
    lo = minimum_filter1d(signal.values, size, mode="nearest")
    return float(np.max(hi - lo))


def holder_global(
    signal: SampledSignal, delta_exps: Iterable[int] = DEFAULT_EXPONENTS
) -> DimensionEstimate:
    """Global Hölder exponent from the scaling of the worst-case oscillation.

    Windows are ``delta = domain * 2**-e`` for *delta_exps*, at least four
    grid steps wide. The slope of ``log max_i osc(i, delta)`` against
    ``log delta`` is returned, with ``implied_dimension = 2 - slope``.

    :raises DegenerateError: for a constant signal.
    """
    signal._require_estimable()
    scales = _scales(signal, delta_exps)
    pairs = [(d, worst_oscillation(signal, d)) for _, d in scales]
    if any(osc == 0.0 for _, osc in pairs):
        raise DegenerateError("signal is constant on some window; no Hölder exponent")
    d = np.array([p[0] for p in pairs])
    osc = np.array([p[1] for p in pairs])
    slope, stderr, r2, intercept = _fit(np.log(d), np.log(osc))
    return DimensionEstimate(
        slope, stderr, r2, tuple(pairs), intercept, implied_dimension=2.0 - slope
    )


@dataclass(frozen=True)
class ConsistencyRecord:
    """Box dimension, Hölder exponent and ``|d_box - (2 - H)|``."""

    box_dimension: float
    holder_exponent: float
    discrepancy: float

    def to_dict(self) -> dict:
        return {
            "box_dimension": self.box_dimension,
            "holder_exponent": self.holder_exponent,
            "discrepancy": self.discrepancy,
        }


def dim_holder_consistency(
    signal: SampledSignal,
    r_min_exp: int = 10,
    r_max_exp: int = 4,
    delta_exps: Iterable[int] = DEFAULT_EXPONENTS,
) -> ConsistencyRecord:
    """Compare the box dimension with ``2 - H`` on the same signal."""
    d = box_dimension(signal, r_min_exp, r_max_exp).slope
    h = holder_global(signal, delta_exps).slope
    return ConsistencyRecord(d, h, abs(d - (2.0 - h)))
