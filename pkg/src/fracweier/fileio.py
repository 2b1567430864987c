"""CSV, SVG and JSON output, CSV input and generator spec strings."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from fracweier.errors import ParamError
from fracweier.roughness import SampledSignal

UNIFORM_RTOL = 1.0e-9
SVG_WIDTH, SVG_HEIGHT = 800, 400
_SVG_MARGIN = 40


def fmt(v: float) -> str:
    """Shortest round-trip-safe text for a float (17 significant digits)."""
    return "%.17g" % v


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write *text* to *path* through a temporary file and a rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def rows_to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def signal_to_csv(signal: SampledSignal) -> str:
    rows = [[float(x), float(y)] for x, y in zip(signal.x, signal.values)]
    return rows_to_csv(["x", "y"], rows)


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def parse_signal_csv(text: str) -> SampledSignal:
    """Parse two-column ``x,y`` CSV (header optional) on a uniform grid."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows and not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]
    if any(len(r) != 2 for r in rows):
        raise ParamError("signal CSV must have exactly two columns")
    try:
        data = np.array([[float(a), float(b)] for a, b in rows], dtype=float)
    except ValueError as exc:
        raise ParamError(f"signal CSV holds a non-numeric entry: {exc}") from None
    if data.shape[0] < 2:
        raise ParamError("signal CSV needs at least two rows")
    x, y = data[:, 0], data[:, 1]
    h = x[1] - x[0]
    if not h > 0:
        raise ParamError("signal abscissae must be increasing")
    dev = np.abs(np.diff(x) - h)
    if np.any(dev > UNIFORM_RTOL * h):
        j = int(np.argmax(dev))
        raise ParamError(f"signal grid is not uniform near row {j + 1}")
    return SampledSignal(float(x[0]), float(h), y)


def read_signal_csv(path: str | os.PathLike) -> SampledSignal:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParamError(f"cannot read {path}: {exc.strerror}") from None
    return parse_signal_csv(text)


def signal_to_svg(signal: SampledSignal) -> str:
    """One polyline ``<path>`` with two axis lines in an 800x400 viewport."""
    x, y = signal.x, signal.values
    x_lo, x_hi = float(x[0]), float(x[-1])
    y_lo, y_hi = float(np.min(y)), float(np.max(y))
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    m = _SVG_MARGIN
    px = m + (x - x_lo) / (x_hi - x_lo) * (SVG_WIDTH - 2 * m)
    py = SVG_HEIGHT - m - (y - y_lo) / (y_hi - y_lo) * (SVG_HEIGHT - 2 * m)
    pts = " L".join(f"{a:.3f},{b:.3f}" for a, b in zip(px, py))
    # x axis at y = 0 when visible, else along the bottom
    y0 = SVG_HEIGHT - m - (0.0 - y_lo) / (y_hi - y_lo) * (SVG_HEIGHT - 2 * m)
    y0 = min(max(y0, m), SVG_HEIGHT - m)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">\n'
        f'<line x1="{m}" y1="{y0:.3f}" x2="{SVG_WIDTH - m}" y2="{y0:.3f}" stroke="black"/>\n'
        f'<line x1="{m}" y1="{m}" x2="{m}" y2="{SVG_HEIGHT - m}" stroke="black"/>\n'
        f'<path d="M{pts}" fill="none" stroke="steelblue" stroke-width="1"/>\n'
        "</svg>\n"
    )


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=True) + "\n"


# {{{ generator specs


def parse_generator(spec: str) -> tuple[str, dict[str, float]]:
    """Split ``name:key=value,...`` into the name and a dict of numbers."""
    name, _, rest = spec.partition(":")
    name = name.strip()
    if not name:
        raise ParamError(f"generator spec has no name: {spec!r}")
    params: dict[str, float] = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq or not key.strip():
            raise ParamError(f"generator parameter must be key=value: {item!r}")
        try:
            params[key.strip()] = float(val)
        except ValueError:
            raise ParamError(f"generator parameter {key.strip()!r} is not a number: {val!r}") from None
    return name, params


def _take(params: dict[str, float], key: str, default: float | None = None) -> float:
    if key in params:
        return params.pop(key)
    if default is None:
        raise ParamError(f"generator needs parameter {key!r}")
    return default


def _as_int(v: float, key: str) -> int:
    if v != math.floor(v):
        raise ParamError(f"generator parameter {key!r} must be an integer: {v!r}")
    return int(v)


def generate_signal(spec: str) -> SampledSignal:
    """Materialize a generator spec.

    Known generators (``n`` points on ``[0, x_max]``, defaults 65537 and 1):

    * ``weierstrass:lambda=..,s=..,alpha=1,K=..,which=0|1`` (``which=1``
      samples the fractional derivative)
    * ``line:slope=1``
    * ``power:p=0.5``
    * ``constant:c=0``
    """
    from fracweier import weierstrass

    name, params = parse_generator(spec)
    n = _as_int(_take(params, "n", 65537.0), "n")
    x_max = _take(params, "x_max", 1.0)
    if n < 2 or not x_max > 0:
        raise ParamError("generator needs n >= 2 and x_max > 0")

    if name == "weierstrass":
        lam = _take(params, "lambda")
        s = _take(params, "s")
        alpha = _take(params, "alpha", 1.0)
        K = params.pop("K", None)
        which = "derivative" if _take(params, "which", 0.0) else "function"
        p = weierstrass.WeierstrassParams(lam, s, alpha, None if K is None else _as_int(K, "K"))
        _reject_extra(name, params)
        return weierstrass.sample(p, x_max, n, which)

    h = x_max / (n - 1)
    x = h * np.arange(n)
    if name == "line":
        y = _take(params, "slope", 1.0) * x
    elif name == "power":
        y = x ** _take(params, "p")
    elif name == "constant":
        y = np.full(n, _take(params, "c", 0.0))
    else:
        raise ParamError(f"unknown generator {name!r}; known: weierstrass, line, power, constant")
    _reject_extra(name, params)
    return SampledSignal(0.0, h, y)


def _reject_extra(name: str, params: dict[str, float]) -> None:
    if params:
        raise ParamError(f"unknown parameters for {name!r}: {', '.join(sorted(params))}")


# }}}
