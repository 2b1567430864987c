"""Command-line interface: ``fracweier {eval,sample,deriv-check,estimate,verify}``.

Exit codes: 0 success, 2 invalid parameters or input, 3 series did not
converge, 4 too few usable scales or a degenerate signal, 5 an asserted
verification record failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

import numpy as np

from fracweier import __version__, fileio, jumarie, mlf, roughness, verify, weierstrass
from fracweier.errors import DegenerateError, NoConvergence, ParamError, ScaleError
from fracweier.weierstrass import WeierstrassParams

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_NO_CONVERGENCE = 3
EXIT_SCALE = 4
EXIT_VERIFY = 5


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        fileio.write_atomic(out, text)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from None


def _exp_range(text: str) -> range:
    lo, sep, hi = text.partition(":")
    try:
        return range(int(lo), int(hi) + 1) if sep else range(int(lo), int(lo) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI integers: {text!r}") from None


# {{{ eval


def _wparams(args: argparse.Namespace, alpha: float | None = None) -> WeierstrassParams:
    if args.lam is None or args.s is None:
        raise ParamError("Weierstrass functions need --lambda and --s")
    return WeierstrassParams(args.lam, args.s, args.alpha if alpha is None else alpha, args.K)


def _need_alpha(args: argparse.Namespace) -> float:
    if args.alpha is None:
        raise ParamError("this function needs --alpha")
    return args.alpha


def _evaluator(args: argparse.Namespace) -> Callable[[float], mlf.SeriesEvalResult]:
    kw = {"tol": args.tol, "terms_max": args.terms_max}
    fn = args.function
    if fn in ("mlf", "sin_a", "cos_a"):
        alpha = _need_alpha(args)
        f = {"mlf": mlf.mittag_leffler, "sin_a": mlf.frac_sin, "cos_a": mlf.frac_cos}[fn]
        return lambda x: f(alpha, x, **kw)
    if fn in ("mlf2", "sin_ab", "cos_ab"):
        alpha = _need_alpha(args)
        f = {"mlf2": mlf.mittag_leffler2, "sin_ab": mlf.frac_sin2, "cos_ab": mlf.frac_cos2}[fn]
        return lambda x: f(alpha, args.beta, x, **kw)
    if fn == "w_classical":
        p = _wparams(args, 1.0)
        return lambda x: weierstrass.w_frac(p, x)
    p = _wparams(args, 1.0 if args.alpha is None else args.alpha)
    if fn == "w":
        return lambda x: weierstrass.w_frac(p, x)
    return lambda x: weierstrass.w_frac_deriv(p, x)


def cmd_eval(args: argparse.Namespace) -> int:
    f = _evaluator(args)
    rows = []
    for x in args.points:
        r = f(x)
        value = r.value.real if isinstance(r.value, complex) else r.value
        rows.append([float(x), float(value), float(r.tail_bound), r.terms_used])
    _emit(fileio.rows_to_csv(["x", "value", "tail_bound", "terms_used"], rows), args.out)
    return EXIT_OK


# }}}


def cmd_sample(args: argparse.Namespace) -> int:
    p = WeierstrassParams(args.lam, args.s, args.alpha, args.K)
    sig = weierstrass.sample(p, args.x_max, args.n, args.which)
    text = fileio.signal_to_svg(sig) if args.format == "svg" else fileio.signal_to_csv(sig)
    _emit(text, args.out)
    return EXIT_OK


# {{{ deriv-check


def _order(study: jumarie.ConvergenceStudy) -> float | None:
    v = study.order
    return v if math.isfinite(v) else None


def cmd_deriv_check(args: argparse.Namespace) -> int:
    alpha = args.alpha
    n = args.n
    if n < 5 or args.levels < 2:
        raise ParamError("deriv-check needs --n >= 5 and --levels >= 2")
    report: dict = {"target": args.target, "alpha": alpha, "x_max": args.x_max, "n": n}

    if args.target == "weierstrass":
        p = WeierstrassParams(args.lam, args.s, alpha, args.K)
        weierstrass.evaluate(p, np.zeros(1), "derivative")  # threshold check up front
        study = jumarie.convergence_study(
            alpha,
            lambda x: weierstrass.evaluate(p, x),
            lambda x: weierstrass.evaluate(p, x, "derivative"),
            x_max=args.x_max,
            n_coarse=n,
            levels=args.levels,
        )
        report.update(
            {
                "lambda": args.lam,
                "s": args.s,
                "K": weierstrass.depth(p, True),
                "numeric": _numeric_summary(study, alpha, lambda x: weierstrass.evaluate(p, x),
                                            lambda x: weierstrass.evaluate(p, x, "derivative"),
                                            args),
            }
        )
    else:
        ident = jumarie.get_identity(args.target)
        p = jumarie.IdentityParams(alpha, args.a, args.beta)
        if ident.needs_beta and args.beta is None:
            p = jumarie.default_params(ident, alpha, args.a)
        ident.check(p)
        xs = np.linspace(args.x_max / (n - 1), args.x_max, n - 1)
        res = np.array([ident.residual(float(x), p)[0] for x in xs])
        report.update(
            {
                "formula": ident.formula,
                "a": p.a,
                "beta": p.beta,
                "series": {"max_abs_residual": float(res.max()), "mean_abs_residual": float(res.mean())},
            }
        )
        numeric = None
        if alpha < 1.0:
            f = lambda x: ident.function(x, p)  # noqa: E731
            exact = lambda x: ident.derivative(x, p)  # noqa: E731
            study = jumarie.convergence_study(
                alpha, f, exact, x_max=args.x_max, n_coarse=n, levels=args.levels
            )
            numeric = _numeric_summary(study, alpha, f, exact, args)
        report["numeric"] = numeric

    _emit(fileio.to_json(verify.json_safe(report)), args.out)
    return EXIT_OK


def _numeric_summary(study, alpha, f, exact, args) -> dict:
    """Residual of the finest grid of *study* plus its observed order."""
    n_fine = (args.n - 1) * 2 ** (args.levels - 1) + 1
    g = jumarie.GridFunction.from_function(f, args.x_max, n_fine)
    d = jumarie.deriv_numeric(alpha, g)
    keep = g.x >= 0.1 * args.x_max * (1.0 - 1e-12)
    keep[-1] = False
    err = np.abs(d.values[keep] - exact(g.x[keep]))
    return {
        "h": g.h,
        "window": [0.1 * args.x_max, args.x_max - g.h],
        "max_abs_residual": float(err.max()),
        "mean_abs_residual": float(err.mean()),
        "steps": list(study.steps),
        "checkpoint_max_errors": list(study.max_errors),
        "order_estimate": _order(study),
    }


# }}}


def cmd_estimate(args: argparse.Namespace) -> int:
    src = args.input
    if Path(src).exists():
        sig = fileio.read_signal_csv(src)
    elif ":" in src:
        sig = fileio.generate_signal(src)
    else:
        raise ParamError(f"input is neither a readable file nor a generator spec: {src!r}")

    exps = args.scales
    if args.kind == "dim":
        est = roughness.box_dimension(sig, exps.stop - 1, exps.start)
    else:
        est = roughness.holder_global(sig, exps)
    out = {"kind": args.kind, "n_points": len(sig), "h": sig.h, **est.to_dict()}
    _emit(fileio.to_json(verify.json_safe(out)), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    config = None
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParamError(f"cannot read config {args.config}: {exc}") from None
    report = verify.run(args.suite, config)
    _emit(fileio.to_json(report), args.out)
    s = report["summary"]
    print(
        f"{s['asserted']} asserted records, {s['failed']} failed"
        + (f": {', '.join(s['failed_ids'])}" if s["failed"] else ""),
        file=sys.stderr,
    )
    return EXIT_OK if s["passed"] else EXIT_VERIFY


# {{{ parser


def _add_weierstrass(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--lambda", dest="lam", type=float, required=required, help="frequency ratio > 1")
    p.add_argument("--s", type=float, required=required, help="dimension parameter in (1, 2)")
    p.add_argument("--K", type=int, default=None, help="truncation depth (default: tail <= 1e-8)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fracweier", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"fracweier {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a function at points, CSV output")
    p.add_argument(
        "function",
        choices=["mlf", "mlf2", "sin_a", "cos_a", "sin_ab", "cos_ab", "w", "w_classical", "dw"],
    )
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float, default=1.0)
    _add_weierstrass(p, required=False)
    p.add_argument("--points", type=_floats, required=True, help="comma-separated arguments")
    p.add_argument("--tol", type=float, default=mlf.DEFAULT_TOL)
    p.add_argument("--terms-max", type=int, default=mlf.DEFAULT_TERMS_MAX)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("sample", help="sample a Weierstrass function to CSV or SVG")
    _add_weierstrass(p, required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--x-max", type=float, default=1.0)
    p.add_argument("--n", type=int, default=4097, help="number of grid points")
    p.add_argument("--which", choices=["function", "derivative"], default="function")
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(run=cmd_sample)

    p = sub.add_parser("deriv-check", help="compare numeric and closed-form derivatives, JSON output")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument(
        "--target",
        required=True,
        choices=[i.name for i in jumarie.identity_table()] + ["weierstrass"],
    )
    p.add_argument("--a", type=float, default=1.0, help="scale inside the function")
    p.add_argument("--beta", type=float, default=None)
    _add_weierstrass(p, required=False)
    p.add_argument("--x-max", type=float, default=1.0)
    p.add_argument("--n", type=int, default=501, help="points on the coarsest grid")
    p.add_argument("--levels", type=int, default=3, help="number of h-halvings plus one")
    p.add_argument("--out")
    p.set_defaults(run=cmd_deriv_check)

    p = sub.add_parser("estimate", help="box dimension or Hölder exponent, JSON output")
    p.add_argument("kind", choices=["dim", "holder"])
    p.add_argument("input", help="CSV path or generator spec such as weierstrass:lambda=2,s=1.5")
    p.add_argument(
        "--scales",
        type=_exp_range,
        default=range(4, 11),
        help="dyadic exponents LO:HI, scale = domain * 2^-e (default 4:10)",
    )
    p.add_argument("--out")
    p.set_defaults(run=cmd_estimate)

    p = sub.add_parser("verify", help="run verification suites, JSON report")
    p.add_argument("--suite", choices=[*verify.SUITES, "all"], default="all")
    p.add_argument("--config", help="JSON file with per-suite parameter overrides")
    p.add_argument("--out", default="report.json")
    p.set_defaults(run=cmd_verify)
    return ap


# }}}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with np.errstate(over="ignore", under="ignore"):
            return args.run(args)
    except (ScaleError, DegenerateError) as exc:
        print(f"fracweier: error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except NoConvergence as exc:
        print(f"fracweier: error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except ParamError as exc:
        print(f"fracweier: error: {exc}", file=sys.stderr)
        return EXIT_PARAM
