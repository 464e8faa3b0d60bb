"""Command-line interface: ``reclindley {fit,sample,curve,reliability,moments}``.

Exit codes: 0 success, 1 data or runtime error, 2 usage error.
"""

import argparse
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import distribution as dist
from .corpus import load
from .distribution import RegParams
from .errors import DomainError, ReclindleyError
from .gof import PROPOSED, aic, build_report, fit_model
from .relsim import DISCREPANCY_NOTE, TOPOLOGIES, reliability_table, table_to_csv
from .rng import RngState
from .sampler import sample_many

MODELS = ("all", "reg", "gl3", "expgl", "ngl", "ql")


class UsageError(Exception):
    pass


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be >= 1")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="reclindley", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def model_args(p, alpha=None, theta=None):
        p.add_argument("--alpha", type=float, required=alpha is None, default=alpha)
        p.add_argument("--theta", type=float, required=theta is None, default=theta)
        p.add_argument("--n", type=_positive_int, default=dist.DEFAULT_DEPTH)

    def out_arg(p):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("fit", help="maximum likelihood fit and comparison report")
    p.add_argument("--data", required=True, help="builtin:ex1..ex4 or a path, one value per line")
    p.add_argument("--model", choices=MODELS, default="all")
    p.add_argument("--n", type=_positive_int, default=dist.DEFAULT_DEPTH)
    p.add_argument("--format", choices=("json", "table"), default="table")
    out_arg(p)

    p = sub.add_parser("sample", help="draw random variates")
    model_args(p)
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--seed", type=_nonneg_int, required=True)
    p.add_argument("--stream", type=_nonneg_int, default=0)
    out_arg(p)

    p = sub.add_parser("curve", help="pdf, cdf or hazard on a grid, as CSV")
    p.add_argument("--what", choices=("pdf", "cdf", "hazard"), required=True)
    model_args(p)
    p.add_argument("--min", type=float, default=0.01, dest="x_min")
    p.add_argument("--max", type=float, default=10.0, dest="x_max")
    p.add_argument("--points", type=_positive_int, default=101)
    out_arg(p)

    p = sub.add_parser("reliability", help="exact vs Monte Carlo two-component system reliability")
    model_args(p, alpha=3.0, theta=0.05)
    p.add_argument("--t-max", type=float, default=100.0)
    p.add_argument("--step", type=float, default=10.0)
    p.add_argument("--trials", type=_positive_int, default=10**6)
    p.add_argument("--seed", type=_nonneg_int, default=2024)
    p.add_argument("--shards", type=_positive_int, default=1)
    p.add_argument("--topology", choices=TOPOLOGIES, default="parallel")
    out_arg(p)

    p = sub.add_parser("moments", help="mean, variance, cv, skewness, kurtosis")
    model_args(p)
    p.add_argument("--format", choices=("json", "table"), default="table")
    out_arg(p)
    return parser


def _params(args):
    try:
        return RegParams(args.alpha, args.theta, args.n)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _dumps(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def fit_result_dict(fit):
    return {
        "family": fit.family,
        "estimates": fit.estimates if fit.params is not None else {},
        "neg_log_lik": fit.neg_log_lik,
        "aic": aic(fit.n_free, fit.log_lik) if math.isfinite(fit.neg_log_lik) else math.inf,
        "k": fit.n_free,
        "gradient_norm": fit.gradient_norm,
        "iterations": fit.iterations,
        "converged": fit.converged,
        "messages": fit.messages,
        "std_errors": fit.std_errors,
    }


def cmd_fit(args):
    data = load(args.data)
    if args.model == "all":
        report = build_report(data, n=args.n)
        if args.format == "json":
            return _dumps(report.to_dict())
        return report.to_table() + "\n"
    fit = fit_model(args.model.upper() if args.model != "reg" else PROPOSED, data, n=args.n)
    body = fit_result_dict(fit)
    body.update(dataset=data.label, n=args.n)
    if args.format == "json":
        return _dumps(body)
    lines = [f"{k}: {v}" for k, v in body.items()]
    return "\n".join(lines) + "\n"


def cmd_sample(args):
    values = sample_many(_params(args), args.count, RngState(args.seed, args.stream))
    return "".join(f"{v!r}\n" for v in values.tolist())


def cmd_curve(args):
    params = _params(args)
    if not (args.x_max > args.x_min):
        raise UsageError("--max must exceed --min")
    if args.what in ("pdf", "hazard") and args.x_min <= 0:
        raise UsageError(f"{args.what} needs --min > 0")
    if args.x_min < 0:
        raise UsageError("--min must be >= 0")
    xs = np.linspace(args.x_min, args.x_max, args.points)
    fn = {"pdf": dist.pdf, "cdf": dist.cdf, "hazard": dist.hazard}[args.what]
    lines = ["x,value"]
    failed = 0
    for x in xs:
        try:
            lines.append(f"{float(x)!r},{float(fn(params, x))!r}")
        except ReclindleyError:
            failed += 1
            lines.append(f"{float(x)!r},error")
    if failed:
        print(f"warning: {failed} grid points beyond reliability underflow", file=sys.stderr)
    return "\n".join(lines) + "\n"


def cmd_reliability(args):
    params = _params(args)
    if not (args.step > 0 and args.t_max >= args.step):
        raise UsageError("need --step > 0 and --t-max >= --step")
    rows = reliability_table(params, args.t_max, args.step, args.topology, args.trials,
                             RngState(args.seed), shards=args.shards)
    print(DISCREPANCY_NOTE, file=sys.stderr)
    return table_to_csv(rows)


def cmd_moments(args):
    summary = asdict(dist.moment_summary(_params(args)))
    if args.format == "json":
        return _dumps(summary)
    return "".join(f"{k:<9} {v:.6f}\n" for k, v in summary.items())


COMMANDS = {
    "fit": cmd_fit,
    "sample": cmd_sample,
    "curve": cmd_curve,
    "reliability": cmd_reliability,
    "moments": cmd_moments,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (ReclindleyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    # output is only written once everything succeeded
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
