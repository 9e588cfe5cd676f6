"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data/design error, 3 numeric failure.
"""

import argparse
import json
import sys

from . import __version__
from .adjust import METHODS
from .anova import anova_table, decompose
from .dataset import read_csv, transform
from .errors import DataError, DomainError, NumericError
from .homogeneity import bartlett
from .plot import ChartSpec, write_chart
from .simulate import DEFAULT_METHODS, SIM_METHODS, SimConfig, simulate_type1
from .simultaneous import run_ganova

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _g(x):
    return f"{x:.4g}"


def _probability(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {value}")
    return value


def _method_list(text):
    methods = tuple(m.strip().lower() for m in text.split(",") if m.strip())
    bad = [m for m in methods if m not in SIM_METHODS]
    if bad or not methods:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {', '.join(SIM_METHODS)}")
    return methods


def build_parser():
    parser = _Parser(prog="ganova", description="Simultaneous one-way ANOVA (gANOVA).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    data_opts = _Parser(add_help=False)
    data_opts.add_argument("input", help="long-format CSV with one observation per row")
    data_opts.add_argument("--group-col", default="group")
    data_opts.add_argument("--value-col", default="value")
    data_opts.add_argument("--transform", choices=("none", "sqrt", "log"), default="none")
    data_opts.add_argument("--sort-groups", action="store_true", help="order groups by label")
    data_opts.add_argument("--format", choices=("text", "json"), default="text")

    run = sub.add_parser("run", parents=[data_opts], help="gANOVA with decision limits")
    run.add_argument("--alpha", type=_probability, default=0.05)
    run.add_argument("--method", choices=METHODS, type=str.lower, default="bh")
    run.add_argument("--svg-p", metavar="PATH", help="write the 1 - p_adjusted chart")
    run.add_argument("--svg-k", metavar="PATH", help="write the K_adjusted chart")

    sub.add_parser("table", parents=[data_opts], help="classical ANOVA table")
    sub.add_parser("bartlett", parents=[data_opts], help="Bartlett test of equal variances")

    sim = sub.add_parser("simulate", help="Monte Carlo family-wise Type I error")
    sim.add_argument("--groups", type=int, required=True)
    sim.add_argument("--n", type=int, required=True, help="observations per group")
    sim.add_argument("--alpha", type=_probability, default=0.05)
    sim.add_argument("--methods", type=_method_list, default=DEFAULT_METHODS)
    sim.add_argument("--reps", type=int, default=10_000)
    sim.add_argument("--seed", type=int, default=SimConfig.seed)
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _load(args):
    data = read_csv(args.input, args.group_col, args.value_col, args.sort_groups)
    return transform(data, args.transform)


def format_anova(table):
    rows = [
        f"{'':<11}{'Df':>5}{'Sum Sq':>11}{'Mean Sq':>11}{'F value':>11}{'Pr(>F)':>11}",
        f"{'Treatments':<11}{table.df_treat:>5}{_g(table.sstr):>11}{_g(table.mstr):>11}"
        f"{_g(table.f):>11}{_g(table.p):>11}",
        f"{'Residuals':<11}{table.df_err:>5}{_g(table.sse):>11}{_g(table.mse):>11}",
    ]
    return "\n".join(rows)


def format_ganova(result):
    lines = [
        "Analysis of variance",
        format_anova(result.anova),
        "",
        f"gANOVA (method={result.method}, alpha={_g(result.alpha)}, DL on p scale={_g(result.dl_p)})",
        f"{'group':<10}{'K':>11}{'p_raw':>11}{'p_adj':>11}{'K_adj':>11}{'DL':>11}  flag",
    ]
    for i, lab in enumerate(result.labels):
        k_adj = "> DL" if result.k_adj_capped[i] else _g(result.k_adj[i])
        lines.append(
            f"{lab:<10}{_g(result.k[i]):>11}{_g(result.p_raw[i]):>11}{_g(result.p_adj[i]):>11}"
            f"{k_adj:>11}{_g(result.dl_k[i]):>11}  {'*' if result.flags[i] else ''}".rstrip()
        )
    if result.reject:
        lines.append(f"verdict: reject H0 (flagged: {', '.join(result.flagged_labels)})")
    else:
        lines.append("verdict: do not reject H0")
    return "\n".join(lines)


def _emit(obj, text, fmt, out):
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        out.write(text + "\n")


def _dispatch(args, out):
    if args.command == "simulate":
        cfg = SimConfig(args.groups, args.n, args.alpha, args.methods, args.reps, args.seed)
        res = simulate_type1(cfg, workers=args.workers)
        lines = [f"G={cfg.n_groups} n={cfg.n} alpha={_g(cfg.alpha)} reps={cfg.reps} seed={cfg.seed}"]
        lines.append(f"{'method':<12}{'estimate':>10}{'mc_se':>10}")
        for m in cfg.methods:
            lines.append(f"{m:<12}{_g(res.estimates[m]):>10}{_g(res.monte_carlo_se[m]):>10}")
        _emit(res.as_dict(), "\n".join(lines), args.format, out)
        return

    data = _load(args)
    if args.command == "table":
        table = anova_table(decompose(data))
        _emit(table.as_dict(), format_anova(table), args.format, out)
    elif args.command == "bartlett":
        res = bartlett(data)
        text = f"Bartlett K-squared = {_g(res.statistic)}, df = {res.df}, p-value = {_g(res.p)}"
        _emit({"statistic": res.statistic, "df": res.df, "p": res.p}, text, args.format, out)
    else:
        result = run_ganova(data, args.alpha, args.method)
        if args.svg_p:
            write_chart(result, args.svg_p, ChartSpec(mode="p_scale"))
        if args.svg_k:
            write_chart(result, args.svg_k, ChartSpec(mode="k_scale"))
        payload = result.as_dict()
        payload["n"] = list(data.sizes)
        _emit(payload, format_ganova(result), args.format, out)


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _dispatch(args, out)
    except UsageError as exc:
        err.write(f"ganova: usage error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        err.write(f"ganova: invalid argument: {exc}\n")
        return EXIT_USAGE
    except DataError as exc:
        err.write(f"ganova: data error: {exc}\n")
        return EXIT_DATA
    except OSError as exc:
        err.write(f"ganova: cannot write output: {exc}\n")
        return EXIT_DATA
    except NumericError as exc:
        err.write(f"ganova: numeric failure: {exc}\n")
        return EXIT_NUMERIC
    return EXIT_OK
