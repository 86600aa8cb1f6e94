"""Command-line front end: ``qineq {average,sweep,trace,verify-algebra}``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
CSV goes to ``--out`` or stdout; the first line is a ``#`` comment carrying
a hash of the effective configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import __version__
from .config import ExperimentConfig
from .density import density_trace, t00_asymptotic, t00_average_exact, t00_average_generic
from .errors import ConfigError, QineqError
from .fock import bogoliubov_expectations
from .sampling import TwoSidedExponential
from .sweep import run_lambda_sweep

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3
ALGEBRA_TOL = 1e-8


def fmt(x) -> str:
    return "nan" if x is None or (isinstance(x, float) and math.isnan(x)) else f"{float(x):.16e}"


class _Table:
    def __init__(self, command, cfg: ExperimentConfig | None, columns):
        self.buf = io.StringIO()
        header = f"# qineq {__version__} {command}"
        if cfg is not None:
            header += f" config_sha256={cfg.digest()}"
        self.buf.write(header + "\n")
        self.writer = csv.writer(self.buf, lineterminator="\n")
        self.writer.writerow(columns)

    def row(self, *values):
        self.writer.writerow([fmt(v) for v in values])

    def comment(self, text):
        self.buf.write(f"# {text}\n")

    def emit(self, out):
        if out is None or out == "-":
            sys.stdout.write(self.buf.getvalue())
        else:
            with open(out, "w", encoding="utf-8", newline="") as fh:
                fh.write(self.buf.getvalue())


def _load_config(args) -> ExperimentConfig:
    cfg = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()
    overrides = []
    for item in args.set or ():
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        overrides.append(tuple(item.split("=", 1)))
    return ExperimentConfig.from_items(overrides, cfg)


def cmd_average(args) -> int:
    cfg = _load_config(args)
    model = cfg.build_model()
    sampler = model.sampler
    table = _Table("average", cfg,
                   ["lambda1", "lambda2", "W", "Lambda", "t00_exact", "t00_asymptotic", "error_estimate"])
    support = model.profile.support
    W, Lambda = support if support else (math.nan, math.nan)
    if isinstance(sampler, TwoSidedExponential):
        result = t00_average_exact(model)
        l1, l2 = sampler.lambda1, sampler.lambda2
        asym = t00_asymptotic(l1, l2, W, Lambda) if support else math.nan
    else:
        result = t00_average_generic(model)
        l1 = l2 = asym = math.nan
    table.row(l1, l2, W, Lambda, result.value, asym, result.error_estimate)
    table.emit(args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    grid = cfg.cutoff_grid()
    if any(lam <= cfg.w for lam in grid):
        raise ConfigError(f"every cutoff must exceed profile.w = {cfg.w}", "sweep.grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("cutoffs must be strictly increasing", "sweep.grid")
    base = cfg.build_model(Lambda=grid[-1])
    if base.profile.support is None:
        raise ConfigError("a sweep needs a banded profile", "profile.kind")
    if not isinstance(base.sampler, TwoSidedExponential):
        raise ConfigError("a sweep needs sampler.kind = two_sided_exponential", "sampler.kind")

    report = run_lambda_sweep(base, grid, tol=cfg.verdict_tol)
    table = _Table("sweep", cfg, ["Lambda", "ln_Lambda_over_W", "t00", "err"])
    for p in report.points:
        table.row(p.Lambda, math.log(p.Lambda / report.W), p.t00, p.error_estimate)
    failures = [p for p in report.points if p.failure]
    for p in failures:
        table.comment(f"failed Lambda={fmt(p.Lambda)}: {p.failure}")
    verdict = None
    if report.has_fit:
        verdict = "PASS" if report.divergence_verdict else "FAIL"
        table.comment(f"fitted_slope={fmt(report.fitted_slope)} stderr={fmt(report.slope_stderr)}")
        table.comment(f"predicted_slope={fmt(report.predicted_slope)}")
        table.comment(f"verdict={verdict}")
    table.emit(args.out)
    if verdict and args.out not in (None, "-"):
        print(f"verdict={verdict} fitted_slope={fmt(report.fitted_slope)} "
              f"predicted_slope={fmt(report.predicted_slope)}")
    return EXIT_NUMERICAL if failures else EXIT_OK


def cmd_trace(args) -> int:
    cfg = _load_config(args)
    if args.n_points < 2:
        raise ConfigError("must be at least 2", "--n-points")
    if not args.t_min < args.t_max:
        raise ConfigError("--t-min must be below --t-max", "--t-min")
    model = cfg.build_model()
    times = np.linspace(args.t_min, args.t_max, args.n_points)
    values, error = density_trace(model, times)
    table = _Table("trace", cfg, ["t", "density", "err"])
    for t, v in zip(times, values):
        table.row(t, v, error)
    table.emit(args.out)
    return EXIT_OK


def cmd_verify_algebra(args) -> int:
    try:
        f_values = [float(v) for v in args.f.split(",")]
    except ValueError:
        raise ConfigError(f"cannot parse {args.f!r}", "--f") from None
    if args.n < 2:
        raise ConfigError("must be at least 2", "--n")
    rows = []
    ok = True
    for f in f_values:
        n_exp, aa_exp = bogoliubov_expectations(f, args.n)
        n_ref, aa_ref = math.sinh(f) ** 2, math.cosh(f) * math.sinh(f)
        dn, daa = abs(n_exp - n_ref), abs(aa_exp - aa_ref)
        ok &= dn <= ALGEBRA_TOL and daa <= ALGEBRA_TOL
        rows.append((f, n_exp, n_ref, dn, aa_exp, aa_ref, daa))
    table = _Table("verify-algebra", None,
                   ["f", "n_expect", "sinh2f", "abs_delta_n", "aa_expect", "coshf_sinhf", "abs_delta_aa"])
    table.comment(f"N={args.n} tol={ALGEBRA_TOL:g}")
    for r in rows:
        table.row(*r)
    table.emit(args.out)
    return EXIT_OK if ok else EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qineq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-c", "--config", help="flat key = value config file")
        p.add_argument("-s", "--set", action="append", metavar="KEY=VALUE",
                       help="override a config key (repeatable)")
        p.add_argument("-o", "--out", help="CSV output path (default: stdout)")

    p = sub.add_parser("average", help="sampled average at one cutoff")
    common(p)
    p.set_defaults(func=cmd_average)

    p = sub.add_parser("sweep", help="cutoff sweep with log-slope fit and verdict")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("trace", help="pointwise energy density on a uniform time grid")
    common(p)
    p.add_argument("--t-min", type=float, default=-1.0)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--n-points", type=int, default=201)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify-algebra", help="truncated-Fock check of the Bogoliubov expectations")
    p.add_argument("--f", default="0,0.05,0.1,0.2,0.3", help="comma-separated squeeze values")
    p.add_argument("--n", type=int, default=60, help="Fock truncation dimension")
    p.add_argument("-o", "--out", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_verify_algebra)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError) as exc:
        print(f"qineq: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QineqError, ArithmeticError) as exc:
        print(f"qineq: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"qineq: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
