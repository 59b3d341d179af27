"""Command line interface.

Subcommands mirror the library layers: ``wce`` evaluates errors, ``select``
and ``cbc`` construct vectors, ``integrate`` and ``points`` exercise one
rule, ``hist-experiment`` and ``conv-experiment`` emit benchmark CSVs, and
``fit`` post-processes a convergence CSV.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from . import bench
from .construct import (
    SelectionConfig,
    cbc_deterministic,
    cbc_randomized,
    sample_shift,
    select,
)
from .integrands import TestFunction, mc_estimate, qmc_estimate
from .lattice import LatticeRule, points, shifted_points
from .rng import PURPOSE_MC, PURPOSE_SHIFT, stream
from .space import KorobovParams
from .wce import wce_brute_force, wce_closed_form

__all__ = ["main"]

_DEFAULT_M_GRID = "32,64,128,256,512,1024,2048,4096"


def _parse_ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v != ""]


def _params(args: argparse.Namespace, dim: int) -> KorobovParams:
    return KorobovParams.with_rule(args.alpha, dim, args.weights)


def _rule(args: argparse.Namespace) -> LatticeRule:
    return LatticeRule(args.n, tuple(_parse_ints(args.z)))


def _add_space_args(p: argparse.ArgumentParser, alpha: float, weights: str) -> None:
    p.add_argument("--alpha", type=float, default=alpha)
    p.add_argument("--weights", default=weights, help="poly:a or list:g1,g2,...")


def _cmd_wce(args: argparse.Namespace) -> int:
    rule = _rule(args)
    params = _params(args, rule.dim)
    if args.method == "closed":
        report = wce_closed_form(rule, params)
    else:
        if args.kmax is None:
            raise SystemExit("--kmax is required with --method brute")
        report = wce_brute_force(rule, params, args.kmax)
    print(f"squared_error={report.squared_error!r}")
    print(f"tail_bound={report.tail_bound!r}")
    return 0


def _cmd_select(args: argparse.Namespace) -> int:
    if args.m is None and args.fixed_n is None:
        raise SystemExit("one of --m or --fixed-n is required")
    params = _params(args, args.d)
    config = SelectionConfig(
        m_max=args.m if args.m is not None else args.fixed_n,
        eta=args.eta,
        r_rule=args.r_rule,
        seed=args.seed,
        fixed_n=args.fixed_n,
    )
    outcome = select(config, params)
    print(f"N={outcome.n_points}")
    print(f"z={','.join(str(v) for v in outcome.z_star)}")
    print(f"r={outcome.r}")
    print(f"argmin={outcome.argmin_index}")
    print(f"sq_wce={outcome.candidate_errors[outcome.argmin_index]!r}")
    print("candidate,sq_wce")
    for i, err in enumerate(outcome.candidate_errors):
        print(f"{i},{err!r}")
    return 0


def _cmd_cbc(args: argparse.Namespace) -> int:
    params = _params(args, args.d)
    if args.randomized:
        rule = cbc_randomized(
            args.n, params, args.tau, stream(args.seed, bench.ESTIMATORS["cbc_rand"])
        )
    else:
        rule = cbc_deterministic(args.n, params)
    report = wce_closed_form(rule, params)
    print(f"z={','.join(str(v) for v in rule.gen_vector)}")
    print(f"sq_wce={report.squared_error!r}")
    return 0


def _cmd_integrate(args: argparse.Namespace) -> int:
    if args.mc:
        if args.m is None:
            raise SystemExit("--m is required with --mc")
        f = TestFunction.by_name(args.fn, args.d)
        value = mc_estimate(f, args.m, stream(args.seed, PURPOSE_MC))
    else:
        if args.n is None or args.z is None:
            raise SystemExit("--n and --z are required without --mc")
        rule = _rule(args)
        f = TestFunction.by_name(args.fn, rule.dim)
        shift = None
        if args.shift_seed is not None:
            shift = sample_shift(rule.dim, stream(args.shift_seed, PURPOSE_SHIFT))
        value = qmc_estimate(f, rule, shift)
    print(f"estimate={value!r}")
    return 0


def _cmd_points(args: argparse.Namespace) -> int:
    rule = _rule(args)
    if args.shift_seed is not None:
        shift = sample_shift(rule.dim, stream(args.shift_seed, PURPOSE_SHIFT))
        x = shifted_points(rule, shift)
    else:
        x = points(rule)
    for row in x:
        print("\t".join(format(v, ".17g") for v in row))
    return 0


def _cmd_hist(args: argparse.Namespace) -> int:
    params = _params(args, args.d)
    records = bench.run_histogram(
        args.n, params, eta=args.eta, trials=args.trials, seed=args.seed
    )
    bench.write_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_conv(args: argparse.Namespace) -> int:
    params = _params(args, args.d)
    records = bench.run_convergence(
        params,
        _parse_ints(args.m_grid),
        reps=args.reps,
        seed=args.seed,
        fns=tuple(args.fns.split(",")),
        workers=args.workers,
    )
    bench.write_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    records = bench.read_csv(args.input)
    fit = bench.fit_slope(
        records, args.estimator, args.fn, (args.m_min, args.m_max)
    )
    print(f"slope={fit.slope!r}")
    print(f"intercept={fit.intercept!r}")
    print(f"m_min={fit.m_min}")
    print(f"m_max={fit.m_max}")
    print(f"n_m={fit.n_m}")
    if args.table:
        print("M,variance,log10_variance")
        for m, v in bench.variance_table(records, args.estimator, args.fn):
            if args.m_min <= m <= args.m_max:
                log_v = float(np.log10(v)) if v > 0.0 else float("-inf")
                print(f"{m},{v!r},{bench.format_value(log_v)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ranlattice",
        description="Randomized rank-1 lattice rules for quasi-Monte Carlo integration",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wce", help="worst-case error of one rule")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", required=True, help="comma-separated generating vector")
    _add_space_args(p, 2.0, "poly:3")
    p.add_argument("--method", choices=("closed", "brute"), default="closed")
    p.add_argument("--kmax", type=int, default=None)
    p.set_defaults(func=_cmd_wce)

    p = sub.add_parser("select", help="min-of-r random vector selection")
    p.add_argument("--m", type=int, default=None, help="prime window upper end")
    p.add_argument("--fixed-n", type=int, default=None, help="use this prime directly")
    p.add_argument("--d", type=int, required=True)
    _add_space_args(p, 2.0, "poly:3")
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--r-rule", default="rms", help="ran | rms | stable | fixed:K")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("cbc", help="component-by-component construction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    _add_space_args(p, 2.0, "poly:3")
    p.add_argument("--randomized", action="store_true")
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_cbc)

    p = sub.add_parser("integrate", help="integrate a test function")
    p.add_argument("--fn", choices=("f1", "f2", "f3", "f4"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--z", default=None)
    p.add_argument("--shift-seed", type=int, default=None)
    p.add_argument("--mc", action="store_true")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_integrate)

    p = sub.add_parser("points", help="dump the node set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--shift-seed", type=int, default=None)
    p.set_defaults(func=_cmd_points)

    p = sub.add_parser("hist-experiment", help="worst-case-error histogram CSV")
    p.add_argument("--n", type=int, default=251)
    p.add_argument("--d", type=int, default=20)
    _add_space_args(p, 2.0, "poly:3")
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_hist)

    p = sub.add_parser("conv-experiment", help="convergence sweep CSV")
    p.add_argument("--d", type=int, default=2)
    _add_space_args(p, 1.0, "poly:2")
    p.add_argument("--m-grid", default=_DEFAULT_M_GRID)
    p.add_argument("--reps", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fns", default="f1,f2,f3,f4")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_conv)

    p = sub.add_parser("fit", help="slope of log10 variance vs log10 M")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--estimator", required=True, choices=sorted(bench.ESTIMATORS))
    p.add_argument("--fn", required=True, choices=("f1", "f2", "f3", "f4"))
    p.add_argument("--m-min", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=_cmd_fit)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
