"""Command line interface.

``plots histogram`` renders relative-frequency histogram panels from a
histogram CSV; ``plots convergence`` renders log-log variance panels
with slope annotations from a convergence CSV.  The output format
follows the file extension, vector formats by default.
"""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import Sequence

from .figures import (
    PlotSpec,
    convergence_table,
    plot_convergence,
    plot_histogram,
)
from .records import read_records

__all__ = ["main"]


def _split(text: str) -> tuple[str, ...]:
    return tuple(v for v in text.split(",") if v != "")


def _cmd_histogram(args: argparse.Namespace) -> int:
    spec = PlotSpec(
        input_csv=Path(args.input),
        kind="histogram",
        output_path=Path(args.out),
        estimators=_split(args.estimators) if args.estimators else None,
        n=args.n,
        dpi=args.dpi,
    )
    out = plot_histogram(spec)
    print(f"wrote {out}")
    return 0


def _cmd_convergence(args: argparse.Namespace) -> int:
    fns = _split(args.fns) if args.fns else None
    spec = PlotSpec(
        input_csv=Path(args.input),
        kind="convergence",
        output_path=Path(args.out),
        estimators=_split(args.estimators) if args.estimators else None,
        fns=fns,
        m_min=args.m_min,
        m_max=args.m_max,
        dpi=args.dpi,
    )
    records = read_records(spec.input_csv)
    table_fns = (
        list(fns) if fns is not None else sorted({r.fn for r in records if r.fn})
    )
    for fit in convergence_table(
        records, table_fns, spec.estimators, spec.m_min, spec.m_max
    ):
        print(f"fn={fit.fn} estimator={fit.estimator} slope={fit.slope:.6f}")
    out = plot_convergence(spec)
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plots", description="Figures from benchmark CSV files"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("histogram", help="relative-frequency histogram panels")
    p.add_argument("--in", dest="input", required=True, help="histogram CSV")
    p.add_argument("--out", required=True, help="output image file")
    p.add_argument("--estimators", default="", help="comma list, default all")
    p.add_argument("--n", type=int, default=None, help="restrict to one modulus")
    p.add_argument("--dpi", type=int, default=200)
    p.set_defaults(func=_cmd_histogram)

    p = sub.add_parser("convergence", help="log-log variance panels")
    p.add_argument("--in", dest="input", required=True, help="convergence CSV")
    p.add_argument("--out", required=True, help="output image file")
    p.add_argument("--fns", default="", help="comma list, default all present")
    p.add_argument("--estimators", default="", help="comma list, default all")
    p.add_argument("--m-min", type=int, default=None)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--dpi", type=int, default=200)
    p.set_defaults(func=_cmd_convergence)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        raise SystemExit(f"error: {exc}")


if __name__ == "__main__":
    raise SystemExit(main())
