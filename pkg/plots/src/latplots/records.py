"""Reading and filtering benchmark CSV files.

The input format is the wire schema of the ``ranlattice`` benchmark
tools: a header row ``experiment_id,estimator,fn,d,alpha,M,N,rep,value,
seed`` followed by comma-separated data rows.  This module parses that
format without importing the producing package, so the figures can be
rendered from a CSV file alone.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "CSV_HEADER",
    "ESTIMATOR_ORDER",
    "Record",
    "read_records",
    "filter_records",
    "present_estimators",
    "check_estimators",
]

CSV_HEADER = "experiment_id,estimator,fn,d,alpha,M,N,rep,value,seed"

#: Estimator labels the benchmark tools emit, in display order.
ESTIMATOR_ORDER = ("random_z", "alg1", "cbc_rand", "cbc_det", "mc")


@dataclass(frozen=True)
class Record:
    """One benchmark CSV row."""

    experiment_id: str
    estimator: str
    fn: str
    d: int
    alpha: float
    m: int
    n: int
    rep: int
    value: float
    seed: int


def read_records(path: str | Path) -> list[Record]:
    """Parse a benchmark CSV, validating the header and every row.

    Raises
    ------
    ValueError
        If the header differs from the schema, a row has the wrong
        number of fields, or an estimator label is unknown.
    """
    out: list[Record] = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or ",".join(header) != CSV_HEADER:
            raise ValueError(f"expected header {CSV_HEADER!r}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 10:
                raise ValueError(f"line {lineno}: expected 10 fields, got {len(row)}")
            if row[1] not in ESTIMATOR_ORDER:
                raise ValueError(f"line {lineno}: unknown estimator {row[1]!r}")
            out.append(
                Record(
                    experiment_id=row[0],
                    estimator=row[1],
                    fn=row[2],
                    d=int(row[3]),
                    alpha=float(row[4]),
                    m=int(row[5]),
                    n=int(row[6]),
                    rep=int(row[7]),
                    value=float(row[8]),
                    seed=int(row[9]),
                )
            )
    return out


def check_estimators(names: Iterable[str]) -> tuple[str, ...]:
    """Validate estimator labels, returning them in display order."""
    requested = tuple(names)
    for name in requested:
        if name not in ESTIMATOR_ORDER:
            raise ValueError(f"unknown estimator {name!r}")
    return tuple(e for e in ESTIMATOR_ORDER if e in requested)


def filter_records(
    records: Sequence[Record],
    *,
    estimators: Iterable[str] | None = None,
    fns: Iterable[str] | None = None,
    n: int | None = None,
    m_min: int | None = None,
    m_max: int | None = None,
) -> list[Record]:
    """Subset of ``records`` matching every given criterion."""
    keep_est = None if estimators is None else set(check_estimators(estimators))
    keep_fn = None if fns is None else set(fns)
    out = []
    for r in records:
        if keep_est is not None and r.estimator not in keep_est:
            continue
        if keep_fn is not None and r.fn not in keep_fn:
            continue
        if n is not None and r.n != n:
            continue
        if m_min is not None and r.m < m_min:
            continue
        if m_max is not None and r.m > m_max:
            continue
        out.append(r)
    return out


def present_estimators(records: Sequence[Record]) -> tuple[str, ...]:
    """Estimator labels occurring in ``records``, in display order."""
    seen = {r.estimator for r in records}
    return tuple(e for e in ESTIMATOR_ORDER if e in seen)
