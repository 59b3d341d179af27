"""Builders for synthetic benchmark records and CSV files."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Sequence

from latplots.records import CSV_HEADER, Record


def mk_record(
    estimator: str,
    fn: str = "",
    m: int = 0,
    n: int = 251,
    rep: int = 0,
    value: float = 0.0,
    d: int = 2,
    alpha: float = 1.0,
    seed: int = 3,
    experiment_id: str = "test",
) -> Record:
    # Builtin float keeps repr round-trippable when writing CSV lines.
    return Record(
        experiment_id, estimator, fn, d, alpha, m, n, rep, float(value), seed
    )


def write_records_csv(path: Path, records: Iterable[Record]) -> Path:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.experiment_id},{r.estimator},{r.fn},{r.d},{r.alpha!r},"
            f"{r.m},{r.n},{r.rep},{r.value!r},{r.seed}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def power_law_records(
    estimator: str = "alg1",
    fn: str = "f2",
    slope: float = -2.0,
    scale: float = 1.0,
    grid: Sequence[int] = (32, 64, 128, 256, 512),
) -> list[Record]:
    """Two reps per budget whose unbiased variance is ``scale * M**slope``."""
    out = []
    for m in grid:
        h = math.sqrt(scale * float(m) ** slope / 2.0)
        out.append(mk_record(estimator, fn, m=m, n=m // 2 + 1, rep=0, value=1.0 - h))
        out.append(mk_record(estimator, fn, m=m, n=m // 2 + 1, rep=1, value=1.0 + h))
    return out
