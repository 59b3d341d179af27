"""Figure rendering: histogram panels and log-log convergence panels.

Both figures are driven by small deterministic data tables computed from
the CSV records; the table builders are exposed so tests can assert on
numbers rather than pixels.  Histogram panels share one bin grid whose
width comes from the Freedman-Diaconis rule on the pooled single-draw
sample, and convergence panels annotate each series with the same
least-squares slope the benchmark ``fit`` command reports: unbiased
variance per budget, zero-variance and out-of-range budgets dropped, at
least three budgets required, straight line through the base-10 logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .records import (
    Record,
    check_estimators,
    filter_records,
    present_estimators,
    read_records,
)

__all__ = [
    "PlotSpec",
    "HistPanel",
    "SeriesFit",
    "freedman_diaconis_width",
    "histogram_table",
    "variance_by_m",
    "fit_series",
    "convergence_table",
    "series_label",
    "plot_histogram",
    "plot_convergence",
]

_KINDS = ("histogram", "convergence")


@dataclass(frozen=True)
class PlotSpec:
    """What to render: input CSV, figure kind, filters, output file."""

    input_csv: Path
    kind: str
    output_path: Path
    estimators: tuple[str, ...] | None = None
    fns: tuple[str, ...] | None = None
    n: int | None = None
    m_min: int | None = None
    m_max: int | None = None
    dpi: int = 200

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}")
        if self.estimators is not None:
            check_estimators(self.estimators)


@dataclass(frozen=True)
class HistPanel:
    """Relative-frequency histogram of one estimator at one modulus."""

    estimator: str
    n: int
    edges: np.ndarray
    freqs: np.ndarray


@dataclass(frozen=True)
class SeriesFit:
    """Variance-versus-budget series with its fitted log-log slope."""

    estimator: str
    fn: str
    moduli: tuple[int, ...]
    variances: tuple[float, ...]
    slope: float
    intercept: float


def freedman_diaconis_width(values: np.ndarray) -> float:
    """Bin width ``2 IQR / n**(1/3)``.

    Falls back to ``span / ceil(sqrt(n))`` when the interquartile range
    vanishes, and to 1 when all values coincide.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise ValueError("empty selection")
    q75, q25 = np.percentile(v, [75.0, 25.0])
    iqr = float(q75 - q25)
    if iqr > 0.0:
        return 2.0 * iqr / v.size ** (1.0 / 3.0)
    span = float(v.max() - v.min())
    if span > 0.0:
        return span / math.ceil(math.sqrt(v.size))
    return 1.0


def _shared_edges(width_pool: np.ndarray, span_pool: np.ndarray) -> np.ndarray:
    width = freedman_diaconis_width(width_pool)
    lo = float(span_pool.min())
    hi = float(span_pool.max())
    if hi == lo:
        return np.array([lo - width / 2.0, lo + width / 2.0])
    nbins = max(1, math.ceil((hi - lo) / width))
    edges = lo + width * np.arange(nbins + 1, dtype=np.float64)
    if edges[-1] < hi:  # guard against roundoff at the top edge
        edges = np.append(edges, edges[-1] + width)
    return edges


def histogram_table(
    records: Sequence[Record],
    estimators: Iterable[str] | None = None,
    n: int | None = None,
) -> list[HistPanel]:
    """One panel per (estimator, modulus), on a shared bin grid.

    The bin width follows the Freedman-Diaconis rule on the pooled
    single-random-draw values when present, keeping every panel
    comparable; otherwise all values are pooled.  Each panel's
    frequencies are its bin counts divided by its own total.
    """
    recs = filter_records(records, n=n)
    wanted = (
        present_estimators(recs)
        if estimators is None
        else check_estimators(estimators)
    )
    if not wanted or not recs:
        raise ValueError("empty selection")
    moduli = sorted({r.n for r in recs})
    values = {
        (e, nn): np.array(
            [r.value for r in recs if r.estimator == e and r.n == nn]
        )
        for e in wanted
        for nn in moduli
    }
    for (e, nn), v in values.items():
        if v.size == 0:
            raise ValueError(f"no records for estimator {e!r} at N={nn}")
        if not np.all(np.isfinite(v)):
            raise ValueError(f"non-finite value for estimator {e!r} at N={nn}")
    span_pool = np.concatenate(list(values.values()))
    base = [v for (e, _), v in values.items() if e == "random_z"]
    width_pool = np.concatenate(base) if base else span_pool
    edges = _shared_edges(width_pool, span_pool)
    panels = []
    for e in wanted:
        for nn in moduli:
            counts, _ = np.histogram(values[e, nn], bins=edges)
            panels.append(
                HistPanel(e, nn, edges, counts / counts.sum())
            )
    return panels


def variance_by_m(
    records: Sequence[Record], estimator: str, fn: str
) -> list[tuple[int, float]]:
    """Unbiased per-budget variance of the estimates, sorted by ``M``."""
    check_estimators([estimator])
    groups: dict[int, list[float]] = {}
    for r in records:
        if r.estimator == estimator and r.fn == fn:
            groups.setdefault(r.m, []).append(r.value)
    out = []
    for m in sorted(groups):
        vals = groups[m]
        if len(vals) < 2:
            raise ValueError(f"variance at M={m} needs at least two repetitions")
        out.append((m, float(np.var(vals, ddof=1))))
    return out


def fit_series(
    records: Sequence[Record],
    estimator: str,
    fn: str,
    m_min: int | None = None,
    m_max: int | None = None,
) -> SeriesFit:
    """Least-squares slope of ``log10`` variance against ``log10 M``.

    Budgets outside the range or with zero variance are dropped; at
    least three distinct budgets must remain.
    """
    pairs = [
        (m, v)
        for m, v in variance_by_m(records, estimator, fn)
        if (m_min is None or m >= m_min)
        and (m_max is None or m <= m_max)
        and v > 0.0
    ]
    if len(pairs) < 3:
        raise ValueError(
            "slope fit needs at least three budgets with positive variance"
        )
    xs = np.log10([m for m, _ in pairs])
    ys = np.log10([v for _, v in pairs])
    slope, intercept = np.polyfit(xs, ys, 1)
    return SeriesFit(
        estimator=estimator,
        fn=fn,
        moduli=tuple(m for m, _ in pairs),
        variances=tuple(v for _, v in pairs),
        slope=float(slope),
        intercept=float(intercept),
    )


def convergence_table(
    records: Sequence[Record],
    fns: Sequence[str],
    estimators: Iterable[str] | None = None,
    m_min: int | None = None,
    m_max: int | None = None,
) -> list[SeriesFit]:
    """One fitted series per (fn, estimator) present in ``records``."""
    wanted = (
        present_estimators(records)
        if estimators is None
        else check_estimators(estimators)
    )
    if not wanted or not fns:
        raise ValueError("empty selection")
    out = []
    for fn in fns:
        for e in wanted:
            if not any(r.estimator == e and r.fn == fn for r in records):
                raise ValueError(f"no records for estimator {e!r} on {fn!r}")
            out.append(fit_series(records, e, fn, m_min, m_max))
    return out


def series_label(fit: SeriesFit) -> str:
    """Legend text carrying the slope annotation."""
    return f"{fit.estimator} (slope {fit.slope:.3f})"


def plot_histogram(spec: PlotSpec) -> Path:
    """Render relative-frequency histogram panels to ``spec.output_path``.

    Rows are estimators, columns the moduli present; all panels share
    the bin grid and x-axis.
    """
    if spec.kind != "histogram":
        raise ValueError("spec.kind must be 'histogram'")
    records = read_records(spec.input_csv)
    panels = histogram_table(records, spec.estimators, spec.n)
    rows = []
    for p in panels:
        if p.estimator not in rows:
            rows.append(p.estimator)
    cols = sorted({p.n for p in panels})
    fig, axes = plt.subplots(
        len(rows),
        len(cols),
        figsize=(4.2 * len(cols), 2.6 * len(rows)),
        sharex=True,
        squeeze=False,
    )
    for p in panels:
        ax = axes[rows.index(p.estimator), cols.index(p.n)]
        ax.bar(
            p.edges[:-1],
            p.freqs,
            width=np.diff(p.edges),
            align="edge",
            color="tab:blue",
            edgecolor="black",
            linewidth=0.4,
        )
        ax.set_title(f"{p.estimator}, N = {p.n}", fontsize=10)
        ax.set_ylabel("relative frequency", fontsize=9)
    for ax in axes[-1, :]:
        ax.set_xlabel("log10 squared worst-case error", fontsize=9)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=spec.dpi)
    plt.close(fig)
    return Path(spec.output_path)


def plot_convergence(spec: PlotSpec) -> Path:
    """Render log-log variance-versus-budget panels to ``spec.output_path``.

    One panel per test function, one annotated series per estimator;
    the slope in each legend entry reproduces the benchmark fit.
    """
    if spec.kind != "convergence":
        raise ValueError("spec.kind must be 'convergence'")
    records = read_records(spec.input_csv)
    fns = (
        list(spec.fns)
        if spec.fns is not None
        else sorted({r.fn for r in records if r.fn})
    )
    fits = convergence_table(
        records, fns, spec.estimators, spec.m_min, spec.m_max
    )
    ncols = min(2, len(fns))
    nrows = math.ceil(len(fns) / ncols)
    fig, axes = plt.subplots(
        nrows,
        ncols,
        figsize=(5.0 * ncols, 3.6 * nrows),
        squeeze=False,
    )
    for i, fn in enumerate(fns):
        ax = axes[i // ncols, i % ncols]
        for fit in fits:
            if fit.fn != fn:
                continue
            ax.loglog(
                fit.moduli, fit.variances, marker="o", label=series_label(fit)
            )
        ax.set_title(fn, fontsize=10)
        ax.set_xlabel("M", fontsize=9)
        ax.set_ylabel("sample variance", fontsize=9)
        ax.legend(fontsize=8)
    for i in range(len(fns), nrows * ncols):
        axes[i // ncols, i % ncols].set_axis_off()
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=spec.dpi)
    plt.close(fig)
    return Path(spec.output_path)
