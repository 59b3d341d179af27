"""Experiment harness: error histograms, convergence sweeps, CSV records.

Both experiments emit flat records with the same schema and fully
deterministic content: every random decision inside a job is keyed by the
master seed plus the job coordinates (estimator, point budget, repetition),
and rows are sorted before serialization, so a CSV is byte-identical
across repeated runs and across worker counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .construct import (
    SelectionConfig,
    cbc_randomized,
    sample_prime,
    sample_shift,
    sample_vector,
    select,
)
from .fold import pairwise_sum
from .integrands import TestFunction
from .lattice import LatticeRule, shifted_points
from .rng import PURPOSE_CBC, PURPOSE_MC, PURPOSE_PRIME, PURPOSE_SHIFT, derive_seed, stream
from .space import KorobovParams
from .wce import wce_closed_form

__all__ = [
    "ExperimentRecord",
    "SlopeFit",
    "CSV_HEADER",
    "ESTIMATORS",
    "run_histogram",
    "run_convergence",
    "fit_slope",
    "variance_table",
    "sort_records",
    "write_csv",
    "read_csv",
    "format_value",
]

CSV_HEADER = "experiment_id,estimator,fn,d,alpha,M,N,rep,value,seed"

#: Estimator labels on the CSV wire and their RNG stream tags.  random_z is a
#: single uniform generating vector, alg1 the min-of-r random search behind
#: :func:`ranlattice.construct.select`, cbc_rand / cbc_det the randomized and
#: greedy component-by-component constructions, and mc plain Monte Carlo.
ESTIMATORS = {
    "random_z": 1,
    "alg1": 2,
    "cbc_rand": 3,
    "cbc_det": 4,
    "mc": 5,
}

_CONV_ESTIMATORS = ("alg1", "cbc_rand", "mc")
_DEFAULT_FNS = ("f1", "f2", "f3", "f4")


@dataclass(frozen=True)
class ExperimentRecord:
    """One emitted measurement.

    ``value`` is the base-10 log of the squared worst-case error for
    histogram records and the raw integral estimate for convergence
    records.  ``m`` is 0 when the modulus was fixed rather than drawn
    from a window, and ``n`` is 0 for plain Monte Carlo, which uses no
    lattice.
    """

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


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares slope of log10 variance against log10 M."""

    slope: float
    intercept: float
    m_min: int
    m_max: int
    n_m: int


def _log10_or_neg_inf(value: float) -> float:
    return math.log10(value) if value > 0.0 else float("-inf")


def format_value(value: float) -> str:
    """Serialize one value; negative infinity becomes the ``-inf`` sentinel."""
    if value == float("-inf"):
        return "-inf"
    return repr(value)


def sort_records(records: Iterable[ExperimentRecord]) -> list[ExperimentRecord]:
    """Deterministic order: by (estimator, fn, M, rep)."""
    return sorted(records, key=lambda r: (r.estimator, r.fn, r.m, r.rep))


def write_csv(records: Iterable[ExperimentRecord], path: str | Path) -> None:
    """Write sorted records as UTF-8 CSV with LF line endings."""
    lines = [CSV_HEADER]
    for r in sort_records(records):
        lines.append(
            ",".join(
                (
                    r.experiment_id,
                    r.estimator,
                    r.fn,
                    str(r.d),
                    repr(float(r.alpha)),
                    str(r.m),
                    str(r.n),
                    str(r.rep),
                    format_value(float(r.value)),
                    str(r.seed),
                )
            )
        )
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


def read_csv(path: str | Path) -> list[ExperimentRecord]:
    """Parse a CSV produced by :func:`write_csv`."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.split("\n") if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"unrecognized CSV header in {path}")
    out = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 10:
            raise ValueError(f"malformed CSV row: {ln!r}")
        out.append(
            ExperimentRecord(
                experiment_id=parts[0],
                estimator=parts[1],
                fn=parts[2],
                d=int(parts[3]),
                alpha=float(parts[4]),
                m=int(parts[5]),
                n=int(parts[6]),
                rep=int(parts[7]),
                value=float(parts[8]),
                seed=int(parts[9]),
            )
        )
    return out


# ---------------------------------------------------------------------------
# histogram experiment


def run_histogram(
    n_points: int,
    params: KorobovParams,
    eta: float = 0.5,
    trials: int = 1000,
    seed: int = 0,
) -> list[ExperimentRecord]:
    """Distribution of the worst-case error over repeated constructions.

    Per trial, three rules for the same fixed prime ``N`` are built: a
    single uniform random vector, the min-of-r selection (its ``r`` rule
    evaluated at ``N``), and the randomized component-by-component draw
    with quantile ``eta``.  Each contributes one record whose value is
    ``log10`` of the squared worst-case error.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    records = []

    def emit(estimator: str, rep: int, sq: float) -> None:
        records.append(
            ExperimentRecord(
                experiment_id="hist",
                estimator=estimator,
                fn="",
                d=params.dim,
                alpha=params.alpha,
                m=0,
                n=n_points,
                rep=rep,
                value=_log10_or_neg_inf(sq),
                seed=seed,
            )
        )

    for t in range(trials):
        z = sample_vector(
            n_points, params.dim, stream(seed, ESTIMATORS["random_z"], t)
        )
        rule = LatticeRule(n_points, tuple(int(v) for v in z))
        emit("random_z", t, wce_closed_form(rule, params).squared_error)

        config = SelectionConfig(
            m_max=n_points,
            eta=eta,
            r_rule="rms",
            seed=derive_seed(seed, ESTIMATORS["alg1"], t),
            fixed_n=n_points,
        )
        outcome = select(config, params)
        emit("alg1", t, outcome.candidate_errors[outcome.argmin_index])

        rule = cbc_randomized(
            n_points, params, eta, stream(seed, ESTIMATORS["cbc_rand"], t)
        )
        emit("cbc_rand", t, wce_closed_form(rule, params).squared_error)

    return sort_records(records)


# ---------------------------------------------------------------------------
# convergence experiment


def _conv_job(
    estimator: str,
    m: int,
    rep: int,
    params: KorobovParams,
    fns: Sequence[str],
    seed: int,
) -> list[ExperimentRecord]:
    tag = ESTIMATORS[estimator]
    d = params.dim
    estimates: dict[str, float] = {}
    n_emitted = 0
    if estimator == "mc":
        rng = stream(seed, tag, m, rep, PURPOSE_MC)
        x = rng.random((m, d))
        for fname in fns:
            f = TestFunction.by_name(fname, d)
            estimates[fname] = float(pairwise_sum(f.evaluate(x))) / m
    else:
        if estimator == "alg1":
            config = SelectionConfig(
                m_max=m,
                eta=0.5,
                r_rule="stable",
                seed=derive_seed(seed, tag, m, rep),
            )
            outcome = select(config, params)
            rule = LatticeRule(outcome.n_points, outcome.z_star)
        elif estimator == "cbc_rand":
            n = sample_prime(m, stream(seed, tag, m, rep, PURPOSE_PRIME))
            rule = cbc_randomized(
                n, params, 0.5, stream(seed, tag, m, rep, PURPOSE_CBC)
            )
        else:
            raise ValueError(f"unknown convergence estimator {estimator!r}")
        shift = sample_shift(d, stream(seed, tag, m, rep, PURPOSE_SHIFT))
        x = shifted_points(rule, shift)
        for fname in fns:
            f = TestFunction.by_name(fname, d)
            estimates[fname] = float(pairwise_sum(f.evaluate(x))) / rule.n_points
        n_emitted = rule.n_points
    return [
        ExperimentRecord(
            experiment_id="conv",
            estimator=estimator,
            fn=fname,
            d=d,
            alpha=params.alpha,
            m=m,
            n=0 if estimator == "mc" else n_emitted,
            rep=rep,
            value=estimates[fname],
            seed=seed,
        )
        for fname in fns
    ]


def run_convergence(
    params: KorobovParams,
    m_grid: Sequence[int],
    reps: int = 50,
    seed: int = 0,
    fns: Sequence[str] = _DEFAULT_FNS,
    workers: int = 1,
) -> list[ExperimentRecord]:
    """Integral estimates across a budget grid for three estimators.

    Per budget ``M`` and repetition, the min-of-r selection (stable ``r``
    rule) and the randomized component-by-component construction each
    draw a prime from the upper half of ``[2, M]``, build a vector, and
    integrate all requested functions under one random shift; plain
    Monte Carlo uses ``M`` uniform points.  Jobs are independent and
    keyed by (estimator, M, rep), so the output is identical for any
    ``workers`` count.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    for fname in fns:
        if fname not in _DEFAULT_FNS:
            raise ValueError(f"unknown test function {fname!r}")
    jobs = [
        (estimator, int(m), rep)
        for estimator in _CONV_ESTIMATORS
        for m in m_grid
        for rep in range(reps)
    ]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(
                    lambda job: _conv_job(job[0], job[1], job[2], params, fns, seed),
                    jobs,
                )
            )
    else:
        chunks = [_conv_job(e, m, rep, params, fns, seed) for e, m, rep in jobs]
    records = [rec for chunk in chunks for rec in chunk]
    return sort_records(records)


# ---------------------------------------------------------------------------
# post-processing


def variance_table(
    records: Iterable[ExperimentRecord], estimator: str, fn: str
) -> list[tuple[int, float]]:
    """Unbiased per-budget variance of the estimates, sorted by ``M``."""
    groups: dict[int, list[float]] = {}
    for r in records:
        if r.estimator == estimator and r.fn == fn:
            groups.setdefault(r.m, []).append(r.value)
    out = []
    for m in sorted(groups):
        values = groups[m]
        if len(values) < 2:
            raise ValueError(
                f"variance at M={m} needs at least two repetitions"
            )
        out.append((m, float(np.var(values, ddof=1))))
    return out


def fit_slope(
    records: Iterable[ExperimentRecord],
    estimator: str,
    fn: str,
    m_range: tuple[int, int],
) -> SlopeFit:
    """Least-squares slope of ``log10`` variance against ``log10 M``.

    Budgets outside ``m_range`` or with zero variance are dropped; at
    least three distinct budgets must remain.
    """
    lo, hi = m_range
    pairs = [
        (m, v)
        for m, v in variance_table(records, estimator, fn)
        if lo <= m <= hi and v > 0.0
    ]
    if len(pairs) < 3:
        raise ValueError(
            "slope fit needs at least three budgets with positive variance"
        )
    xs = np.log10([m for m, _ in pairs])
    ys = np.log10([v for _, v in pairs])
    slope, intercept = np.polyfit(xs, ys, 1)
    return SlopeFit(
        slope=float(slope),
        intercept=float(intercept),
        m_min=min(m for m, _ in pairs),
        m_max=max(m for m, _ in pairs),
        n_m=len(pairs),
    )
