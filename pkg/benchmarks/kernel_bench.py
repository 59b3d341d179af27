"""Compare the compiled and plain-numpy kernel paths on realistic workloads.

Runs each hot kernel on inputs sized like the histogram and convergence
experiments, times both implementations in one process, checks that they
agree, and prints a speedup table.  The compiled column is skipped when
numba is unavailable or disabled via the environment flag.

Usage::

    python benchmarks/kernel_bench.py [--repeats R] [--quick]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ranlattice.kernels import (
    ENV_FLAG,
    USING_NUMBA,
    cbc_scan_numba,
    cbc_scan_numpy,
    dual_box_sum_numba,
    dual_box_sum_numpy,
    weighted_product_mean_numba,
    weighted_product_mean_numpy,
)
from ranlattice.space import KorobovParams
from ranlattice.wce import build_kernel_tables


@dataclass(frozen=True)
class Workload:
    """One benchmark case: a kernel plus prepared arguments."""

    name: str
    numpy_fn: Callable
    numba_fn: Callable | None
    args: tuple
    number: int


def best_seconds(fn: Callable, args: tuple, number: int, repeats: int) -> float:
    """Best per-call time over ``repeats`` runs of ``number`` calls each."""
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(number):
            fn(*args)
        elapsed = time.perf_counter() - start
        best = min(best, elapsed / number)
    return best


def product_mean_case(name: str, n: int, d: int, alpha: float, number: int) -> Workload:
    params = KorobovParams.with_poly_weights(alpha, d, 2.0)
    tables = build_kernel_tables(params, n)
    rng = np.random.default_rng(7)
    z = rng.integers(1, n, size=d, dtype=np.int64)
    return Workload(
        name,
        weighted_product_mean_numpy,
        weighted_product_mean_numba,
        (z, tables),
        number,
    )


def cbc_case(name: str, n: int, number: int) -> Workload:
    params = KorobovParams.with_poly_weights(2.0, 3, 2.0)
    tables = build_kernel_tables(params, n)
    # Running products as they look midway through a CBC construction.
    prods = tables[0].copy()
    prods *= tables[1, (np.arange(n) * 5) % n]
    return Workload(name, cbc_scan_numpy, cbc_scan_numba, (prods, tables[2]), number)


def dual_case(
    name: str, z: tuple[int, ...], n: int, k_max: int, number: int
) -> Workload:
    d = len(z)
    gsq = np.full(d, 0.81, dtype=np.float64)
    args = (np.asarray(z, dtype=np.int64), n, k_max, gsq, 4.0)
    return Workload(name, dual_box_sum_numpy, dual_box_sum_numba, args, number)


def build_workloads(quick: bool) -> list[Workload]:
    scale = 5 if quick else 1
    return [
        product_mean_case("product mean  N=251   d=20", 251, 20, 2.0, 400 // scale),
        product_mean_case("product mean  N=4093  d=2", 4093, 2, 2.0, 400 // scale),
        cbc_case("cbc scan      N=251", 251, 100 // scale),
        cbc_case("cbc scan      N=2039", 2039, 10 // scale),
        dual_case("dual sum  d=1 N=251  k=10^7", (97,), 251, 10**7, 20 // scale),
        dual_case("dual sum  d=2 N=251  k=2000", (97, 180), 251, 2000, 20 // scale),
        dual_case("dual sum  d=3 N=127  k=200", (35, 61, 110), 127, 200, 10 // scale),
        dual_case("dual sum  d=4 N=31   k=25", (3, 11, 17, 24), 31, 25, 10 // scale),
    ]


def check_agreement(w: Workload) -> float:
    """Largest relative gap between the two paths on this workload."""
    a = w.numpy_fn(*w.args)
    b = w.numba_fn(*w.args)
    a = np.atleast_1d(np.asarray(a, dtype=np.float64))
    b = np.atleast_1d(np.asarray(b, dtype=np.float64))
    denom = np.maximum(np.abs(a), 1e-300)
    return float(np.max(np.abs(a - b) / denom))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats")
    parser.add_argument(
        "--quick", action="store_true", help="fewer calls per measurement"
    )
    opts = parser.parse_args(argv)

    have_numba = USING_NUMBA and weighted_product_mean_numba is not None
    print(f"compiled path available: {have_numba}")
    if not have_numba:
        print(f"(install numba and unset {ENV_FLAG} to time both paths)")
    print()

    workloads = build_workloads(opts.quick)

    if have_numba:
        # First calls trigger compilation; keep them out of the timings.
        for w in workloads:
            w.numba_fn(*w.args)

    header = f"{'workload':<30} {'numpy':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for w in workloads:
        t_np = best_seconds(w.numpy_fn, w.args, w.number, opts.repeats)
        if have_numba:
            t_nb = best_seconds(w.numba_fn, w.args, w.number, opts.repeats)
            gap = check_agreement(w)
            print(
                f"{w.name:<30} {t_np * 1e3:>10.3f} ms {t_nb * 1e3:>10.3f} ms"
                f" {t_np / t_nb:>8.1f}x"
            )
            if gap > 1e-11:
                print(f"  WARNING: paths disagree, rel gap {gap:.3e}")
        else:
            print(f"{w.name:<30} {t_np * 1e3:>10.3f} ms {'-':>12} {'-':>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
