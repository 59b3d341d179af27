"""Constructions of generating vectors.

The main routine draws a prime modulus uniformly from the upper half of
``[2, M]``, then draws ``r`` independent uniform generating vectors and
keeps the one with the smallest computable worst-case error.  Each
candidate that misses the quality set does so with probability at most
``1 - eta``, so the selected vector misses with probability at most
``(1 - eta)**r``; the rules for ``r`` trade that failure probability
against work.

Two component-by-component constructions serve as baselines: the classic
greedy one, and a randomized variant that draws each component uniformly
from the best quantile of candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .lattice import LatticeRule, Shift
from .primes import is_prime, primes_in_range
from .rng import PURPOSE_PRIME, PURPOSE_VECTOR, stream
from .space import KorobovParams
from .wce import build_kernel_tables, finalize_squared_error

__all__ = [
    "SelectionConfig",
    "SelectionOutcome",
    "prime_set",
    "sample_prime",
    "sample_vector",
    "sample_shift",
    "resolve_r",
    "select",
    "cbc_deterministic",
    "cbc_randomized",
]


def prime_set(m: int) -> list[int]:
    """Primes ``p`` with ``ceil(M / 2) < p <= M``, in increasing order."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return primes_in_range((m + 1) // 2, m)


def sample_prime(m: int, rng: np.random.Generator) -> int:
    """Uniform draw from :func:`prime_set`."""
    candidates = prime_set(m)
    return candidates[int(rng.integers(0, len(candidates)))]


def sample_vector(n_points: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """I.i.d. uniform components from ``{1, .., N-1}`` (unbiased draws)."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if dim < 1:
        raise ValueError("dim must be at least 1")
    return rng.integers(1, n_points, size=dim, dtype=np.int64)


def sample_shift(dim: int, rng: np.random.Generator) -> Shift:
    """Uniform shift on ``[0, 1)**dim``."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    return Shift(tuple(float(v) for v in rng.random(dim)))


def resolve_r(r_rule: str, m: int, alpha: float, eta: float) -> int:
    """Number of candidate draws prescribed by a rule string.

    ``"fixed:K"`` returns ``K`` directly.  The other rules scale
    ``ln M / -ln(1 - eta)`` by a factor: ``alpha + 1/2`` for ``"ran"``
    (keeps the randomized error rate), ``2 alpha + 1`` for ``"rms"``
    (keeps the root-mean-squared rate), and ``max(ln ln M, 1)`` for
    ``"stable"`` (slowly growing work), each rounded up.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if not 0.0 < eta < 1.0:
        raise ValueError("eta must lie strictly between 0 and 1")
    kind, _, arg = r_rule.partition(":")
    if kind == "fixed":
        r = int(arg)
        if r < 1:
            raise ValueError("fixed r must be at least 1")
        return r
    scale = -math.log(m) / math.log1p(-eta)
    if kind == "ran":
        factor = alpha + 0.5
    elif kind == "rms":
        factor = 2.0 * alpha + 1.0
    elif kind == "stable":
        factor = max(math.log(math.log(m)), 1.0)
    else:
        raise ValueError(f"unknown r rule {r_rule!r}")
    return math.ceil(factor * scale)


@dataclass(frozen=True)
class SelectionConfig:
    """Inputs of the random-candidate selection.

    ``m_max`` bounds the prime window; ``fixed_n`` skips the prime draw
    and uses the given prime directly (the ``r`` rule is then evaluated
    at ``N`` instead of ``M``).  ``seed`` keys every stream the routine
    uses, so equal configs reproduce equal outcomes.
    """

    m_max: int
    eta: float = 0.5
    r_rule: str = "rms"
    seed: int = 0
    fixed_n: int | None = None

    def __post_init__(self) -> None:
        if self.m_max < 2:
            raise ValueError("m_max must be at least 2")
        if not 0.0 < self.eta < 1.0:
            raise ValueError("eta must lie strictly between 0 and 1")


@dataclass(frozen=True)
class SelectionOutcome:
    """Result of one selection run.

    ``candidate_errors`` lists the squared worst-case error of every
    candidate in draw order; ``argmin_index`` is the first index
    attaining the minimum and ``z_star`` the corresponding vector.
    """

    n_points: int
    z_star: tuple[int, ...]
    candidate_errors: tuple[float, ...]
    argmin_index: int
    r: int
    seed: int


def select(config: SelectionConfig, params: KorobovParams) -> SelectionOutcome:
    """Min-of-r random search for a good generating vector."""
    if config.fixed_n is not None:
        n = int(config.fixed_n)
        if not is_prime(n):
            raise ValueError(f"fixed_n = {n} is not prime")
        m_for_r = n
    else:
        n = sample_prime(config.m_max, stream(config.seed, PURPOSE_PRIME))
        m_for_r = config.m_max
    r = resolve_r(config.r_rule, m_for_r, params.alpha, config.eta)
    tables = build_kernel_tables(params, n)
    errors: list[float] = []
    vectors: list[np.ndarray] = []
    for i in range(r):
        z = sample_vector(n, params.dim, stream(config.seed, PURPOSE_VECTOR, i))
        mean = kernels.weighted_product_mean(z, tables)
        sq, _ = finalize_squared_error(mean)
        errors.append(sq)
        vectors.append(z)
    argmin = int(np.argmin(np.asarray(errors)))
    return SelectionOutcome(
        n_points=n,
        z_star=tuple(int(v) for v in vectors[argmin]),
        candidate_errors=tuple(errors),
        argmin_index=argmin,
        r=r,
        seed=config.seed,
    )


def _cbc_validate(n_points: int, params: KorobovParams) -> None:
    if not is_prime(n_points):
        raise ValueError(f"n_points = {n_points} is not prime")
    if n_points < 3:
        raise ValueError("component scans need at least two candidates")


def cbc_deterministic(n_points: int, params: KorobovParams) -> LatticeRule:
    """Greedy component-by-component construction.

    The first component is 1: with a single coordinate every candidate
    generates the same point set up to order, so the smallest wins.  Each
    later component scans all ``N - 1`` candidates against the running
    per-point products of the previous components (O(N) state, O(N^2)
    kernel evaluations per component) and keeps the first minimizer.
    """
    _cbc_validate(n_points, params)
    tables = build_kernel_tables(params, n_points)
    idx = np.arange(n_points, dtype=np.int64)
    z = [1]
    prods = tables[0].copy()
    for j in range(1, params.dim):
        scores = kernels.cbc_scan(prods, tables[j])
        c = int(np.argmin(scores)) + 1
        z.append(c)
        prods = prods * tables[j, (idx * c) % n_points]
    return LatticeRule(n_points, tuple(z))


def cbc_randomized(
    n_points: int,
    params: KorobovParams,
    tau: float,
    rng: np.random.Generator,
) -> LatticeRule:
    """Component-by-component draw from the best candidate quantile.

    Per component the ``ceil(tau (N - 1))`` candidates with the smallest
    worst-case error are kept (ties at the boundary resolved by candidate
    value ascending) and one of them is drawn uniformly.  For the first
    component all candidates tie, so the draw is uniform over
    ``{1, .., ceil(tau (N - 1))}``.
    """
    _cbc_validate(n_points, params)
    if not 0.0 < tau <= 1.0:
        raise ValueError("tau must lie in (0, 1]")
    quantile = math.ceil(tau * (n_points - 1))
    tables = build_kernel_tables(params, n_points)
    idx = np.arange(n_points, dtype=np.int64)
    z = [1 + int(rng.integers(0, quantile))]
    prods = tables[0, (idx * z[0]) % n_points].copy()
    for j in range(1, params.dim):
        scores = kernels.cbc_scan(prods, tables[j])
        order = np.argsort(scores, kind="stable")
        c = int(order[int(rng.integers(0, quantile))]) + 1
        z.append(c)
        prods = prods * tables[j, (idx * c) % n_points]
    return LatticeRule(n_points, tuple(z))
