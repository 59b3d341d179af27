"""Worst-case integration error of rank-1 lattice rules.

For integer smoothness ``alpha`` the squared worst-case error over the
unit ball of the weighted Korobov space has a closed form over the node
set:

    e^2 = -1 + (1/N) sum_x prod_j (1 + gamma_j c_alpha B_{2 alpha}(x_j))

with ``c_alpha = (-1)**(alpha+1) (2 pi)**(2 alpha) / (2 alpha)!`` and
``B_m`` the Bernoulli polynomial of degree ``m``.  This costs O(d N) per
rule and is what every construction routine minimizes.

The same quantity equals the sum of ``1 / r(k)**2`` over the nonzero
dual lattice.  Truncating that sum to a cube gives an independent
brute-force oracle together with a computable bound on the omitted mass,
used to validate the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .lattice import LatticeRule
from .space import KorobovParams, bound_B_inf, zeta

__all__ = [
    "WceReport",
    "bernoulli_poly",
    "build_kernel_tables",
    "wce_closed_form",
    "wce_brute_force",
    "brute_force_tail_bound",
    "k_max_for_tail",
    "membership_Z",
    "BOX_GUARD",
]

#: Largest admissible cube cardinality ``(2 k_max + 1)**d`` for the oracle.
BOX_GUARD = 10**9

# Hard-coded Bernoulli polynomials, highest degree first.
_BERNOULLI_COEFFS = {
    2: (1.0, -1.0, 1.0 / 6.0),
    4: (1.0, -2.0, 1.0, 0.0, -1.0 / 30.0),
    6: (1.0, -3.0, 5.0 / 2.0, 0.0, -1.0 / 2.0, 0.0, 1.0 / 42.0),
    8: (1.0, -4.0, 14.0 / 3.0, 0.0, -7.0 / 3.0, 0.0, 2.0 / 3.0, 0.0, -1.0 / 30.0),
}


@dataclass(frozen=True)
class WceReport:
    """Squared worst-case error with provenance.

    ``tail_bound`` is zero for the closed form; for the brute-force path
    it bounds the dual-lattice mass outside the enumerated cube, so the
    true squared error lies in ``[squared_error, squared_error +
    tail_bound]``.  ``clamped`` records that a small negative rounding
    residue of the closed form was replaced by zero.
    """

    squared_error: float
    method: str
    tail_bound: float = 0.0
    clamped: bool = False


def bernoulli_poly(order: int, x):
    """Bernoulli polynomial ``B_order`` on ``[0, 1]``, order in {2, 4, 6, 8}."""
    if order not in _BERNOULLI_COEFFS:
        raise ValueError("order must be one of 2, 4, 6, 8")
    xv = np.asarray(x, dtype=np.float64)
    if np.any(xv < 0.0) or np.any(xv > 1.0):
        raise ValueError("argument must lie in [0, 1]")
    out = np.zeros_like(xv)
    for c in _BERNOULLI_COEFFS[order]:
        out = out * xv + c
    if out.ndim == 0:
        return float(out)
    return out


def _integer_alpha(alpha: float) -> int:
    a = round(alpha)
    if abs(alpha - a) > 1e-12 or a not in (1, 2, 3, 4):
        raise ValueError(
            "closed-form worst-case error requires integer alpha in 1..4"
        )
    return int(a)


def kernel_coefficient(alpha: int) -> float:
    """``(-1)**(alpha+1) (2 pi)**(2 alpha) / (2 alpha)!``."""
    a = _integer_alpha(alpha)
    return (-1.0) ** (a + 1) * (2.0 * math.pi) ** (2 * a) / math.factorial(2 * a)


def build_kernel_tables(params: KorobovParams, n_points: int) -> np.ndarray:
    """Per-coordinate factor tables ``K[j, t] = 1 + gamma_j**2 c B(t / N)``.

    The squared weight keeps the node-set mean of the row products equal
    to ``1  +  sum over nonzero dual frequencies of 1 / r(k)**2``, since
    each active coordinate contributes ``gamma_j**2 / |k_j|**(2 alpha)``
    there; with first-power weights the two error routes would disagree
    for any ``gamma_j != 1``.
    """
    a = _integer_alpha(params.alpha)
    c = kernel_coefficient(a)
    grid = np.arange(n_points, dtype=np.float64) / n_points
    bvals = bernoulli_poly(2 * a, grid)
    gamma = np.asarray(params.weights, dtype=np.float64)
    return 1.0 + (gamma * gamma)[:, None] * (c * bvals)[None, :]


def finalize_squared_error(mean_value: float) -> tuple[float, bool]:
    """Turn the node-set mean into a squared error, clamping fp residue."""
    sq = mean_value - 1.0
    if sq < 0.0:
        return 0.0, True
    return sq, False


def wce_closed_form(rule: LatticeRule, params: KorobovParams) -> WceReport:
    """O(d N) closed-form squared worst-case error of ``rule``."""
    if rule.dim != params.dim:
        raise ValueError("rule and params dimensions differ")
    tables = build_kernel_tables(params, rule.n_points)
    z = np.asarray(rule.gen_vector, dtype=np.int64)
    mean = kernels.weighted_product_mean(z, tables)
    sq, clamped = finalize_squared_error(mean)
    return WceReport(squared_error=sq, method="closed_form", clamped=clamped)


def _coordinate_tail(k_max: int, two_alpha: float) -> float:
    # Integral bound on sum_{m > k_max} m**(-two_alpha).
    return k_max ** (1.0 - two_alpha) / (two_alpha - 1.0)


def brute_force_tail_bound(
    params: KorobovParams, k_max: int
) -> float:
    """Upper bound on the dual mass outside the cube of radius ``k_max``.

    Product-minus-truncated-product over the unconstrained frequency
    lattice: each coordinate contributes at most ``2 gamma_j**2`` times
    the tail ``sum_{m > k_max} m**(-2 alpha)``, bounded by the integral
    ``k_max**(1 - 2 alpha) / (2 alpha - 1)``.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    two_alpha = 2.0 * params.alpha
    zfull = zeta(two_alpha)
    tail = _coordinate_tail(k_max, two_alpha)
    full = 1.0
    trunc = 1.0
    for g in params.weights:
        gsq = g * g
        full *= 1.0 + 2.0 * gsq * zfull
        trunc *= 1.0 + 2.0 * gsq * max(zfull - tail, 0.0)
    return max(full - trunc, 0.0)


def k_max_for_tail(params: KorobovParams, target: float) -> int:
    """Smallest cube radius whose tail bound is at most ``target``."""
    if not target > 0.0:
        raise ValueError("target must be positive")
    lo, hi = 1, 1
    while brute_force_tail_bound(params, hi) > target:
        lo = hi
        hi *= 2
        if hi > 2**40:
            raise ValueError("tail target unreachable")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if brute_force_tail_bound(params, mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def wce_brute_force(
    rule: LatticeRule, params: KorobovParams, k_max: int
) -> WceReport:
    """Dual-lattice sum truncated to the cube ``[-k_max, k_max]**d``.

    Valid for any real ``alpha > 1/2``.  The cube cardinality
    ``(2 k_max + 1)**d`` must not exceed :data:`BOX_GUARD`.
    """
    if rule.dim != params.dim:
        raise ValueError("rule and params dimensions differ")
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if (2 * k_max + 1) ** rule.dim > BOX_GUARD:
        raise ValueError(
            f"cube cardinality (2*{k_max}+1)**{rule.dim} exceeds {BOX_GUARD}"
        )
    z = np.asarray(rule.gen_vector, dtype=np.int64)
    gsq = np.asarray([g * g for g in params.weights], dtype=np.float64)
    sq = kernels.dual_box_sum(
        z, rule.n_points, k_max, gsq, 2.0 * params.alpha
    )
    return WceReport(
        squared_error=float(sq),
        method="brute_force",
        tail_bound=brute_force_tail_bound(params, k_max),
    )


def membership_Z(
    rule: LatticeRule,
    eta: float,
    params: KorobovParams,
    lambda_grid: Sequence[float] | None = None,
) -> bool:
    """Whether the rule's error passes the quality bound at every exponent.

    True when ``sqrt(e^2) <= B(lam)`` for every ``lam`` in the grid,
    equivalently when the error is below the grid minimum of the bound.
    A fraction at least ``eta`` of generating vectors passes.
    """
    report = wce_closed_form(rule, params)
    bound = bound_B_inf(rule.n_points, eta, params, lambda_grid)
    return math.sqrt(report.squared_error) <= bound
