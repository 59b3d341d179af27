"""Weighted Korobov space parameters and membership bounds.

A weighted Korobov space on the ``d``-dimensional unit cube is described
by a smoothness exponent ``alpha > 1/2`` and coordinate weights
``0 <= gamma_j <= 1``.  A frequency vector ``k`` is penalized by the
decay function

    r(k) = prod over j with k_j != 0 of |k_j|**alpha / gamma_j

with the empty product equal to 1, so the squared worst-case error of a
lattice rule is the sum of ``1 / r(k)**2`` over the nonzero dual lattice.
This module also evaluates the probabilistic quality bound ``B`` used to
define the set of acceptable generating vectors: a vector is acceptable
when its worst-case error is below ``B`` for every exponent ``lam`` in
``[1/2, alpha)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np

__all__ = [
    "KorobovParams",
    "resolve_weights",
    "r_decay",
    "zeta",
    "bound_B",
    "bound_B_inf",
    "default_lambda_grid",
]

#: Default tolerance for acceptance of the bound grid endpoints.
_LAMBDA_MARGIN = 0.01
_LAMBDA_GRID_SIZE = 33


def resolve_weights(rule: str, dim: int) -> tuple[float, ...]:
    """Expand a weight rule string into ``dim`` coordinate weights.

    Two syntaxes are accepted:

    * ``"poly:a"`` gives ``gamma_j = j**(-a)`` for ``j = 1.. dim``;
    * ``"list:g1,g2,..."`` gives the listed values, which must number
      exactly ``dim``.
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    kind, _, arg = rule.partition(":")
    if kind == "poly":
        decay = float(arg)
        return tuple(float(j) ** (-decay) for j in range(1, dim + 1))
    if kind == "list":
        values = tuple(float(v) for v in arg.split(","))
        if len(values) != dim:
            raise ValueError(
                f"weight list has {len(values)} entries, expected {dim}"
            )
        return values
    raise ValueError(f"unknown weight rule {rule!r}; use 'poly:a' or 'list:...'")


@dataclass(frozen=True)
class KorobovParams:
    """Smoothness exponent and coordinate weights of a Korobov space.

    Parameters
    ----------
    alpha : float
        Smoothness exponent, must exceed 1/2.
    weights : tuple of float
        Coordinate weights ``gamma_1 .. gamma_d``, each in ``[0, 1]``.
    """

    alpha: float
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(float(g) for g in self.weights))
        if not self.alpha > 0.5:
            raise ValueError("alpha must exceed 1/2")
        if len(self.weights) < 1:
            raise ValueError("at least one coordinate weight is required")
        for g in self.weights:
            if not (0.0 <= g <= 1.0):
                raise ValueError("weights must lie in [0, 1]")

    @property
    def dim(self) -> int:
        return len(self.weights)

    @classmethod
    def with_rule(cls, alpha: float, dim: int, rule: str) -> "KorobovParams":
        """Build parameters from a weight rule string."""
        return cls(alpha=float(alpha), weights=resolve_weights(rule, dim))

    @classmethod
    def with_poly_weights(
        cls, alpha: float, dim: int, decay: float
    ) -> "KorobovParams":
        """Build parameters with ``gamma_j = j**(-decay)``."""
        return cls.with_rule(alpha, dim, f"poly:{decay}")


def r_decay(k: Sequence[int], params: KorobovParams) -> float:
    """Decay value ``r(k)`` of one frequency vector.

    Zero coordinates contribute nothing; a zero weight paired with a
    nonzero frequency gives infinity, which makes the corresponding
    ``1 / r(k)**2`` contribution vanish.
    """
    kv = np.asarray(k)
    if kv.shape != (params.dim,):
        raise ValueError(f"frequency vector must have shape ({params.dim},)")
    out = 1.0
    for kj, gj in zip(kv.tolist(), params.weights):
        if kj == 0:
            continue
        if gj == 0.0:
            return math.inf
        out *= abs(kj) ** params.alpha / gj
    return out


# Bernoulli numbers B_2 .. B_14 for the Euler-Maclaurin tail of zeta.
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)
_EM_TERMS = 6
_ZETA_TOL = 1e-13


def _zeta_em(s, T: int, exact):
    """Euler-Maclaurin assembly shared by the float and mpmath paths.

    Returns ``(value, remainder_bound)`` where the bound is the magnitude
    of the first omitted correction term; the true remainder cannot
    exceed it for this completely monotone integrand.
    """
    one = exact(1)
    terms = [exact(n) ** (-s) for n in range(1, T)]
    tail = exact(T) ** (one - s) / (s - one)
    terms.append(tail)
    terms.append(exact(T) ** (-s) / 2)
    rising = s
    for i in range(_EM_TERMS):
        m = 2 * i + 1
        coeff = exact(_BERNOULLI[i]) / exact(math.factorial(2 * i + 2))
        terms.append(coeff * rising * exact(T) ** (-s - m))
        rising = rising * (s + m) * (s + m + 1)
    bound = abs(
        exact(_BERNOULLI[_EM_TERMS])
        / exact(math.factorial(2 * _EM_TERMS + 2))
        * rising
        * exact(T) ** (-s - 2 * _EM_TERMS - 1)
    )
    if isinstance(bound, float):
        value = math.fsum(terms)
    else:
        value = mpmath.fsum(terms)
    return value, bound


@lru_cache(maxsize=4096)
def zeta(s: float) -> float:
    """Riemann zeta for real ``s > 1`` to 1e-12 absolute accuracy.

    Direct series plus the integral tail ``T**(1-s) / (s-1)``, with
    Euler-Maclaurin corrections so a small ``T`` already puts the
    remainder below tolerance.  Near ``s = 1`` the value grows like
    ``1 / (s-1)``, so that branch is assembled in 40-digit working
    precision before rounding once to float; the result there is
    accurate to the last float64 bit, which stays within 1e-12 absolute
    for ``s >= 1.0001``.
    """
    s = float(s)
    if not s > 1.0:
        raise ValueError("zeta requires s > 1")
    if s - 1.0 < 0.05:
        with mpmath.workdps(40):
            value, bound = _zeta_em(mpmath.mpf(s), 64, mpmath.mpf)
            if bound > _ZETA_TOL:
                value, bound = _zeta_em(mpmath.mpf(s), 1024, mpmath.mpf)
            return float(value)
    T = 16
    value, bound = _zeta_em(s, T, float)
    while bound > _ZETA_TOL and T < 65536:
        T *= 2
        value, bound = _zeta_em(s, T, float)
    return value


def bound_B(
    n_points: int, eta: float, lam: float, params: KorobovParams
) -> float:
    """Quality bound ``B`` at one exponent ``lam``.

    ``B = ((1 / ((1 - eta) (N - 1))) * prod_j (1 + 2 gamma_j**(1/lam)
    zeta(alpha/lam)))**lam``.  A fraction at least ``eta`` of generating
    vectors has worst-case error below ``B``; smaller values of the
    product over the admissible ``lam`` range sharpen the test.
    """
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if not 0.0 < eta < 1.0:
        raise ValueError("eta must lie strictly between 0 and 1")
    if not 0.5 <= lam < params.alpha:
        raise ValueError("lam must lie in [1/2, alpha)")
    zval = zeta(params.alpha / lam)
    prod = 1.0
    for g in params.weights:
        prod *= 1.0 + 2.0 * g ** (1.0 / lam) * zval
    return (prod / ((1.0 - eta) * (n_points - 1))) ** lam


def default_lambda_grid(alpha: float) -> np.ndarray:
    """Geometric grid of 33 exponents on ``[1/2, alpha - 0.01]``."""
    hi = alpha - _LAMBDA_MARGIN
    if hi < 0.5:
        raise ValueError("alpha too small for the default exponent grid")
    return np.geomspace(0.5, hi, _LAMBDA_GRID_SIZE)


def bound_B_inf(
    n_points: int,
    eta: float,
    params: KorobovParams,
    lambda_grid: Sequence[float] | None = None,
) -> float:
    """Minimum of :func:`bound_B` over an exponent grid.

    The infimum over all of ``[1/2, alpha)`` is approximated from above
    by a finite grid minimum, which keeps the acceptance test one-sided:
    a rule passing the grid minimum passes every grid exponent.
    """
    if lambda_grid is None:
        grid = default_lambda_grid(params.alpha)
    else:
        grid = np.asarray(lambda_grid, dtype=np.float64)
    if grid.size == 0:
        raise ValueError("lambda grid must not be empty")
    return min(bound_B(n_points, eta, float(lam), params) for lam in grid)
