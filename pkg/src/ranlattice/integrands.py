"""Product-form test integrands on the unit cube.

Every function is a product of per-coordinate factors with mean 1 on
``[0, 1]``, so the exact integral is 1 in any dimension and the factor
influence decays polynomially in the coordinate index:

* ``f1``: factor ``1 + j**-4 (x - 1/2)**2 sin(2 pi x - pi)``, smooth;
* ``f_beta`` for ``beta in {2, 3, 4}``: factor ``1 + j**(-2 beta)
  ((2 beta + 1) binom(2 beta, beta) x**beta (1 - x)**beta - 1)``, a
  polynomial bump of increasing smoothness at the boundary.

``f2``, ``f3``, ``f4`` name ``f_beta`` with ``beta = 2, 3, 4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .fold import pairwise_sum
from .lattice import LatticeRule, Shift, points, shifted_points

__all__ = [
    "TestFunction",
    "FBETA_COEFF",
    "coordinate_factor",
    "eval_f1",
    "eval_fbeta",
    "exact_integral",
    "qmc_estimate",
    "mc_estimate",
]

#: ``(2 beta + 1) * binom(2 beta, beta)`` for the supported exponents.
FBETA_COEFF = {2: 30.0, 3: 140.0, 4: 630.0}


def coordinate_factor(name: str, j: int, x: np.ndarray) -> np.ndarray:
    """Factor of coordinate ``j`` (1-based) of a named test function."""
    xv = np.asarray(x, dtype=np.float64)
    if name == "f1":
        return 1.0 + float(j) ** -4 * (xv - 0.5) ** 2 * np.sin(
            2.0 * np.pi * xv - np.pi
        )
    beta = {"f2": 2, "f3": 3, "f4": 4}.get(name)
    if beta is None:
        raise ValueError(f"unknown test function {name!r}")
    bump = FBETA_COEFF[beta] * (xv * (1.0 - xv)) ** beta - 1.0
    return 1.0 + float(j) ** (-2 * beta) * bump


def _eval_named(name: str, x: np.ndarray) -> np.ndarray:
    xv = np.asarray(x, dtype=np.float64)
    single = xv.ndim == 1
    if single:
        xv = xv[None, :]
    if xv.ndim != 2:
        raise ValueError("points must form an (n, d) array")
    values = np.ones(xv.shape[0], dtype=np.float64)
    for j in range(1, xv.shape[1] + 1):
        values *= coordinate_factor(name, j, xv[:, j - 1])
    return values[0] if single else values


def eval_f1(x: np.ndarray) -> np.ndarray:
    """Evaluate ``f1`` at an ``(n, d)`` array of points (or one point)."""
    return _eval_named("f1", x)


def eval_fbeta(x: np.ndarray, beta: int) -> np.ndarray:
    """Evaluate ``f_beta`` at an ``(n, d)`` array of points (or one point)."""
    if beta not in FBETA_COEFF:
        raise ValueError("beta must be one of 2, 3, 4")
    return _eval_named(f"f{beta}", x)


@dataclass(frozen=True)
class TestFunction:
    """A named test integrand, or a custom one, in a fixed dimension."""

    __test__ = False  # not a pytest class, despite the name

    name: str
    dim: int
    fn: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if self.name not in ("f1", "f2", "f3", "f4", "custom"):
            raise ValueError(f"unknown test function {self.name!r}")
        if (self.name == "custom") != (self.fn is not None):
            raise ValueError("custom functions and only they carry a callable")

    @classmethod
    def by_name(cls, name: str, dim: int) -> "TestFunction":
        return cls(name=name, dim=dim)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        xv = np.asarray(x, dtype=np.float64)
        if xv.shape[-1] != self.dim:
            raise ValueError(f"points must have {self.dim} coordinates")
        if self.fn is not None:
            return self.fn(xv)
        return _eval_named(self.name, xv)


def exact_integral(f: TestFunction) -> float:
    """Integral over the unit cube; 1 for every named test function."""
    if f.name == "custom":
        raise ValueError("custom functions have no recorded integral")
    return 1.0


def qmc_estimate(
    f: TestFunction, rule: LatticeRule, shift: Shift | None = None
) -> float:
    """Equal-weight average of ``f`` over the (shifted) node set."""
    if rule.dim != f.dim:
        raise ValueError("rule and function dimensions differ")
    x = points(rule) if shift is None else shifted_points(rule, shift)
    return float(pairwise_sum(f.evaluate(x))) / rule.n_points


def mc_estimate(f: TestFunction, m: int, rng: np.random.Generator) -> float:
    """Plain Monte Carlo average of ``f`` over ``m`` uniform points."""
    if m < 1:
        raise ValueError("m must be at least 1")
    x = rng.random((m, f.dim))
    return float(pairwise_sum(f.evaluate(x))) / m
