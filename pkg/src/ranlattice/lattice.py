"""Rank-1 lattice point sets.

A rule is a prime number of points ``N`` and a generating vector ``z``
with entries in ``{1, .., N-1}``.  The node set is

    x_n = frac(n * z / N),   n = 0 .. N-1.

Coordinates are produced by integer arithmetic modulo ``N`` followed by a
single division, so every coordinate is an exact multiple of ``1/N``.
The dual lattice of the rule collects the integer frequency vectors ``k``
with ``k . z = 0 (mod N)``; averaging ``exp(2 pi i k . x)`` over the node
set yields exactly 1 on the dual and 0 off it, which is the identity the
error analysis rests on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .primes import is_prime

__all__ = [
    "LatticeRule",
    "Shift",
    "points",
    "iter_points",
    "shifted_points",
    "in_dual",
    "character_sum",
]


@dataclass(frozen=True)
class LatticeRule:
    """Prime modulus and generating vector of a rank-1 rule."""

    n_points: int
    gen_vector: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "gen_vector", tuple(int(z) for z in self.gen_vector)
        )
        if not is_prime(self.n_points):
            raise ValueError(f"n_points = {self.n_points} is not prime")
        if len(self.gen_vector) < 1:
            raise ValueError("generating vector must have at least one entry")
        for z in self.gen_vector:
            if not 1 <= z <= self.n_points - 1:
                raise ValueError(
                    f"generating vector entry {z} outside 1..{self.n_points - 1}"
                )

    @property
    def dim(self) -> int:
        return len(self.gen_vector)


@dataclass(frozen=True)
class Shift:
    """A random shift, one offset per coordinate, each in [0, 1)."""

    delta: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", tuple(float(v) for v in self.delta))
        for v in self.delta:
            if not 0.0 <= v < 1.0:
                raise ValueError("shift coordinates must lie in [0, 1)")

    @property
    def dim(self) -> int:
        return len(self.delta)


def points(rule: LatticeRule) -> np.ndarray:
    """All nodes of the rule as an ``(N, d)`` float array.

    Row ``n`` is ``((n * z_1) mod N / N, .., (n * z_d) mod N / N)``.
    """
    n = rule.n_points
    z = np.asarray(rule.gen_vector, dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    return (idx[:, None] * z[None, :] % n) / float(n)


def iter_points(rule: LatticeRule) -> Iterator[tuple[float, ...]]:
    """Stream the nodes one by one, in the same order as :func:`points`."""
    n = rule.n_points
    acc = [0] * rule.dim
    for _ in range(n):
        yield tuple(t / n for t in acc)
        acc = [(t + z) % n for t, z in zip(acc, rule.gen_vector)]


def shifted_points(rule: LatticeRule, shift: Shift) -> np.ndarray:
    """Nodes moved by ``shift`` with wrap-around: ``frac(x + delta)``."""
    if shift.dim != rule.dim:
        raise ValueError("shift dimension does not match the rule")
    return (points(rule) + np.asarray(shift.delta)) % 1.0


def in_dual(k: Sequence[int], rule: LatticeRule) -> bool:
    """Whether frequency vector ``k`` satisfies ``k . z = 0 (mod N)``.

    Entries are reduced modulo ``N`` before the dot product, so arbitrary
    magnitudes and signs are handled without overflow.
    """
    kv = np.asarray(k)
    if kv.shape != (rule.dim,):
        raise ValueError(f"frequency vector must have shape ({rule.dim},)")
    n = rule.n_points
    total = 0
    for kj, zj in zip(kv.tolist(), rule.gen_vector):
        total = (total + (int(kj) % n) * zj) % n
    return total == 0


def character_sum(k: Sequence[int], rule: LatticeRule) -> complex:
    """Average of ``exp(2 pi i k . x)`` over the node set.

    Computed directly from the points; equals 1 when ``k`` is in the dual
    lattice and 0 otherwise, up to rounding.
    """
    kv = np.asarray(k, dtype=np.float64)
    if kv.shape != (rule.dim,):
        raise ValueError(f"frequency vector must have shape ({rule.dim},)")
    phases = points(rule) @ kv
    return complex(np.mean(np.exp(2j * np.pi * phases)))
