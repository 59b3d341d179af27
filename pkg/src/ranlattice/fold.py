"""Deterministic pairwise tree reduction.

Accumulating ``N`` floating-point terms left to right loses accuracy and,
worse for us, ties the result to the traversal order.  All estimator and
worst-case-error sums in this package instead fold adjacent pairs round by
round: element ``2i`` is added to element ``2i + 1``, an odd trailing
element is carried through unchanged, and the process repeats until one
value remains.  The addition tree is a function of the length alone, so
the vectorized path and the compiled scalar path perform bit-identical
arithmetic.
"""

from __future__ import annotations

import numpy as np

__all__ = ["pairwise_sum"]


def pairwise_sum(values, axis: int = -1) -> np.ndarray | float:
    """Sum ``values`` along ``axis`` with the fixed pairwise fold.

    Parameters
    ----------
    values : array_like
        Real values; converted to float64.
    axis : int
        Axis to reduce.  The reduced axis is removed from the result.

    Returns
    -------
    float or numpy.ndarray
        A scalar for 1-d input, otherwise an array with ``axis`` removed.
    """
    a = np.asarray(values, dtype=np.float64)
    if a.size == 0:
        raise ValueError("pairwise_sum of an empty sequence")
    a = np.moveaxis(a, axis, -1)
    while a.shape[-1] > 1:
        n = a.shape[-1]
        half = n // 2
        folded = a[..., 0 : 2 * half : 2] + a[..., 1 : 2 * half : 2]
        if n % 2:
            folded = np.concatenate([folded, a[..., -1:]], axis=-1)
        a = folded
    out = a[..., 0]
    if out.ndim == 0:
        return float(out)
    return out
