"""Hot numeric kernels with a compiled and a vectorized implementation.

Three loops dominate the package's runtime: the per-rule worst-case-error
mean, the per-component candidate scan of the component-by-component
construction, and the brute-force dual-lattice sums used as an oracle.
Each exists twice: a numba ``@njit`` version and a pure-numpy version.

The numpy path is selected by setting the environment variable
``RANLATTICE_DISABLE_NUMBA`` to ``1`` (or ``true``/``yes``/``on``) before
import, and is also used automatically when numba is not importable.
Both paths of the mean and scan kernels perform the same floating-point
operations in the same order (coordinate-ascending products, fixed
pairwise-fold sums), so switching paths never changes a result bit.

``benchmarks/kernel_bench.py`` times the two paths side by side.
"""

from __future__ import annotations

import os

import numpy as np

from .fold import pairwise_sum

__all__ = [
    "USING_NUMBA",
    "ENV_FLAG",
    "weighted_product_mean",
    "cbc_scan",
    "dual_box_sum",
    "weighted_product_mean_numpy",
    "cbc_scan_numpy",
    "dual_box_sum_numpy",
    "weighted_product_mean_numba",
    "cbc_scan_numba",
    "dual_box_sum_numba",
]

ENV_FLAG = "RANLATTICE_DISABLE_NUMBA"

_CBC_CHUNK = 128


def _flag_set() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    if _flag_set():
        raise ImportError(f"{ENV_FLAG} is set")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

USING_NUMBA = HAS_NUMBA


# ---------------------------------------------------------------------------
# numpy implementations


def weighted_product_mean_numpy(z: np.ndarray, tables: np.ndarray) -> float:
    """Mean over the node set of per-point products of kernel tables.

    ``tables[j, t]`` holds the coordinate-``j`` factor at node value
    ``t / N``; the product over coordinates runs in ascending ``j`` and
    the mean uses the pairwise fold.
    """
    n = tables.shape[1]
    idx = np.arange(n, dtype=np.int64)
    prods = np.ones(n, dtype=np.float64)
    for j in range(len(z)):
        prods *= tables[j, (idx * int(z[j])) % n]
    return float(pairwise_sum(prods)) / n


def cbc_scan_numpy(prods: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Folded sums ``sum_n prods[n] * table[(n c) mod N]`` for ``c = 1..N-1``."""
    n = prods.shape[0]
    idx = np.arange(n, dtype=np.int64)
    out = np.empty(n - 1, dtype=np.float64)
    for start in range(1, n, _CBC_CHUNK):
        cs = np.arange(start, min(start + _CBC_CHUNK, n), dtype=np.int64)
        buf = table[(cs[:, None] * idx[None, :]) % n] * prods[None, :]
        out[start - 1 : start - 1 + cs.shape[0]] = pairwise_sum(buf, axis=-1)
    return out


def _recip_pow_np(m: np.ndarray, two_alpha: float) -> np.ndarray:
    """``|m| ** -two_alpha`` elementwise; entries equal to 0 map to 1."""
    a = int(two_alpha)
    am = np.where(m == 0, 1, np.abs(m)).astype(np.float64)
    if two_alpha == a and 1 <= a <= 8:
        x = 1.0 / am
        p = x.copy()
        for _ in range(a - 1):
            p *= x
        return p
    return am ** (-two_alpha)


def dual_box_sum_numpy(
    z: np.ndarray, n: int, k_max: int, gsq: np.ndarray, two_alpha: float
) -> float:
    """Sum of ``1 / r(k)**2`` over nonzero dual vectors in the cube.

    Enumerates the dual directly: for each prefix ``(k_1 .. k_{d-1})``
    the admissible last coordinates form one residue class modulo ``N``,
    which is walked with stride ``N``.  Coordinates with zero weight
    contribute nothing and terminate a branch early.
    """
    d = len(z)
    if d == 1:
        m = np.arange(n, k_max + 1, n, dtype=np.int64)
        if m.size == 0:
            return 0.0
        return float(2.0 * gsq[0] * np.sum(_recip_pow_np(m, two_alpha)))
    inv_last = pow(int(z[-1]), n - 2, n)
    side = np.arange(-k_max, k_max + 1, dtype=np.int64)
    prefix_w = np.ones(1, dtype=np.float64)
    prefix_r = np.zeros(1, dtype=np.int64)
    for j in range(d - 1):
        wj = np.where(side == 0, 1.0, gsq[j] * _recip_pow_np(side, two_alpha))
        rj = (side % n) * int(z[j]) % n
        prefix_w = (prefix_w[:, None] * wj[None, :]).ravel()
        prefix_r = ((prefix_r[:, None] + rj[None, :]) % n).ravel()
    total = 0.0
    all_zero_prefix = (prefix_w.shape[0] - 1) // 2  # index of k_prefix = 0
    for i in range(prefix_w.shape[0]):
        c = (-prefix_r[i] % n) * inv_last % n
        start = -k_max + (c + k_max) % n
        ks = np.arange(start, k_max + 1, n, dtype=np.int64)
        if ks.size == 0:
            continue
        w_last = np.where(
            ks == 0, 1.0, gsq[-1] * _recip_pow_np(ks, two_alpha)
        )
        if i == all_zero_prefix:
            # Drop k = 0 up front; summing it and subtracting later would
            # round the whole row at the scale of 1.0.
            w_last = np.where(ks == 0, 0.0, w_last)
        total += prefix_w[i] * np.sum(w_last)
    return float(total)


# ---------------------------------------------------------------------------
# numba implementations

if HAS_NUMBA:

    @njit(cache=True)
    def _fold_inplace(buf, n):
        while n > 1:
            half = n // 2
            for i in range(half):
                buf[i] = buf[2 * i] + buf[2 * i + 1]
            if n % 2:
                buf[half] = buf[n - 1]
                n = half + 1
            else:
                n = half
        return buf[0]

    @njit(cache=True)
    def weighted_product_mean_numba(z, tables):  # noqa: F811
        d = tables.shape[0]
        n = tables.shape[1]
        prods = np.ones(n, dtype=np.float64)
        for j in range(d):
            zj = z[j]
            t = 0
            for i in range(n):
                prods[i] *= tables[j, t]
                t += zj
                if t >= n:
                    t -= n
        return _fold_inplace(prods, n) / n

    @njit(cache=True)
    def cbc_scan_numba(prods, table):  # noqa: F811
        n = prods.shape[0]
        out = np.empty(n - 1, dtype=np.float64)
        buf = np.empty(n, dtype=np.float64)
        for c in range(1, n):
            t = 0
            for i in range(n):
                buf[i] = prods[i] * table[t]
                t += c
                if t >= n:
                    t -= n
            out[c - 1] = _fold_inplace(buf, n)
        return out

    @njit(cache=True)
    def _recip_pow(m, two_alpha):
        a = int(two_alpha)
        x = abs(m)
        if two_alpha == a and 1 <= a <= 8:
            inv = 1.0 / x
            p = inv
            for _ in range(a - 1):
                p *= inv
            return p
        return x ** (-two_alpha)

    @njit(cache=True)
    def _dual_sum_1d(n, k_max, gsq0, two_alpha):
        s = 0.0
        m = n
        while m <= k_max:
            s += 2.0 * gsq0 * _recip_pow(float(m), two_alpha)
            m += n
        return s

    @njit(cache=True)
    def _dual_sum_2d(z1, z2, inv2, n, k_max, gsq1, gsq2, two_alpha):
        s = 0.0
        for k1 in range(-k_max, k_max + 1):
            w1 = 1.0 if k1 == 0 else gsq1 * _recip_pow(float(k1), two_alpha)
            c = (-((k1 % n) * z1) % n) * inv2 % n
            k2 = -k_max + (c + k_max) % n
            while k2 <= k_max:
                if k1 != 0 or k2 != 0:
                    w2 = 1.0 if k2 == 0 else gsq2 * _recip_pow(
                        float(k2), two_alpha
                    )
                    s += w1 * w2
                k2 += n
        return s

    @njit(cache=True)
    def _dual_sum_3d(z1, z2, z3, inv3, n, k_max, gsq1, gsq2, gsq3, two_alpha):
        s = 0.0
        for k1 in range(-k_max, k_max + 1):
            w1 = 1.0 if k1 == 0 else gsq1 * _recip_pow(float(k1), two_alpha)
            r1 = (k1 % n) * z1 % n
            for k2 in range(-k_max, k_max + 1):
                w2 = 1.0 if k2 == 0 else gsq2 * _recip_pow(
                    float(k2), two_alpha
                )
                c = (-((r1 + (k2 % n) * z2) % n) % n) * inv3 % n
                k3 = -k_max + (c + k_max) % n
                while k3 <= k_max:
                    if k1 != 0 or k2 != 0 or k3 != 0:
                        w3 = 1.0 if k3 == 0 else gsq3 * _recip_pow(
                            float(k3), two_alpha
                        )
                        s += w1 * w2 * w3
                    k3 += n
        return s

    @njit(cache=True)
    def _dual_sum_box(z, n, k_max, gsq, two_alpha):
        d = z.shape[0]
        k = np.full(d, -k_max, dtype=np.int64)
        s = 0.0
        while True:
            t = 0
            for j in range(d):
                t = (t + (k[j] % n) * z[j]) % n
            if t == 0:
                w = 1.0
                nonzero = False
                for j in range(d):
                    if k[j] != 0:
                        nonzero = True
                        w *= gsq[j] * _recip_pow(float(k[j]), two_alpha)
                if nonzero:
                    s += w
            j = d - 1
            while j >= 0 and k[j] == k_max:
                k[j] = -k_max
                j -= 1
            if j < 0:
                break
            k[j] += 1
        return s

    def dual_box_sum_numba(
        z: np.ndarray, n: int, k_max: int, gsq: np.ndarray, two_alpha: float
    ) -> float:
        d = len(z)
        zi = [int(v) for v in z]
        g = np.asarray(gsq, dtype=np.float64)
        if d == 1:
            return float(_dual_sum_1d(n, k_max, g[0], two_alpha))
        inv_last = pow(zi[-1], n - 2, n)
        if d == 2:
            return float(
                _dual_sum_2d(zi[0], zi[1], inv_last, n, k_max, g[0], g[1], two_alpha)
            )
        if d == 3:
            return float(
                _dual_sum_3d(
                    zi[0], zi[1], zi[2], inv_last, n, k_max, g[0], g[1], g[2],
                    two_alpha,
                )
            )
        return float(
            _dual_sum_box(
                np.asarray(zi, dtype=np.int64), n, k_max, g, two_alpha
            )
        )

else:
    weighted_product_mean_numba = None
    cbc_scan_numba = None
    dual_box_sum_numba = None


if USING_NUMBA:
    weighted_product_mean = weighted_product_mean_numba
    cbc_scan = cbc_scan_numba
    dual_box_sum = dual_box_sum_numba
else:
    weighted_product_mean = weighted_product_mean_numpy
    cbc_scan = cbc_scan_numpy
    dual_box_sum = dual_box_sum_numpy
