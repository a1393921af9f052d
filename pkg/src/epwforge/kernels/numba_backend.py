"""Jitted twins of the numpy kernels; same integers, tighter loops.

All arithmetic stays in int64 with p < 2**30, so products fit well inside
the word and every modular reduction is exact.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .tables import f2_divisor_sources, inverse_table


@njit(cache=True, nogil=True)
def _rank_batch_jit(mats, p, inv):
    n, r, c = mats.shape
    out = np.zeros(n, dtype=np.int64)
    for m in range(n):
        a = mats[m]
        rk = 0
        for col in range(c):
            piv = -1
            for i in range(rk, r):
                if a[i, col] % p != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rk:
                for j in range(c):
                    tmp = a[piv, j]
                    a[piv, j] = a[rk, j]
                    a[rk, j] = tmp
            f = inv[a[rk, col] % p]
            for j in range(col, c):
                a[rk, j] = a[rk, j] * f % p
            for i in range(r):
                if i == rk:
                    continue
                g = a[i, col] % p
                if g:
                    for j in range(col, c):
                        a[i, j] = (a[i, j] - g * a[rk, j]) % p
            rk += 1
            if rk == r:
                break
        out[m] = rk
    return out


def rank_batch(mats: np.ndarray, p: int) -> np.ndarray:
    mats = np.mod(np.ascontiguousarray(mats, dtype=np.int64), p)
    return _rank_batch_jit(mats, p, inverse_table(p))


@njit(cache=True, nogil=True)
def _det_batch_jit(mats, p, inv):
    n, r, _ = mats.shape
    out = np.empty(n, dtype=np.int64)
    for m in range(n):
        a = mats[m]
        det = 1
        for col in range(r):
            piv = -1
            for i in range(col, r):
                if a[i, col] % p != 0:
                    piv = i
                    break
            if piv < 0:
                det = 0
                break
            if piv != col:
                det = (p - det) % p
                for j in range(r):
                    tmp = a[piv, j]
                    a[piv, j] = a[col, j]
                    a[col, j] = tmp
            pv = a[col, col] % p
            det = det * pv % p
            f = inv[pv]
            for j in range(col, r):
                a[col, j] = a[col, j] * f % p
            for i in range(col + 1, r):
                g = a[i, col] % p
                if g:
                    for j in range(col, r):
                        a[i, j] = (a[i, j] - g * a[col, j]) % p
        out[m] = det % p
    return out


def det_batch(mats: np.ndarray, p: int) -> np.ndarray:
    mats = np.mod(np.ascontiguousarray(mats, dtype=np.int64), p)
    return _det_batch_jit(mats, p, inverse_table(p))


@njit(cache=True, nogil=True)
def _f2_classify_jit(src):
    n = 1 << 20
    dims = np.empty(n, dtype=np.uint8)
    kmask = np.zeros(n, dtype=np.uint8)
    dims[0] = 255
    rows = np.empty(6, dtype=np.int64)
    for t in range(1, n):
        for i in range(6):
            m = 0
            for j in range(15):
                s = src[i, j]
                if s >= 0 and (t >> s) & 1:
                    m |= 1 << j
            rows[i] = m | (1 << (15 + i))
        rank = 0
        ker = 0
        nker = 0
        for i in range(6):
            v = rows[i]
            for k in range(i):
                pk = rows[k]
                dk = pk & 0x7FFF
                if dk:
                    low = dk & (-dk)
                    if v & low:
                        v ^= pk
            rows[i] = v
            if v & 0x7FFF:
                rank += 1
            else:
                ker = v >> 15
                nker += 1
        dims[t] = 6 - rank
        if nker == 1:
            kmask[t] = ker
    return dims, kmask


def f2_classify_all() -> tuple[np.ndarray, np.ndarray]:
    return _f2_classify_jit(f2_divisor_sources())


@njit(cache=True, nogil=True)
def _popcount64(x):
    x = x - ((x >> 1) & 0x5555555555555555)
    x = (x & 0x3333333333333333) + ((x >> 2) & 0x3333333333333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0F
    return (x * 0x0101010101010101) >> 56


@njit(cache=True, nogil=True)
def _f2_quadform_jit(tvals, qrows):
    n = tvals.shape[0]
    out = np.empty(n, dtype=np.uint8)
    for m in range(n):
        t = tvals[m]
        acc = 0
        for a in range(20):
            if (t >> a) & 1:
                acc ^= _popcount64(t & qrows[a]) & 1
        out[m] = acc
    return out


def f2_quadform(tvals: np.ndarray, qrows: np.ndarray) -> np.ndarray:
    return _f2_quadform_jit(
        np.ascontiguousarray(tvals, dtype=np.int64),
        np.ascontiguousarray(qrows, dtype=np.int64),
    )
