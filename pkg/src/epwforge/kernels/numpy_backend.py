"""Pure-numpy implementations of the batched mod-p and F_2 kernels.

These are the fallback twins of the jitted kernels in
:mod:`epwforge.kernels.numba_backend`; both compute exactly the same
integers.  Batches are eliminated column by column with whole-batch
vectorized row operations.
"""

from __future__ import annotations

import numpy as np

from .tables import f2_divisor_sources, inverse_table

_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint32)
    return _POP16[x & 0xFFFF] + _POP16[x >> 16]


def rank_batch(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a batch of integer matrices over F_p.  Input is consumed."""
    mats = np.mod(np.ascontiguousarray(mats, dtype=np.int64), p)
    inv = inverse_table(p)
    n, r, c = mats.shape
    rk = np.zeros(n, dtype=np.int64)
    rows = np.arange(r)
    for col in range(c):
        cand = (mats[:, :, col] != 0) & (rows[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        an = np.nonzero(has)[0]
        pr = cand.argmax(axis=1)[an]
        dr = rk[an]
        pivrows = mats[an, pr, :].copy()
        mats[an, pr, :] = mats[an, dr, :]
        prow = pivrows * inv[pivrows[:, col]][:, None] % p
        mats[an, dr, :] = prow
        fac = mats[an, :, col].copy()
        fac[np.arange(len(an)), dr] = 0
        mats[an] = (mats[an] - fac[:, :, None] * prow[:, None, :]) % p
        rk[an] = dr + 1
    return rk


def det_batch(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants of square matrices over F_p.  Input is consumed."""
    mats = np.mod(np.ascontiguousarray(mats, dtype=np.int64), p)
    inv = inverse_table(p)
    n, r, c = mats.shape
    if r != c:
        raise ValueError("square matrices required")
    det = np.ones(n, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    rows = np.arange(r)
    for col in range(c):
        cand = (mats[:, :, col] != 0) & (rows[None, :] >= col)
        has = cand.any(axis=1)
        det[alive & ~has] = 0
        alive &= has
        if not alive.any():
            break
        an = np.nonzero(alive)[0]
        pr = cand.argmax(axis=1)[an]
        swap = pr != col
        pivrows = mats[an, pr, :].copy()
        mats[an, pr, :] = mats[an, col, :]
        mats[an, col, :] = pivrows
        det[an[swap]] = (-det[an[swap]]) % p
        pv = pivrows[:, col]
        det[an] = det[an] * pv % p
        prow = pivrows * inv[pv][:, None] % p
        mats[an, col, :] = prow
        fac = mats[an, :, col].copy()
        fac[:, : col + 1] = 0
        mats[an] = (mats[an] - fac[:, :, None] * prow[:, None, :]) % p
    return det


def f2_classify_all() -> tuple[np.ndarray, np.ndarray]:
    """Divisor-kernel dimension and (dim-1) kernel mask of all F_2 trivectors.

    Index t encodes the 20 trivector coordinates as bits.  dims[0] = 255.
    Rows of the 6x15 wedge matrix are held as 21-bit integers: data bits
    0..14 and identity bits 15..20 whose surviving combination is the
    kernel vector.
    """
    src = f2_divisor_sources()
    n = 1 << 20
    t = np.arange(n, dtype=np.int64)
    rows = []
    for i in range(6):
        m = np.zeros(n, dtype=np.int64)
        for j in range(15):
            s = src[i, j]
            if s < 0:
                continue
            m |= ((t >> s) & 1) << j
        rows.append(m | (1 << (15 + i)))
    used = np.zeros((6, n), dtype=bool)
    rank = np.zeros(n, dtype=np.int8)
    for col in range(15):
        pividx = np.full(n, -1, dtype=np.int8)
        for i in range(5, -1, -1):
            sel = (~used[i]) & (((rows[i] >> col) & 1) == 1)
            pividx = np.where(sel, np.int8(i), pividx)
        found = pividx >= 0
        rank += found
        pivrow = np.zeros(n, dtype=np.int64)
        for i in range(6):
            m = pividx == i
            pivrow = np.where(m, rows[i], pivrow)
            used[i] |= m
        for i in range(6):
            hasbit = ((rows[i] >> col) & 1).astype(bool)
            elim = found & hasbit & (pividx != i)
            rows[i] = np.where(elim, rows[i] ^ pivrow, rows[i])
    dims = (6 - rank).astype(np.uint8)
    kmask = np.zeros(n, dtype=np.uint8)
    for i in range(6):
        free = ~used[i] & (dims == 1)
        kmask[free] = (rows[i][free] >> 15).astype(np.uint8)
    dims[0] = 255
    return dims, kmask


def f2_quadform(tvals: np.ndarray, qrows: np.ndarray) -> np.ndarray:
    """Evaluate an upper-triangular F_2 quadratic form at packed 20-bit points."""
    t = np.ascontiguousarray(tvals, dtype=np.int64)
    acc = np.zeros(t.shape, dtype=np.uint8)
    for a in range(20):
        row = int(qrows[a])
        if row == 0:
            continue
        bit = ((t >> a) & 1).astype(np.uint8)
        par = (_popcount(t & row) & 1).astype(np.uint8)
        acc ^= bit & par
    return acc
