"""Integer structure tables shared by both kernel backends.

Everything here is derived once from the exact exterior-algebra tables and
exposed as small numpy arrays, so the hot loops never touch Python-level
algebra.
"""

from __future__ import annotations

import numpy as np

from ..exterior import BASIS, DIM, DIMS, SLOT, merge_sign

N2, N3, N4 = DIMS[2], DIMS[3], DIMS[4]


def _build_vector_wedge3():
    """(i, slot4) -> slot3 of the trivector coordinate feeding e_i ^ (.), or -1.

    The 4-form coordinate J of e_i ^ omega is sign * omega[J \\ i] when
    i in J; the sign table rides along for odd-characteristic use.
    """
    src = np.full((DIM, N4), -1, dtype=np.int64)
    sgn = np.zeros((DIM, N4), dtype=np.int64)
    for i in range(DIM):
        for j4, J in enumerate(BASIS[4]):
            if i not in J:
                continue
            rest = tuple(x for x in J if x != i)
            src[i, j4] = SLOT[3][rest]
            sgn[i, j4] = merge_sign((i,), rest)
    return src, sgn


VEC_WEDGE3_SRC, VEC_WEDGE3_SGN = _build_vector_wedge3()


def _build_fiber_rows():
    """(pair_slot, k) -> (slot3 of {k} u pair, sign) for rows of v ^ /\\^2 W."""
    tgt = np.full((N2, DIM), -1, dtype=np.int64)
    sgn = np.zeros((N2, DIM), dtype=np.int64)
    for p2, pair in enumerate(BASIS[2]):
        for k in range(DIM):
            if k in pair:
                continue
            tgt[p2, k] = SLOT[3][tuple(sorted((k,) + pair))]
            sgn[p2, k] = merge_sign((k,), pair)
    return tgt, sgn


FIBER_TGT, FIBER_SGN = _build_fiber_rows()


def divisor_kernel_matrices(tri: np.ndarray, p: int) -> np.ndarray:
    """Batch of 15x6 matrices of v |-> v ^ omega for trivector rows (N, 20).

    Row J, column i of matrix n is the slot-J coordinate of e_i ^ tri[n].
    """
    tri = np.asarray(tri, dtype=np.int64)
    n = tri.shape[0]
    out = np.zeros((n, N4, DIM), dtype=np.int64)
    for i in range(DIM):
        cols = VEC_WEDGE3_SRC[i]
        mask = cols >= 0
        vals = tri[:, cols[mask]] * VEC_WEDGE3_SGN[i, mask][None, :]
        out[:, mask, i] = vals
    return np.mod(out, p)


def fiber_rows_batch(points: np.ndarray, p: int) -> np.ndarray:
    """Batch of 15x20 row matrices spanning v ^ /\\^2 W for points (N, 6)."""
    pts = np.asarray(points, dtype=np.int64)
    n = pts.shape[0]
    out = np.zeros((n, N2, N3), dtype=np.int64)
    for k in range(DIM):
        tgt = FIBER_TGT[:, k]
        mask = tgt >= 0
        rows = np.nonzero(mask)[0]
        out[:, rows, tgt[mask]] = pts[:, k][:, None] * FIBER_SGN[mask.nonzero()[0], k][None, :]
    return np.mod(out, p)


def inverse_table(p: int) -> np.ndarray:
    """Modular inverses 0..p-1 (index 0 unused)."""
    inv = np.zeros(p, dtype=np.int64)
    if p > 1:
        inv[1] = 1
    for a in range(2, p):
        # p = (p // a) * a + p % a  =>  inv[a] = -(p // a) * inv[p % a]
        inv[a] = (-(p // a) * inv[p % a]) % p
    return inv


def f2_divisor_sources() -> np.ndarray:
    """The (6, 15) source-slot table used by the F_2 orbit census."""
    return VEC_WEDGE3_SRC.copy()
