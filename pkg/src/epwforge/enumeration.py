"""Deterministic point enumeration over small prime fields.

Projective points are always listed by their canonical representatives
(first nonzero coordinate 1), ordered by the position of that pivot and
then lexicographically in the remaining coordinates, so every census and
scan in the package is reproducible byte for byte.  Work is chunked; with
``EPWFORGE_THREADS`` > 1 chunks of counting scans run on a thread pool and
are merged in submission order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import kernels
from .kernels import divisor_kernel_matrices, fiber_rows_batch

_CHUNK = 65536


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("EPWFORGE_THREADS", "1")))
    except ValueError:
        return 1


def projective_reps(p: int, length: int) -> np.ndarray:
    """Canonical representatives of P^(length-1)(F_p), shape (N, length)."""
    blocks = []
    for lead in range(length):
        m = length - lead - 1
        count = p**m
        arr = np.zeros((count, length), dtype=np.int64)
        arr[:, lead] = 1
        if m:
            idx = np.arange(count, dtype=np.int64)
            for pos in range(m):
                arr[:, lead + 1 + pos] = (idx // p ** (m - 1 - pos)) % p
        blocks.append(arr)
    return np.concatenate(blocks, axis=0)


def projective_count(p: int, length: int) -> int:
    return (p**length - 1) // (p - 1)


def _chunked(n: int, size: int | None = None):
    size = size or _CHUNK
    for lo in range(0, n, size):
        yield lo, min(lo + size, n)


def _map_chunks(fn, n: int):
    """Run fn(lo, hi) over chunks; deterministic in-order merge."""
    spans = list(_chunked(n))
    workers = thread_count()
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda s: fn(*s), spans))
    return [fn(lo, hi) for lo, hi in spans]


def divisor_kernel_dims(trivectors: np.ndarray, p: int) -> np.ndarray:
    """Kernel dimension of v -> v ^ omega for each trivector row (N, 20)."""
    tri = np.asarray(trivectors, dtype=np.int64)

    def work(lo, hi):
        mats = divisor_kernel_matrices(tri[lo:hi], p)
        return 6 - kernels.rank_batch(mats, p)

    return np.concatenate(_map_chunks(work, tri.shape[0]))


def intersection_dims_with_fibers(basis_rows: np.ndarray, points: np.ndarray, p: int) -> np.ndarray:
    """dim(A cap F_v) for each point row v, A given by 10 basis rows (10, 20)."""
    A = np.mod(np.asarray(basis_rows, dtype=np.int64), p)
    pts = np.asarray(points, dtype=np.int64)

    def work(lo, hi):
        fib = fiber_rows_batch(pts[lo:hi], p)
        stack = np.concatenate(
            [np.broadcast_to(A, (hi - lo, 10, 20)).copy(), fib], axis=1
        )
        # dim(A) + dim(F_v) - dim(A + F_v); fibers have rank 10 for v != 0
        return 20 - kernels.rank_batch(stack, p)

    return np.concatenate(_map_chunks(work, pts.shape[0]))


def eval_poly_batch(exps: np.ndarray, coefs: np.ndarray, points: np.ndarray, p: int) -> np.ndarray:
    """Evaluate a polynomial (exponent rows, coefficients) at many points mod p."""
    pts = np.mod(np.asarray(points, dtype=np.int64), p)
    n = pts.shape[0]
    t = exps.shape[0]
    if t == 0:
        return np.zeros(n, dtype=np.int64)
    maxe = int(exps.max())
    acc = np.ones((n, t), dtype=np.int64)
    for v in range(pts.shape[1]):
        powv = np.ones((n, maxe + 1), dtype=np.int64)
        for k in range(1, maxe + 1):
            powv[:, k] = powv[:, k - 1] * pts[:, v] % p
        acc = acc * powv[:, exps[:, v]] % p
    return acc @ np.mod(coefs, p) % p


def f2_orbit_census() -> dict[int, int]:
    """Counts of divisor-kernel dimensions over all nonzero F_2 trivectors."""
    dims, _ = kernels.f2_classify_all()
    vals, counts = np.unique(dims[1:], return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def f2_classification() -> tuple[np.ndarray, np.ndarray]:
    """dims and kernel masks for all packed trivectors (index = bit pattern)."""
    return kernels.f2_classify_all()


def f2_quadform_masks(v_idx: int, gamma_idx: int) -> np.ndarray:
    """Upper-triangular bit rows of t -> <iota_v(t) ^ t ^ gamma> over F_2.

    Built by polarizing the exact quadric on basis vectors and pairs; row a
    holds the coefficients of t_a t_b for b >= a.
    """
    from .exterior import DualVector, KVector
    from .fields import GF
    from .orbits import quadric_Q

    f2 = GF(2)
    v = DualVector.basis(f2, v_idx)
    gamma = KVector.basis(f2, (gamma_idx,))

    def q(mask: int) -> int:
        coeffs = [(mask >> s) & 1 for s in range(20)]
        return int(quadric_Q(v, gamma, KVector(f2, 3, coeffs))) % 2

    diag = [q(1 << a) for a in range(20)]
    rows = np.zeros(20, dtype=np.int64)
    for a in range(20):
        if diag[a]:
            rows[a] |= 1 << a
        for b in range(a + 1, 20):
            cross = (q((1 << a) | (1 << b)) - diag[a] - diag[b]) % 2
            if cross:
                rows[a] |= 1 << b
    return rows


def f2_quadric_union_check(v_idx: int = 0, gamma_idx: int = 5) -> dict:
    """Exhaustively verify, on every pure divisible F_2 trivector, that the
    quadric t -> <iota_v(t) ^ t ^ gamma> factors as v(alpha) * <alpha ^ beta
    ^ beta ^ gamma>, so its zero locus on the orbit is the union of the two
    fibration pullbacks of the hyperplanes cut by v and gamma."""
    dims, kmask = kernels.f2_classify_all()
    pure = np.nonzero(dims == 1)[0].astype(np.int64)
    km = kmask[pure]
    qv = kernels.f2_quadform(pure, f2_quadform_masks(v_idx, gamma_idx))
    valpha = ((km >> v_idx) & 1).astype(np.uint8)
    bvals = np.zeros((6, pure.shape[0]), dtype=np.uint8)
    for w in range(6):
        bvals[w] = kernels.f2_quadform(pure, f2_quadform_masks(w, gamma_idx))
    lowbit = np.zeros(64, dtype=np.int64)
    for m in range(1, 64):
        lowbit[m] = (m & -m).bit_length() - 1
    pivot = lowbit[km]
    bsel = bvals[pivot, np.arange(pure.shape[0])]
    product_ok = bool((qv == (valpha & bsel)).all())
    union_ok = bool(((qv == 0) == ((valpha == 0) | (bsel == 0))).all())
    # In characteristic 2 the second fibration's 5-form alpha^beta^beta is
    # 2-torsion, so both sides vanish on the whole orbit; the content of the
    # exhaustive check is that the quadric really is zero at every orbit
    # point while remaining nonzero off the orbit closure.
    outside = np.nonzero(dims == 0)[0].astype(np.int64)
    q_outside = kernels.f2_quadform(outside, f2_quadform_masks(v_idx, gamma_idx))
    return {
        "points": int(pure.shape[0]),
        "factorization_ok": product_ok,
        "union_ok": union_ok,
        "zero_count": int((qv == 0).sum()),
        "nonzero_off_orbit": int((q_outside != 0).sum()),
    }
