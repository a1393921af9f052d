"""Batched finite-field kernels with a jitted and a pure-numpy backend.

The hot loops of this package are exhaustive censuses and
evaluation-grid determinants over small prime fields: integer matrix
elimination mod p and bit-packed F_2 scans.  Both backends compute
identical integers; the jitted one is simply faster.

Selection: the environment variable ``EPWFORGE_BACKEND`` set to ``numba``
or ``numpy`` pins the backend at import time (default: numba when
importable, else numpy).  ``set_backend`` re-pins at runtime, which the
benchmark uses to time both sides.
"""

from __future__ import annotations

import os

from . import numpy_backend
from .tables import divisor_kernel_matrices, fiber_rows_batch, inverse_table

_BACKENDS = {"numpy": numpy_backend}
try:  # pragma: no cover - exercised implicitly
    from . import numba_backend

    _BACKENDS["numba"] = numba_backend
except ImportError:  # pragma: no cover
    numba_backend = None

_active = None


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; have {sorted(_BACKENDS)}")
    _active = name


def active_backend() -> str:
    return _active


def _backend():
    return _BACKENDS[_active]


_env = os.environ.get("EPWFORGE_BACKEND", "").strip().lower()
if _env:
    set_backend(_env)
else:
    set_backend("numba" if "numba" in _BACKENDS else "numpy")


def rank_batch(mats, p: int):
    """Ranks over F_p of a batch of integer matrices (N, r, c)."""
    return _backend().rank_batch(mats, p)


def det_batch(mats, p: int):
    """Determinants over F_p of a batch of square matrices (N, n, n)."""
    return _backend().det_batch(mats, p)


def f2_classify_all():
    """Divisor-kernel dims and dim-1 kernel masks for all 2^20 - 1 F_2 trivectors."""
    return _backend().f2_classify_all()


def f2_quadform(tvals, qrows):
    """Upper-triangular F_2 quadratic form on packed 20-bit coordinate words."""
    return _backend().f2_quadform(tvals, qrows)


def warmup() -> None:
    """Trigger jit compilation outside of timed sections."""
    import numpy as np

    b = _backend()
    m = np.arange(8, dtype=np.int64).reshape(1, 2, 4) % 3
    b.rank_batch(m, 3)
    s = np.arange(4, dtype=np.int64).reshape(1, 2, 2) % 3
    b.det_batch(s, 3)
    b.f2_quadform(np.array([5], dtype=np.int64), np.zeros(20, dtype=np.int64))


__all__ = [
    "active_backend",
    "available_backends",
    "det_batch",
    "divisor_kernel_matrices",
    "f2_classify_all",
    "f2_quadform",
    "fiber_rows_batch",
    "inverse_table",
    "rank_batch",
    "set_backend",
    "warmup",
]
