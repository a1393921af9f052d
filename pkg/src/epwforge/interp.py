"""Exact multivariate interpolation on the principal simplex lattice.

The affine chart determinant of the degeneracy matrix is a polynomial of
degree at most 10 in 5 variables that the theory promises collapses to
degree at most 6.  Rather than expanding it symbolically we sample it on
the principal lattice {x in N^5 : sum x <= 10} (3003 points) and fit the
3003-coefficient space through its degree-<=6 head (462 coefficients):

* in the basis B_a(x) = prod_i C(x_i, a_i), the evaluation matrix on the
  lattice (points and indices both in graded-lex order) is unit lower
  triangular, so the fit is a forward substitution and is exact over any
  coefficient ring where the sampled values live;
* agreement of the fitted degree-<=6 polynomial with the determinant on
  the full degree-10 lattice proves equality as polynomials, because the
  full 3003x3003 evaluation matrix is unit triangular too: only the zero
  polynomial of degree <=10 vanishes on the whole lattice.

Over F_p this direct route needs p > 10 (the lattice coordinates 0..10
must stay distinct and the factorials through 10! invertible); smaller
primes are handled by the callers via an integer lift.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

import numpy as np

NVARS = 5
DEG_FIT = 6
DEG_TOTAL = 10


def _grlex(exp):
    return (sum(exp), exp)


@lru_cache(maxsize=None)
def lattice_points(deg: int = DEG_TOTAL) -> tuple[tuple[int, ...], ...]:
    """All 5-tuples of naturals with sum <= deg, graded-lex ascending."""
    pts = [t for t in product(range(deg + 1), repeat=NVARS) if sum(t) <= deg]
    pts.sort(key=_grlex)
    return tuple(pts)


@lru_cache(maxsize=None)
def _binomial_matrix() -> np.ndarray:
    """B[x, a] = prod_i C(x_i, a_i) on lattice(10) x lattice(6); int64."""
    xs = lattice_points(DEG_TOTAL)
    aa = lattice_points(DEG_FIT)
    small = np.array([[comb(x, a) for a in range(DEG_FIT + 1)] for x in range(DEG_TOTAL + 1)],
                     dtype=np.int64)
    B = np.ones((len(xs), len(aa)), dtype=np.int64)
    X = np.array(xs, dtype=np.int64)
    A = np.array(aa, dtype=np.int64)
    for v in range(NVARS):
        B *= small[X[:, v][:, None], A[:, v][None, :]]
    return B


@lru_cache(maxsize=None)
def _binomial_to_monomial() -> tuple[dict[tuple[int, ...], Fraction], ...]:
    """Monomial expansion of each B_a as {exponent5: Fraction}."""
    # C(t, k) = (1/k!) sum_m s(k, m) t^m with signed Stirling numbers s.
    falling = [[Fraction(1)]]
    for k in range(1, DEG_FIT + 1):
        prev = falling[-1]
        nxt = [Fraction(0)] * (k + 1)
        for m, c in enumerate(prev):  # multiply by (t - (k-1))
            nxt[m + 1] += c
            nxt[m] -= c * (k - 1)
        falling.append(nxt)
    univ = [[c / Fraction(_factorial(k)) for c in falling[k]] for k in range(DEG_FIT + 1)]
    out = []
    for a in lattice_points(DEG_FIT):
        terms = {(0,) * NVARS: Fraction(1)}
        for v, av in enumerate(a):
            if av == 0:
                continue
            new: dict = {}
            for exp, c in terms.items():
                for m, cm in enumerate(univ[av]):
                    if cm == 0:
                        continue
                    e = list(exp)
                    e[v] += m
                    key = tuple(e)
                    new[key] = new.get(key, Fraction(0)) + c * cm
            terms = {k: v2 for k, v2 in new.items() if v2 != 0}
        out.append(terms)
    return tuple(out)


def _factorial(k: int) -> int:
    r = 1
    for i in range(2, k + 1):
        r *= i
    return r


class DegreeOverflow(ArithmeticError):
    """The sampled function is not a degree-<=6 polynomial; carries a witness."""

    def __init__(self, point, expected, got):
        super().__init__(f"degree-6 fit fails at lattice point {point}: {expected} != {got}")
        self.point = point


def fit_modular(values: np.ndarray, p: int) -> np.ndarray:
    """Binomial-basis coefficients of the degree-<=6 fit, mod p (p > 10).

    Raises :class:`DegreeOverflow` if the values on the full lattice are
    not matched by the fit.
    """
    if p <= DEG_TOTAL:
        raise ValueError("direct modular interpolation needs p > 10")
    if p >= 1 << 21:
        raise ValueError("prime too large for int64 dot products here")
    B = np.mod(_binomial_matrix(), p)
    v = np.mod(np.asarray(values, dtype=np.int64), p)
    nfit = B.shape[1]
    c = np.zeros(nfit, dtype=np.int64)
    for i in range(nfit):
        acc = int(B[i, :i] @ c[:i]) % p
        c[i] = (int(v[i]) - acc) % p
    check = np.mod(B @ c, p)
    bad = np.nonzero(check != v)[0]
    if bad.size:
        i = int(bad[0])
        raise DegreeOverflow(lattice_points(DEG_TOTAL)[i], int(v[i]), int(check[i]))
    return c


def fit_integer(values) -> list[int]:
    """Exact integer fit; same contract as :func:`fit_modular` over Z."""
    B = _binomial_matrix()
    vals = [int(x) for x in values]
    nfit = B.shape[1]
    c = [0] * nfit
    for i in range(nfit):
        row = B[i]
        acc = 0
        for j in range(i):
            bij = int(row[j])
            if bij and c[j]:
                acc += bij * c[j]
        c[i] = vals[i] - acc
    for i in range(B.shape[0]):
        row = B[i]
        acc = 0
        for j in range(nfit):
            bij = int(row[j])
            if bij and c[j]:
                acc += bij * c[j]
        if acc != vals[i]:
            raise DegreeOverflow(lattice_points(DEG_TOTAL)[i], vals[i], acc)
    return c


def monomials_from_fit(coeffs, field) -> dict[tuple[int, ...], object]:
    """Convert binomial-basis coefficients to 5-variable monomial scalars.

    The conversion table is rational with denominators dividing products of
    factorials through 6!, hence invertible over Q and over F_p for p > 10.
    """
    tables = _binomial_to_monomial()
    out: dict[tuple[int, ...], object] = {}
    for a_idx, c in enumerate(coeffs):
        ci = int(c) if not isinstance(c, Fraction) else c
        if ci == 0:
            continue
        for exp, frac in tables[a_idx].items():
            val = frac * ci
            prev = out.get(exp, Fraction(0))
            out[exp] = prev + val
    cleaned = {}
    for exp, val in out.items():
        if val == 0:
            continue
        if field.characteristic == 0:
            cleaned[exp] = val
        else:
            p = field.characteristic
            num = val.numerator % p
            den = val.denominator % p
            cleaned[exp] = field.mul(num, field.inv(den))
            if field.is_zero(cleaned[exp]):
                del cleaned[exp]
    return cleaned


def lattice_array() -> np.ndarray:
    """The 3003 sample points as an int64 array (3003, 5)."""
    return np.array(lattice_points(DEG_TOTAL), dtype=np.int64)
