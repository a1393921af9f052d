"""The lattice fit must recover exactly the polynomials it claims to."""

import numpy as np
import pytest

from epwforge.fields import GF, QQ
from epwforge.interp import (
    DegreeOverflow,
    fit_integer,
    fit_modular,
    lattice_array,
    lattice_points,
    monomials_from_fit,
)


def _eval5(terms, pt):
    acc = 0
    for exp, c in terms.items():
        v = c
        for x, e in zip(pt, exp):
            v *= x**e
        acc += v
    return acc


def test_lattice_shape_and_order():
    pts = lattice_points(10)
    assert len(pts) == 3003
    assert len(lattice_points(6)) == 462
    assert pts[:462] == lattice_points(6)  # graded order puts low degrees first
    degs = [sum(p) for p in pts]
    assert degs == sorted(degs)


@pytest.mark.parametrize("p", [13, 101, 10007])
def test_modular_fit_recovers_random_degree6(p):
    rng = np.random.default_rng(p)
    monos = lattice_points(6)
    terms = {}
    for _ in range(40):
        m = monos[int(rng.integers(0, len(monos)))]
        terms[m] = int(rng.integers(1, p))
    vals = np.array([_eval5(terms, pt) % p for pt in lattice_points(10)], dtype=np.int64)
    coeffs = fit_modular(vals, p)
    got = monomials_from_fit(coeffs, GF(p))
    want = {m: c % p for m, c in terms.items() if c % p}
    assert got == want


def test_integer_fit_recovers_and_rejects_overflow():
    rng = np.random.default_rng(4)
    monos = lattice_points(6)
    terms = {}
    for _ in range(30):
        m = monos[int(rng.integers(0, len(monos)))]
        terms[m] = int(rng.integers(-50, 50))
    vals = [_eval5(terms, pt) for pt in lattice_points(10)]
    coeffs = fit_integer(vals)
    got = monomials_from_fit(coeffs, QQ)
    want = {m: c for m, c in terms.items() if c}
    assert {k: int(v) for k, v in got.items()} == want
    # a degree-7 ingredient must be caught by the verification pass
    deg7 = dict(terms)
    deg7[(7, 0, 0, 0, 0)] = 1
    vals7 = [_eval5(deg7, pt) for pt in lattice_points(10)]
    with pytest.raises(DegreeOverflow):
        fit_integer(vals7)


def test_modular_fit_rejects_degree7():
    p = 10007
    vals = np.array([pt[0] ** 7 % p for pt in lattice_points(10)], dtype=np.int64)
    with pytest.raises(DegreeOverflow):
        fit_modular(vals, p)


def test_lattice_array_matches_points():
    arr = lattice_array()
    assert arr.shape == (3003, 5)
    assert tuple(arr[0]) == (0, 0, 0, 0, 0)
