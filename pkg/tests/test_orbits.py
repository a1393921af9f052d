"""Orbit strata, fibrations, tangent geometry; oracles are brute counts."""

import numpy as np
import pytest

from epwforge.enumeration import projective_reps
from epwforge.exterior import BASIS, DualVector, KVector, symplectic_form, wedge
from epwforge.fields import GF, QQ
from epwforge.linalg import Subspace
from epwforge.orbits import (
    OrbitError,
    OrbitLabel,
    classify,
    divisor_kernel,
    fiber_F,
    fiber_Fprime,
    pi1,
    pi2,
    plucker_point,
    quadric_Q,
    sigma_hyperplane,
    tangent_G,
    tangent_O2,
)


def e(field, *idx):
    return KVector.basis(field, tuple(i - 1 for i in idx))


def _random_pure(field, rng):
    while True:
        a = KVector(field, 1, [field.rand(rng) for _ in range(6)])
        b = KVector(field, 2, [field.rand(rng) for _ in range(15)])
        t = wedge(a, b)
        if not t.is_zero() and classify(t) is OrbitLabel.PURE_O2:
            return a, b, t


def test_divisor_kernel_examples():
    f = QQ
    assert divisor_kernel(e(f, 1, 2, 3)).dim == 3
    assert divisor_kernel(e(f, 1, 2, 3) + e(f, 1, 4, 5)).dim == 1
    assert divisor_kernel(e(f, 1, 2, 3) + e(f, 4, 5, 6)).dim == 0
    assert divisor_kernel(e(f, 1, 2, 3)) == Subspace.from_vectors(
        [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]], f, 6
    )


def test_classify_labels():
    f = QQ
    assert classify(e(f, 1, 2, 3)) is OrbitLabel.GRASSMANNIAN
    two_form = KVector.basis(f, (1, 2)) + KVector.basis(f, (3, 4))  # e23 + e45
    assert classify(wedge(e(f, 1), two_form)) is OrbitLabel.PURE_O2
    assert classify(e(f, 1, 2, 3) + e(f, 4, 5, 6)) is OrbitLabel.OUTSIDE_O2
    with pytest.raises(OrbitError):
        classify(KVector.zero(f, 3))


def test_pi1_examples_and_roundtrip():
    f = QQ
    t = e(f, 1, 2, 3) + e(f, 1, 4, 5)
    assert pi1(t).coeffs == (1, 0, 0, 0, 0, 0)
    assert pi1(t.scale(7)).coeffs == (1, 0, 0, 0, 0, 0)
    with pytest.raises(OrbitError):
        pi1(e(f, 1, 2, 3))  # undefined on the Grassmannian stratum
    f7 = GF(7)
    rng = np.random.default_rng(1)
    hits = 0
    while hits < 1000:
        a, b, t = _random_pure(f7, rng)
        expect = KVector(f7, 1, [f7.mul(f7.inv(next(x for x in a.coeffs if x)), c) for c in a.coeffs])
        assert pi1(t) == expect
        hits += 1


def test_pi2_example_and_witness_independence():
    f = QQ
    t = e(f, 1, 2, 3) + e(f, 1, 4, 5)  # = e1 ^ (e23 + e45)
    assert pi2(t).coeffs == (0, 0, 0, 0, 0, 1)
    # beta -> beta + alpha ^ gamma leaves the output fixed
    rng = np.random.default_rng(9)
    a = e(f, 1)
    b = KVector(f, 2, [f.rand(rng) for _ in range(15)])
    t0 = wedge(a, b)
    assert classify(t0) is OrbitLabel.PURE_O2
    base = pi2(t0)
    for _ in range(100):
        g = KVector(f, 1, [f.rand(rng) for _ in range(6)])
        t1 = wedge(a, b + wedge(a, g))
        assert t1 == t0  # alpha ^ alpha ^ gamma = 0
        assert pi2(t1) == base


def test_trivector_in_cube_of_pi2_kernel():
    f7 = GF(7)
    rng = np.random.default_rng(12)
    for _ in range(1000):
        _, _, t = _random_pure(f7, rng)
        w = pi2(t)
        kb = w.kernel_basis()
        cube = Subspace(
            f7,
            20,
            [
                wedge(wedge(KVector(f7, 1, kb[i]), KVector(f7, 1, kb[j])), KVector(f7, 1, kb[k])).coeffs
                for i in range(5)
                for j in range(i + 1, 5)
                for k in range(j + 1, 5)
            ],
        )
        assert cube.contains_vector(t.coeffs)


def test_fiber_F_shape_and_isotropy():
    f = QQ
    Fv = fiber_F(e(f, 1))
    assert Fv.dim == 10
    expected = {tuple(sorted((0,) + p)) for p in BASIS[2] if 0 not in p}
    assert {BASIS[3][r.index(1)] for r in ([list(x) for x in Fv.rows])} == expected
    rng = np.random.default_rng(3)
    f7 = GF(7)
    for _ in range(50):
        v = KVector(f7, 1, [f7.rand(rng) for _ in range(6)])
        if v.is_zero():
            continue
        rows = fiber_F(v).rows
        for i in range(len(rows)):
            for j in range(i, len(rows)):
                assert symplectic_form(KVector(f7, 3, rows[i]), KVector(f7, 3, rows[j])) == 0


def test_fiber_intersections():
    # F_v cap F_w = v ^ w ^ W for independent v, w: dimension 4 with an
    # explicit spanning oracle
    f = QQ
    rng = np.random.default_rng(7)
    from epwforge.linalg import rank

    for _ in range(25):
        v = KVector(f, 1, [f.rand(rng) for _ in range(6)])
        w = KVector(f, 1, [f.rand(rng) for _ in range(6)])
        if rank([list(v.coeffs), list(w.coeffs)], f) != 2:
            continue
        cap = fiber_F(v).intersection(fiber_F(w))
        vw = wedge(v, w)
        oracle = Subspace.from_vectors(
            [wedge(vw, KVector.basis(f, (i,))).coeffs for i in range(6)], f, 20
        )
        assert cap.dim == 4 and cap == oracle
    assert fiber_F(e(f, 1)).intersection(fiber_Fprime(DualVector.basis(f, 5))).dim == 6


def test_fiber_Fprime_and_pi2_roundtrip():
    f7 = GF(7)
    w = DualVector.basis(f7, 5)
    Fw = fiber_Fprime(w)
    assert Fw.dim == 10
    # explicitly: all degree-3 coordinates avoiding index 6
    expect = Subspace.from_vectors(
        [KVector.basis(f7, idx).coeffs for idx in BASIS[3] if 5 not in idx], f7, 20
    )
    assert Fw == expect
    rng = np.random.default_rng(30)
    hits = 0
    while hits < 100:
        coeffs = [f7.rand(rng) for _ in range(10)]
        vec = [f7.zero()] * 20
        for c, row in zip(coeffs, Fw.rows):
            vec = [f7.add(x, f7.mul(c, y)) for x, y in zip(vec, row)]
        t = KVector(f7, 3, vec)
        if t.is_zero() or classify(t) is not OrbitLabel.PURE_O2:
            continue
        assert pi2(t).coeffs == w.coeffs
        hits += 1


def test_pi2_of_fiber_lands_in_dual_hyperplane():
    # every pure element of F_v maps into the hyperplane of P(W*) dual to v
    f7 = GF(7)
    rng = np.random.default_rng(31)
    hits = 0
    while hits < 100:
        v = KVector(f7, 1, [f7.rand(rng) for _ in range(6)])
        if v.is_zero():
            continue
        g = KVector(f7, 2, [f7.rand(rng) for _ in range(15)])
        t = wedge(v, g)
        if t.is_zero() or classify(t) is not OrbitLabel.PURE_O2:
            continue
        w = pi2(t)
        assert w.apply(v) == 0
        hits += 1


def test_tangent_and_sigma_hyperplane():
    f = QQ
    p = e(f, 1, 2, 3) + e(f, 1, 4, 5)
    T = tangent_O2(p)
    assert T.dim == 15
    assert T.contains(fiber_F(pi1(p)))
    assert T.contains(fiber_Fprime(pi2(p)))
    S = sigma_hyperplane(p)
    assert S.dim == 19
    assert S.contains_vector(p.coeffs)
    assert S.contains(fiber_F(pi1(p)))
    assert S.contains(fiber_Fprime(pi2(p)))
    assert S.intersection(T).dim == 14
    rng = np.random.default_rng(44)
    f7 = GF(7)
    for _ in range(25):
        a, b, t = _random_pure(f7, rng)
        T = tangent_O2(t)
        S = sigma_hyperplane(t)
        assert T.dim == 15 and S.intersection(T).dim == 14
        # W ^ beta is not contained in the orthogonal hyperplane
        pis = [wedge(KVector.basis(f7, (i,)), b).coeffs for i in range(6)]
        assert any(not S.contains_vector(r) for r in pis)


def test_tangent_space_independent_of_witness():
    # the span F + F' + W^beta does not depend on the chosen 2-form beta:
    # replacing beta by beta + alpha^gamma moves W^beta inside F + W^beta
    f = QQ
    rng = np.random.default_rng(55)
    a = e(f, 2)
    b = KVector(f, 2, [f.rand(rng) for _ in range(15)])
    t = wedge(a, b)
    assert classify(t) is OrbitLabel.PURE_O2
    T = tangent_O2(t)
    for _ in range(10):
        g = KVector(f, 1, [f.rand(rng) for _ in range(6)])
        b2 = b + wedge(a, g)
        rows = list(fiber_F(pi1(t)).rows) + list(fiber_Fprime(pi2(t)).rows)
        rows += [wedge(KVector.basis(f, (i,)), b2).coeffs for i in range(6)]
        assert Subspace(f, 20, rows) == T


def test_quadric_examples_and_factorization():
    f = QQ
    v = DualVector.basis(f, 0)
    g6 = e(f, 6)
    assert quadric_Q(v, g6, e(f, 1, 2, 3) + e(f, 1, 4, 5)) == 2
    assert quadric_Q(v, g6, e(f, 2, 3, 4) + e(f, 2, 5, 6)) == 0
    f7 = GF(7)
    rng = np.random.default_rng(17)
    for _ in range(1000):
        v = DualVector(f7, [f7.rand(rng) for _ in range(6)])
        g = KVector(f7, 1, [f7.rand(rng) for _ in range(6)])
        a, b, t = _random_pure(f7, rng)
        lhs = quadric_Q(v, g, t)
        rhs = f7.mul(v.apply(a), wedge(wedge(t, b), g).coeffs[0])
        assert lhs == rhs


def test_tangent_G_shape_and_membership():
    f = QQ
    U = Subspace.from_vectors(
        [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]], f, 6
    )
    T = tangent_G(U)
    assert T.dim == 10
    assert T.contains_vector(e(f, 1, 2, 4).coeffs)
    assert T.contains_vector(plucker_point(U).coeffs)
    assert not T.contains_vector(e(f, 1, 4, 5).coeffs)  # meets P(U) in a point only
    with pytest.raises(ValueError):
        tangent_G(Subspace.from_vectors([[1, 0, 0, 0, 0, 0]], f, 6))


def test_decomposables_in_fiber_intersection_form_a_quadric_over_f3():
    # Inside the 6-dimensional space F_{e1} cap F'_{e6*} the decomposable
    # locus is a nondegenerate quadric; over F_3 a rank-6 hyperbolic quadric
    # in P^5 has 130 points, counted here by brute force on x1x2+x3x4+x5x6.
    f3 = GF(3)
    L = fiber_F(KVector.basis(f3, (0,))).intersection(fiber_Fprime(DualVector.basis(f3, 5)))
    assert L.dim == 6
    reps = projective_reps(3, 6)
    decomposable = 0
    for row in reps:
        vec = [f3.zero()] * 20
        for c, basis_row in zip(row, L.rows):
            if c:
                vec = [f3.add(x, f3.mul(int(c), y)) for x, y in zip(vec, basis_row)]
        t = KVector(f3, 3, vec)
        if classify(t) is OrbitLabel.GRASSMANNIAN:
            decomposable += 1
    hyperbolic = sum(
        1
        for row in reps
        if (row[0] * row[1] + row[2] * row[3] + row[4] * row[5]) % 3 == 0
    )
    assert hyperbolic == 130
    assert decomposable == hyperbolic
