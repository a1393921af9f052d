"""Exterior-algebra laws, with signs cross-checked by an independent oracle."""

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epwforge.exterior import (
    BASIS,
    DIMS,
    DualVector,
    KVector,
    contract,
    grade_dual,
    pairing,
    symplectic_form,
    volume_dual,
    wedge,
)
from epwforge.fields import GF, QQ
from epwforge.linalg import rank


def bubble_sign(seq):
    """Permutation sign by bubble sort; independent of the library's tables."""
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                sign = -sign
    return sign


def e(field, *idx):
    return KVector.basis(field, tuple(i - 1 for i in idx))


def dv(field, i):
    return DualVector.basis(field, i - 1)


def test_wedge_basis_examples():
    f = QQ
    assert wedge(e(f, 1), e(f, 2, 3)) == e(f, 1, 2, 3)
    assert wedge(e(f, 2), e(f, 1, 3)) == -e(f, 1, 2, 3)
    assert wedge(e(f, 1, 2), e(f, 1, 3)).is_zero()


def test_wedge_signs_match_bubble_oracle():
    # exhaustive over all basis pairs of all grade combinations
    f = QQ
    for j in range(0, 7):
        for k in range(0, 7 - j):
            for a in combinations(range(6), j):
                for b in combinations(range(6), k):
                    w = wedge(KVector.basis(f, a), KVector.basis(f, b))
                    if set(a) & set(b):
                        assert w.is_zero()
                    else:
                        expect = bubble_sign(a + b)
                        slot = sorted(a + b)
                        got = w.coeffs[BASIS[j + k].index(tuple(slot))]
                        assert got == expect


def _random_kv(field, grade, rng):
    return KVector(field, grade, [field.rand(rng) for _ in range(DIMS[grade])])


@pytest.mark.parametrize("field", [QQ, GF(7), GF(3)])
def test_wedge_graded_anticommutativity(field):
    rng = np.random.default_rng(11)
    for j, k in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (1, 4), (2, 4)]:
        for _ in range(10):
            a, b = _random_kv(field, j, rng), _random_kv(field, k, rng)
            lhs = wedge(a, b)
            rhs = wedge(b, a)
            if (j * k) % 2:
                rhs = -rhs
            assert lhs == rhs


def test_wedge_associative_bilinear():
    f = GF(7)
    rng = np.random.default_rng(5)
    for _ in range(25):
        a, b, c = (_random_kv(f, g, rng) for g in (1, 2, 2))
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
        d = _random_kv(f, 2, rng)
        assert wedge(a, b + d) == wedge(a, b) + wedge(a, d)


def test_contract_examples_and_linearity():
    f = QQ
    assert contract(dv(f, 1), e(f, 1, 2, 3)) == e(f, 2, 3)
    assert contract(dv(f, 4), e(f, 1, 2, 3)).is_zero()
    assert contract(dv(f, 1), e(f, 1, 2, 3) + e(f, 1, 4, 5)) == e(f, 2, 3) + e(f, 4, 5)


@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_contract_leibniz(data):
    f = GF(7)
    seed = data.draw(st.integers(0, 2**31 - 1))
    rng = np.random.default_rng(seed)
    j = data.draw(st.sampled_from([1, 2, 3]))
    k = data.draw(st.sampled_from([1, 2]))
    a = _random_kv(f, j, rng)
    b = _random_kv(f, k, rng)
    v = DualVector(f, [f.rand(rng) for _ in range(6)])
    lhs = contract(v, wedge(a, b))
    rhs = wedge(contract(v, a), b)
    tail = wedge(a, contract(v, b))
    rhs = rhs + (tail if j % 2 == 0 else -tail)
    assert lhs == rhs


def test_contract_dual_to_wedge():
    # <iota_v w, tau> = <w, v ^ tau> against coordinate functionals
    f = QQ
    rng = np.random.default_rng(3)
    for _ in range(10):
        w = _random_kv(f, 3, rng)
        for i in range(6):
            v = DualVector.basis(f, i)
            iw = contract(v, w)
            for tau_idx in BASIS[2]:
                tau = KVector.basis(f, tau_idx)
                lhs = iw.coeffs[BASIS[2].index(tau_idx)]
                vt = wedge(KVector.basis(f, (i,)), tau)
                rhs = sum(a * b for a, b in zip(w.coeffs, vt.coeffs))
                assert lhs == rhs


def test_symplectic_examples_and_antisymmetry():
    f = QQ
    assert symplectic_form(e(f, 1, 2, 3), e(f, 4, 5, 6)) == 1
    assert symplectic_form(e(f, 4, 5, 6), e(f, 1, 2, 3)) == -1
    assert symplectic_form(e(f, 1, 2, 3), e(f, 1, 4, 5)) == 0
    rng = np.random.default_rng(8)
    for _ in range(50):
        a, b = _random_kv(f, 3, rng), _random_kv(f, 3, rng)
        assert symplectic_form(a, b) == -symplectic_form(b, a)
        assert symplectic_form(a, a) == 0


def test_sigma_support_is_complementary():
    f = QQ
    for i, I in enumerate(BASIS[3]):
        for j, J in enumerate(BASIS[3]):
            val = symplectic_form(KVector.basis(f, I), KVector.basis(f, J))
            assert (val != 0) == (set(J) == set(range(6)) - set(I))


@pytest.mark.parametrize("field", [QQ, GF(3), GF(5), GF(7)])
def test_sigma_gram_nondegenerate_odd_characteristic(field):
    gram = [
        [
            symplectic_form(KVector.basis(field, I), KVector.basis(field, J))
            for J in BASIS[3]
        ]
        for I in BASIS[3]
    ]
    assert rank(gram, field) == 20


def test_volume_dual_examples_and_pairing():
    f = QQ
    assert volume_dual(e(f, 1, 2, 3)) == KVector.basis(f, (3, 4, 5), dual=True)
    assert volume_dual(e(f, 4, 5, 6)) == -KVector.basis(f, (0, 1, 2), dual=True)
    rng = np.random.default_rng(21)
    for _ in range(100):
        a, b = _random_kv(f, 3, rng), _random_kv(f, 3, rng)
        assert symplectic_form(a, b) == pairing(volume_dual(a), b)


def test_grade_dual_round_trip_signs():
    f = QQ
    for k in (1, 2, 3, 4, 5):
        for idx in BASIS[k]:
            kv = KVector.basis(f, idx)
            back = grade_dual(grade_dual(kv))
            expect = kv if (k * (6 - k)) % 2 == 0 else -kv
            assert back.coeffs == expect.coeffs


def test_kvector_json_roundtrip():
    f = GF(7)
    rng = np.random.default_rng(4)
    kv = _random_kv(f, 3, rng)
    again = KVector.from_json(kv.to_json())
    assert again == kv
    from fractions import Fraction

    q = KVector(QQ, 2, [0] * 14 + [Fraction(3, 4)])
    assert KVector.from_json(q.to_json()) == q
