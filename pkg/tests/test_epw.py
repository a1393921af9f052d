"""The degeneracy machinery: chart matrices, sextics, censuses, duality."""

import numpy as np
import pytest

from epwforge.enumeration import projective_reps
from epwforge.epw import (
    CensusMismatchError,
    DegenerateSexticError,
    SingularPointError,
    c_UA_points,
    dual_sextic,
    epw_matrix,
    epw_rank_at,
    epw_sextic,
    gradient_point,
    rank_census,
    sextic_vanishing_census,
    theta_contains,
    theta_enumerate,
)
from epwforge.epw import _chart_matrix
from epwforge.exterior import DualVector, KVector
from epwforge.fields import GF, QQ
from epwforge.lagrangian import (
    coordinate_lagrangian_L0,
    coordinate_lagrangian_L1,
    dual_transport,
    lagrangian_with_planes,
    random_lagrangian,
)
from epwforge.linalg import Subspace, rank as exact_rank


def _coord_plane(field, i, j, k):
    rows = []
    for t in (i, j, k):
        row = [field.zero()] * 6
        row[t - 1] = field.one()
        rows.append(row)
    return Subspace(field, 6, rows)


def test_rank_at_examples():
    f = QQ
    L0 = coordinate_lagrangian_L0(f)
    assert epw_rank_at(L0, [1, 0, 0, 0, 0, 0]) == 10  # A equals the fiber at e1
    A = random_lagrangian(2, QQ)
    s = epw_sextic(A)
    rng = np.random.default_rng(0)
    for _ in range(10):
        v = [int(x) for x in rng.integers(-5, 6, 6)]
        if not any(v):
            continue
        k = epw_rank_at(A, v)
        assert (k >= 1) == (s.poly.eval(v) == 0)
        assert k == 0  # random points miss the sextic with overwhelming probability


def test_rank_at_on_contained_plane():
    f = GF(7)
    U = _coord_plane(f, 1, 2, 3)
    A = lagrangian_with_planes([U], seed=4)
    rng = np.random.default_rng(5)
    for _ in range(20):
        c = [int(x) for x in rng.integers(0, 7, 3)]
        if not any(c):
            continue
        v = [c[0], c[1], c[2], 0, 0, 0]
        assert epw_rank_at(A, v) >= 1


def test_chart_matrix_of_L1_has_invertible_constant_part():
    f = GF(7)
    L1 = coordinate_lagrangian_L1(f)
    cm = _chart_matrix(L1, 0)
    const = [[int(x) for x in row] for row in cm.const]
    assert exact_rank(const, f) == 10


def test_chart_matrix_evaluation_is_pointwise_reduction():
    # evaluating the polynomial matrix commutes with plugging in the point
    f = GF(7)
    A = random_lagrangian(9, f)
    polys = epw_matrix(A, chart=1)
    cm = _chart_matrix(A, 0)
    rng = np.random.default_rng(2)
    for _ in range(5):
        pt = [1] + [int(x) for x in rng.integers(0, 7, 5)]
        direct = cm.eval_at(pt)
        for q in range(10):
            for t in range(10):
                assert polys[q][t].eval(pt) == direct[q][t]


def test_chart_rank_drop_tracks_invariant_exhaustively():
    # the corank of the chart matrix IS the rank invariant, point by point
    f = GF(3)
    A = random_lagrangian(6, f)
    cm = _chart_matrix(A, 0)
    for row in projective_reps(3, 6):
        v = [int(x) for x in row]
        if v[0] == 0:
            continue  # chart 1 sees the locus x1 != 0
        mat = cm.eval_at(v)
        assert exact_rank(mat, f) == 10 - epw_rank_at(A, v)


def test_sextic_is_the_unique_sextic_through_the_rank_locus():
    # independent characterization: over F_5 the degree-6 forms vanishing on
    # every rank-drop point form a 1-dimensional space, and s_A spans it
    import itertools

    from epwforge import kernels
    from epwforge.enumeration import intersection_dims_with_fibers

    p = 5
    f = GF(p)
    A = random_lagrangian(1, f)
    s = epw_sextic(A)
    pts = projective_reps(p, 6)
    basis = np.array([[int(x) for x in r] for r in A.basis_rows], dtype=np.int64)
    ks = intersection_dims_with_fibers(basis, pts, p)
    zeros = pts[ks >= 1]
    monos = [e for e in itertools.product(range(7), repeat=6) if sum(e) == 6]
    assert len(monos) == 462
    rows = np.ones((zeros.shape[0], 462), dtype=np.int64)
    for col, exp in enumerate(monos):
        acc = np.ones(zeros.shape[0], dtype=np.int64)
        for v in range(6):
            for _ in range(exp[v]):
                acc = acc * zeros[:, v] % p
        rows[:, col] = acc
    rank_of_constraints = int(kernels.rank_batch(rows[None, :, :].copy(), p)[0])
    # over F_5 the forms x_i^5 x_j - x_i x_j^5 (15 of them) vanish at every
    # rational point, so "unique" means unique modulo pointwise-zero forms:
    # the constraint kernel is exactly s_A plus that 15-dimensional space
    assert rank_of_constraints == 462 - 16
    lookup = {exp: i for i, exp in enumerate(monos)}
    svec = np.zeros(462, dtype=np.int64)
    for exp, c in s.poly.terms.items():
        svec[lookup[exp]] = int(c)
    assert not (rows @ svec % p).any()  # s_A satisfies every constraint
    kernel_basis = [svec]
    for i in range(6):
        for j in range(i + 1, 6):
            vec = np.zeros(462, dtype=np.int64)
            e1 = [0] * 6
            e1[i], e1[j] = 5, 1
            e2 = [0] * 6
            e2[i], e2[j] = 1, 5
            vec[lookup[tuple(e1)]] = 1
            vec[lookup[tuple(e2)]] = p - 1
            assert not (rows @ vec % p).any()  # Frobenius forms vanish on points
            kernel_basis.append(vec)
    stacked = np.array(kernel_basis, dtype=np.int64)
    assert int(kernels.rank_batch(stacked[None, :, :].copy(), p)[0]) == 16


def test_degenerate_sextic_for_coordinate_fiber():
    for field in (GF(7), QQ):
        with pytest.raises(DegenerateSexticError):
            epw_sextic(coordinate_lagrangian_L0(field))


def test_sextic_methods_agree():
    A7 = random_lagrangian(3, GF(7))
    s_fast = epw_sextic(A7, chart=1)
    s_exp = epw_sextic(A7, chart=1, method="expansion")
    assert s_fast.poly == s_exp.poly
    Aq = random_lagrangian(3, QQ)
    q_fast = epw_sextic(Aq, chart=1)
    q_exp = epw_sextic(Aq, chart=1, method="expansion")
    assert q_fast.poly == q_exp.poly


def test_sextic_bareiss_cross_check():
    A3 = random_lagrangian(5, GF(3))
    assert epw_sextic(A3, chart=1, method="bareiss").poly == epw_sextic(A3, chart=1).poly


def test_sextic_chart_agreement_and_canonical_form():
    for field, seed in ((GF(10007), 1), (QQ, 1), (GF(5), 2)):
        A = random_lagrangian(seed, field)
        polys = [epw_sextic(A, chart=c).poly for c in (1, 2, 3)]
        assert polys[0] == polys[1] == polys[2]
        assert polys[0].is_homogeneous(6)
        assert polys[0].normalized() == polys[0]


def test_sextic_eval_matches_rank_drop_samples():
    f = GF(10007)
    A = random_lagrangian(11, f)
    s = epw_sextic(A)
    rng = np.random.default_rng(3)
    zero_seen = 0
    for _ in range(40):
        v = [int(x) for x in rng.integers(0, 10007, 6)]
        if not any(v):
            continue
        assert (s.poly.eval(v) == 0) == (epw_rank_at(A, v) >= 1)
    # and on a guaranteed rank-drop point of a structured example
    U = _coord_plane(f, 1, 2, 3)
    AP = lagrangian_with_planes([U], seed=8)
    sp = epw_sextic(AP)
    assert sp.poly.eval([1, 2, 3, 0, 0, 0]) == 0


def test_vanishing_census_f3_f5():
    for p, seed in ((3, 1), (5, 1)):
        A = random_lagrangian(seed, GF(p))
        report, ok = sextic_vanishing_census(A)
        assert ok
        assert report.total == (p**6 - 1) // (p - 1)
        assert sum(report.counts.values()) == report.total
        assert report.count_at_least(1) >= report.count_at_least(2) >= report.count_at_least(3)


def test_census_of_plane_example_covers_the_plane():
    # a contained plane puts all of its 13 F_3-points inside the zero locus
    f = GF(3)
    A = lagrangian_with_planes([_coord_plane(f, 1, 2, 3)], seed=11)
    report, ok = sextic_vanishing_census(A)
    assert ok and report.count_at_least(1) >= 13


def test_census_rejects_wrong_sextic():
    f = GF(3)
    A = random_lagrangian(1, f)
    B = random_lagrangian(2, f)
    with pytest.raises(CensusMismatchError):
        sextic_vanishing_census(A, sextic=epw_sextic(B))


def test_theta_contains_and_enumerate():
    f = GF(3)
    U = _coord_plane(f, 1, 2, 3)
    assert theta_contains(coordinate_lagrangian_L0(f), U)
    assert not theta_contains(coordinate_lagrangian_L1(f), U)
    A = lagrangian_with_planes([U], seed=11)
    assert theta_contains(A, U)
    found = theta_enumerate(A)
    assert U in found
    # the coordinate fiber Lagrangian carries a cone over G(2,5):
    # (3^5-1)(3^4-1)/((3^2-1)(3-1)) = 1210 decomposable points
    th = theta_enumerate(coordinate_lagrangian_L0(f))
    gaussian = (3**5 - 1) * (3**4 - 1) // ((3**2 - 1) * (3 - 1))
    assert len(th) == gaussian == 1210
    coord_planes = [
        _coord_plane(f, *[i + 1 for i in idx])
        for idx in __import__("itertools").combinations(range(6), 3)
        if 0 in idx
    ]
    for P in coord_planes:
        assert P in th
    with pytest.raises(ValueError):
        theta_enumerate(random_lagrangian(1, QQ))
    with pytest.raises(ValueError):
        theta_enumerate(random_lagrangian(1, GF(7)))


def test_cua_points_and_complement():
    f = GF(3)
    U = _coord_plane(f, 1, 2, 3)
    A = lagrangian_with_planes([U], seed=11)
    pts = c_UA_points(A, U)
    assert len(pts) <= 13
    got = {kv.coeffs for kv, _ in pts}
    for row in projective_reps(3, 3):
        v = (int(row[0]), int(row[1]), int(row[2]), 0, 0, 0)
        k = epw_rank_at(A, list(v))
        if v in got:
            assert k >= 2
        else:
            assert k == 1
    with pytest.raises(ValueError):
        c_UA_points(A, _coord_plane(f, 4, 5, 6))


def test_cua_contains_plane_intersection_point():
    f = GF(3)
    U1 = _coord_plane(f, 1, 2, 3)
    U2 = _coord_plane(f, 1, 4, 5)
    A = lagrangian_with_planes([U1, U2], seed=3)
    pts = c_UA_points(A, U1)
    assert any(kv.coeffs == (1, 0, 0, 0, 0, 0) for kv, _ in pts)


def test_dual_sextic_semantics():
    f = GF(7)
    A = random_lagrangian(1, f)
    sd = dual_sextic(A)
    rng = np.random.default_rng(4)
    from epwforge.exterior import wedge_all

    checked = 0
    while checked < 200:
        w = DualVector(f, [f.rand(rng) for _ in range(6)])
        if w.is_zero():
            continue
        kb = w.kernel_basis()
        cube_rows = []
        import itertools

        vecs = [KVector(f, 1, r) for r in kb]
        for i, j, k in itertools.combinations(range(5), 3):
            cube_rows.append(wedge_all([vecs[i], vecs[j], vecs[k]]).coeffs)
        stacked = [list(r) for r in A.basis_rows] + cube_rows
        kdim = 20 - exact_rank(stacked, f)
        assert (sd.poly.eval(list(w.coeffs)) == 0) == (kdim >= 1)
        checked += 1


def test_double_dual_reproduces_sextic():
    A = random_lagrangian(2, GF(7))
    s = epw_sextic(A)
    again = dual_sextic(dual_transport(A))
    assert again.poly == s.poly


def test_gradient_point_euler_and_duality():
    f = GF(7)
    A = random_lagrangian(1, f)
    s = epw_sextic(A)
    sd = dual_sextic(A)
    rng = np.random.default_rng(9)
    # Euler relation 6 s(v) = sum v_i d_i s(v) at random points
    for _ in range(100):
        v = [int(x) for x in rng.integers(0, 7, 6)]
        if not any(v):
            continue
        partials = [s.poly.diff(i).eval(v) for i in range(6)]
        lhs = f.mul(6, s.poly.eval(v))
        rhs = 0
        for vi, pi in zip(v, partials):
            rhs = f.add(rhs, f.mul(vi, pi))
        assert lhs == rhs
    # smooth zero-locus points map onto the transported-side sextic
    checked = 0
    for row in projective_reps(7, 6):
        v = [int(x) for x in row]
        if s.poly.eval(v) != 0:
            continue
        try:
            w = gradient_point(s, v)
        except SingularPointError:
            continue
        assert sd.poly.eval(list(w.coeffs)) == 0
        checked += 1
        if checked == 25:
            break
    assert checked == 25


def test_biduality_of_gradient_maps():
    # gradients of the transported-side sextic at its smooth points land back
    # on the zero locus of s_A
    f = GF(7)
    A = random_lagrangian(1, f)
    s = epw_sextic(A)
    sd = dual_sextic(A)
    checked = 0
    for row in projective_reps(7, 6):
        w = [int(x) for x in row]
        if sd.poly.eval(w) != 0:
            continue
        try:
            v = gradient_point(sd, w)
        except SingularPointError:
            continue
        assert s.poly.eval(list(v.coeffs)) == 0
        checked += 1
        if checked == 20:
            break
    assert checked == 20


def test_gradient_vanishes_on_rank2_points_of_structured_example():
    f = GF(7)
    U = _coord_plane(f, 1, 2, 3)
    A = lagrangian_with_planes([U], seed=4)
    s = epw_sextic(A)
    pts = c_UA_points(A, U)
    assert pts, "structured example should carry rank-2 points on the plane"
    for kv, _ in pts:
        with pytest.raises(SingularPointError):
            gradient_point(s, list(kv.coeffs))


def test_rank_census_shape():
    A = random_lagrangian(3, GF(3))
    rep = rank_census(A)
    assert rep.total == 364
    assert sum(rep.counts.values()) == 364
    j = rep.to_json()
    assert j["points"] == 364
