"""Orbit geometry of degree-3 forms under the projective linear action.

A nonzero trivector omega falls into one of three strata, detected by the
dimension of its divisor kernel {v in W : v ^ omega = 0}:

* dimension 3: omega is decomposable, a point of the Plucker-embedded
  Grassmannian G(3, W);
* dimension 1: omega = alpha ^ beta with a unique divisor line [alpha] and
  a rank-4 2-form beta (the pure part of the divisible-orbit closure);
* dimension 0: omega is not divisible by any vector.

No other kernel dimension occurs.  The two fibrations of the divisible
stratum send [alpha ^ beta] to [alpha] in P(W) and to [alpha ^ beta ^ beta]
in P(W*); this module also builds their fibers, the tangent spaces to the
divisible-orbit closure and to G(3, W), and the quadric whose zero locus on
the orbit is the union of the two fibration pullbacks of hyperplanes.
"""

from __future__ import annotations

from enum import Enum
from itertools import combinations

from .exterior import (
    BASIS,
    DIM,
    DIMS,
    DualVector,
    KVector,
    contract,
    dual_vector_from_5form,
    wedge,
    wedge_all,
)
from .linalg import Subspace, kernel, scale_to_first_nonzero_one


class OrbitLabel(Enum):
    GRASSMANNIAN = "Grassmannian"  # divisor kernel of dimension 3
    PURE_O2 = "PureO2"             # divisor kernel of dimension 1
    OUTSIDE_O2 = "OutsideO2"       # divisor kernel of dimension 0


class OrbitError(ValueError):
    """An operation was applied on the wrong stratum."""


def _require_trivector(omega: KVector, op: str) -> None:
    if omega.grade != 3 or omega.dual:
        raise OrbitError(f"{op} expects a degree-3 form on W")
    if omega.is_zero():
        raise OrbitError(f"{op} is undefined at 0")


def divisor_kernel(omega: KVector) -> Subspace:
    """Kernel of v |-> v ^ omega, a subspace of W of dimension 0, 1 or 3."""
    _require_trivector(omega, "divisor_kernel")
    f = omega.field
    cols = []
    for i in range(DIM):
        e_i = KVector.basis(f, (i,))
        cols.append(wedge(e_i, omega).coeffs)
    # kernel of the 15x6 matrix whose i-th column is e_i ^ omega
    rows = [[cols[i][s] for i in range(DIM)] for s in range(DIMS[4])]
    ker = kernel(rows, f, DIM)
    return Subspace(f, DIM, ker)


def classify(omega: KVector) -> OrbitLabel:
    """Stratum of a nonzero trivector, by divisor-kernel dimension."""
    d = divisor_kernel(omega).dim
    if d == 3:
        return OrbitLabel.GRASSMANNIAN
    if d == 1:
        return OrbitLabel.PURE_O2
    if d == 0:
        return OrbitLabel.OUTSIDE_O2
    raise AssertionError(f"impossible divisor kernel dimension {d}")


def pi1(omega: KVector) -> KVector:
    """First fibration: [alpha ^ beta] |-> [alpha]; defined on the pure stratum.

    Returns the canonical projective representative (first nonzero
    coordinate 1) of the divisor line.
    """
    _require_trivector(omega, "pi1")
    ker = divisor_kernel(omega)
    if ker.dim != 1:
        raise OrbitError(f"pi1 needs a pure divisible trivector (kernel dim {ker.dim})")
    return KVector(omega.field, 1, ker.rows[0])


def pi2(omega: KVector) -> DualVector:
    """Second fibration: [alpha ^ beta] |-> [alpha ^ beta ^ beta] in P(W*).

    A witness beta is read off by pivot selection: with i0 the pivot of the
    normalized alpha, beta = iota_{e*_i0}(omega) satisfies
    alpha ^ beta = omega; the output does not depend on the witness, since
    beta |-> beta + alpha ^ gamma leaves alpha ^ beta ^ beta fixed.
    """
    alpha = pi1(omega)
    f = omega.field
    i0 = next(i for i, c in enumerate(alpha.coeffs) if not f.is_zero(c))
    beta = contract(DualVector.basis(f, i0), omega)
    fiveform = wedge(omega, beta)  # alpha ^ beta ^ beta
    if fiveform.is_zero():
        raise AssertionError("vanishing second projection on the pure stratum")
    w = dual_vector_from_5form(fiveform)
    return DualVector(f, scale_to_first_nonzero_one(w.coeffs, f))


def _as_vector(v) -> KVector:
    if isinstance(v, KVector):
        if v.grade != 1 or v.dual:
            raise ValueError("expected a vector of W")
        return v
    raise TypeError("expected a grade-1 KVector")


def fiber_F(v: KVector) -> Subspace:
    """The 10-dimensional space v ^ /\\^2 W, the first fibration's fiber over [v]."""
    v = _as_vector(v)
    if v.is_zero():
        raise ValueError("fiber over the zero vector")
    f = v.field
    rows = []
    for pair in BASIS[2]:
        rows.append(wedge(v, KVector.basis(f, pair)).coeffs)
    sp = Subspace(f, DIMS[3], rows)
    assert sp.dim == 10, f"fiber dimension {sp.dim} != 10"
    return sp


def fiber_Fprime(w: DualVector) -> Subspace:
    """The 10-dimensional space /\\^3(ker w), the second fibration's fiber."""
    if w.is_zero():
        raise ValueError("fiber over the zero functional")
    f = w.field
    kb = w.kernel_basis()
    if len(kb) != 5:
        raise ValueError("nonzero functional must have a 5-dimensional kernel")
    vecs = [KVector(f, 1, row) for row in kb]
    rows = [wedge_all([vecs[a], vecs[b], vecs[c]]).coeffs for a, b, c in combinations(range(5), 3)]
    sp = Subspace(f, DIMS[3], rows)
    assert sp.dim == 10, f"fiber dimension {sp.dim} != 10"
    return sp


def _witness_beta(p: KVector) -> KVector:
    """A 2-form beta with pi1(p) ^ beta = p, by the pi2 pivot rule."""
    alpha = pi1(p)
    f = p.field
    i0 = next(i for i, c in enumerate(alpha.coeffs) if not f.is_zero(c))
    return contract(DualVector.basis(f, i0), p)


def tangent_O2(p: KVector) -> Subspace:
    """Affine tangent space at a pure divisible point: span of the two fibers
    through p and of W ^ beta; dimension 15 (the orbit closure has
    projective dimension 14)."""
    beta = _witness_beta(p)
    f = p.field
    rows = list(fiber_F(pi1(p)).rows) + list(fiber_Fprime(pi2(p)).rows)
    for i in range(DIM):
        rows.append(wedge(KVector.basis(f, (i,)), beta).coeffs)
    sp = Subspace(f, DIMS[3], rows)
    assert sp.dim == 15, f"tangent dimension {sp.dim} != 15"
    return sp


def sigma_hyperplane(p: KVector) -> Subspace:
    """The pairing-orthogonal hyperplane of p: {eta : sigma(eta, p) = 0}.

    Contains both fibers through p but not W ^ beta, which is why the two
    fibers span a hyperplane of the tangent space.
    """
    _require_trivector(omega=p, op="sigma_hyperplane")
    if classify(p) is not OrbitLabel.PURE_O2:
        raise OrbitError("sigma_hyperplane is defined on the pure divisible stratum")
    from .exterior import sigma_pairing

    f = p.field
    pair = sigma_pairing(f)
    # sigma(e_slot, p) as a single functional row on the 20 coordinates
    row = []
    for slot in range(DIMS[3]):
        basis_coeffs = [f.zero()] * DIMS[3]
        basis_coeffs[slot] = f.one()
        row.append(pair(basis_coeffs, p.coeffs))
    ker = kernel([row], f, DIMS[3])
    sp = Subspace(f, DIMS[3], ker)
    assert sp.dim == 19
    return sp


def quadric_Q(v: DualVector, gamma: KVector, omega: KVector):
    """The quadric omega |-> coefficient of e_123456 in iota_v(omega)^omega^gamma.

    On the divisible orbit it factors as v(alpha) * <alpha^beta^beta^gamma>,
    so its zero locus there is the union of the two fibration pullbacks of
    the hyperplanes cut by v and gamma.
    """
    gamma = _as_vector(gamma)
    if omega.grade != 3 or omega.dual:
        raise OrbitError("quadric_Q expects a degree-3 form on W")
    six = wedge(wedge(contract(v, omega), omega), gamma)
    return six.coeffs[0]


def tangent_G(U: Subspace) -> Subspace:
    """Affine tangent space /\\^2 U ^ W to G(3, W) at [e_U], dimension 10.

    A decomposable e_U' lies in it exactly when dim(U cap U') >= 2, i.e.
    when the planes P(U) and P(U') meet along a line.
    """
    if U.ambient != DIM or U.dim != 3:
        raise ValueError("tangent_G expects a 3-dimensional subspace of W")
    f = U.field
    basis_vecs = [KVector(f, 1, r) for r in U.rows]
    rows = []
    for a, b in combinations(range(3), 2):
        two = wedge(basis_vecs[a], basis_vecs[b])
        for i in range(DIM):
            rows.append(wedge(two, KVector.basis(f, (i,))).coeffs)
    sp = Subspace(f, DIMS[3], rows)
    assert sp.dim == 10, f"tangent_G dimension {sp.dim} != 10"
    return sp


def plucker_point(U: Subspace) -> KVector:
    """The decomposable trivector e_U of a 3-dimensional subspace of W,
    from its canonical basis (so the scale is canonical too)."""
    if U.ambient != DIM or U.dim != 3:
        raise ValueError("expected a 3-dimensional subspace of W")
    f = U.field
    return wedge_all([KVector(f, 1, r) for r in U.rows])
