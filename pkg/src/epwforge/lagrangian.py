"""Lagrangian subspaces of the 20-dimensional space of degree-3 forms.

A Lagrangian here is a 10-dimensional subspace on which the wedge pairing
sigma vanishes identically.  Constructors:

* ``random_lagrangian`` -- the graph construction over the coordinate
  splitting L0 = span{e_I : 1 in I}, L1 = span{e_I : 1 not in I} (1-based
  display indices): a random 10x10 matrix is symmetrized against the sign
  table of the pairing between the two factors, and the graph of the
  resulting map is Lagrangian by that symmetry.
* ``complete_to_lagrangian`` -- deterministic isotropic completion,
  preferring coordinate trivectors in lexicographic order.
* ``lagrangian_with_planes`` -- a Lagrangian through prescribed
  decomposables e_U; requires the 3-spaces to pairwise intersect, which is
  exactly the isotropy of the span of their Plucker points.

Every constructor validates isotropy and rank 10 before returning.
"""

from __future__ import annotations

import numpy as np

from .exterior import BASIS, DIMS, KVector, SLOT, grade_dual, merge_sign, sigma_pairing
from .fields import Field, require_odd_characteristic
from .linalg import Subspace, kernel, rref
from .orbits import plucker_point

N3 = DIMS[3]  # 20

# Slots of the two coordinate Lagrangians: index-0 inside / outside.
L0_SLOTS = tuple(s for s, idx in enumerate(BASIS[3]) if 0 in idx)
L1_SLOTS = tuple(s for s, idx in enumerate(BASIS[3]) if 0 not in idx)
# sign table s_I = sigma(e_I, e_Ibar) for I containing index 0
_PAIR_SIGN = tuple(
    merge_sign(BASIS[3][s], tuple(i for i in range(6) if i not in BASIS[3][s])) for s in L0_SLOTS
)
# complement slot of each L0 slot, inside the L1 slot list
_COMP_POS = tuple(
    L1_SLOTS.index(SLOT[3][tuple(i for i in range(6) if i not in BASIS[3][s])]) for s in L0_SLOTS
)


class IsotropyError(ValueError):
    """A subspace failed the isotropy requirement; carries a witness pair."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class Lagrangian:
    """A rank-10 isotropic subspace with construction provenance."""

    __slots__ = ("subspace", "provenance")

    def __init__(self, subspace: Subspace, provenance: dict):
        if subspace.ambient != N3:
            raise ValueError("a Lagrangian lives in the 20-dimensional degree-3 space")
        if subspace.dim != 10:
            raise ValueError(f"rank {subspace.dim} != 10")
        w = isotropy_witness(subspace)
        if w is not None:
            i, j = w
            raise IsotropyError(
                f"not isotropic: sigma(basis[{i}], basis[{j}]) != 0", witness=w
            )
        self.subspace = subspace
        self.provenance = dict(provenance)

    @property
    def field(self) -> Field:
        return self.subspace.field

    @property
    def basis_rows(self):
        return self.subspace.rows

    def contains_vector(self, vec) -> bool:
        return self.subspace.contains_vector(vec)

    def __eq__(self, other):
        return isinstance(other, Lagrangian) and other.subspace == self.subspace

    def __hash__(self):
        return hash(self.subspace)

    def __repr__(self):
        method = self.provenance.get("method", "?")
        return f"Lagrangian(field={self.field!r}, method={method})"


def isotropy_witness(S: Subspace):
    """None if sigma vanishes on S, else the first offending basis pair (i, j)."""
    if S.ambient != N3:
        raise ValueError("isotropy is about subspaces of the degree-3 space")
    pair = sigma_pairing(S.field)
    rows = S.rows
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if not S.field.is_zero(pair(rows[i], rows[j])):
                return (i, j)
    return None


def is_isotropic(S: Subspace) -> bool:
    """True iff the sigma-Gram matrix of the basis vanishes.

    sigma is alternating, so the diagonal is automatic and basis pairs
    suffice.
    """
    return isotropy_witness(S) is None


def coordinate_lagrangian_L0(field: Field) -> Lagrangian:
    """span{e_I : 1 in I}; equals the fiber of the first fibration over [e_1]."""
    rows = []
    for s in L0_SLOTS:
        r = [field.zero()] * N3
        r[s] = field.one()
        rows.append(r)
    return Lagrangian(
        Subspace(field, N3, rows), {"method": "coordinate-L0", "field": field.to_json()}
    )


def coordinate_lagrangian_L1(field: Field) -> Lagrangian:
    """span{e_I : 1 not in I} = all degree-3 forms on span(e_2..e_6)."""
    rows = []
    for s in L1_SLOTS:
        r = [field.zero()] * N3
        r[s] = field.one()
        rows.append(r)
    return Lagrangian(
        Subspace(field, N3, rows), {"method": "coordinate-L1", "field": field.to_json()}
    )


def graph_lagrangian(M, field: Field, provenance: dict) -> Lagrangian:
    """Graph {u + Mtilde u : u in L0} for a symmetric coefficient matrix M.

    M[a][b] is the coefficient, in the graph row of the a-th L0 slot, of the
    complement slot of the b-th L0 slot, up to the pairing sign; the graph
    is isotropic iff M is symmetric.
    """
    require_odd_characteristic(field, "the graph construction")
    rows = []
    for a in range(10):
        r = [field.zero()] * N3
        r[L0_SLOTS[a]] = field.one()
        for b in range(10):
            # divide by the pairing sign of the target slot (signs are +-1)
            c = M[a][b]
            s = _PAIR_SIGN[b]
            r[L1_SLOTS[_COMP_POS[b]]] = c if s > 0 else field.neg(c)
        rows.append(r)
    return Lagrangian(Subspace(field, N3, rows), provenance)


def random_lagrangian(seed: int, field: Field) -> Lagrangian:
    """Deterministic pseudo-random Lagrangian per (seed, field).

    Draws a 10x10 matrix, copies its upper triangle onto the lower one, and
    takes the graph.  M = 0 returns L0 itself.
    """
    require_odd_characteristic(field, "random_lagrangian")
    rng = np.random.default_rng(seed)
    draw = [[field.rand(rng) for _ in range(10)] for _ in range(10)]
    M = [[draw[a][b] if a <= b else draw[b][a] for b in range(10)] for a in range(10)]
    return graph_lagrangian(
        M, field, {"method": "graph", "seed": int(seed), "field": field.to_json()}
    )


def _sigma_perp(rows, field: Field) -> list:
    """Basis of the sigma-orthogonal complement of the row span."""
    pair = sigma_pairing(field)
    if not rows:
        return [[field.one() if i == j else field.zero() for i in range(N3)] for j in range(N3)]
    gram_rows = []
    for r in rows:
        # functional x -> sigma(r, x) in coordinates
        row = []
        for slot in range(N3):
            unit = [field.zero()] * N3
            unit[slot] = field.one()
            row.append(pair(r, unit))
        gram_rows.append(row)
    return kernel(gram_rows, field, N3)


def complete_to_lagrangian(S: Subspace, seed: int | None = None) -> Lagrangian:
    """Extend an isotropic subspace to a Lagrangian.

    Without a seed the completion is the deterministic symplectic
    Gram-Schmidt: adjoin vectors of the orthogonal complement not already
    present, preferring coordinate trivectors in lexicographic slot order
    (so the empty input completes to the first coordinate Lagrangian).
    With a seed, candidates are random combinations of the complement
    basis instead; coordinate-greedy completions of structured examples
    tend to land on degenerate special Lagrangians, random ones do not.
    """
    field = S.field
    require_odd_characteristic(field, "complete_to_lagrangian")
    w = isotropy_witness(S)
    if w is not None:
        raise IsotropyError(f"input not isotropic: witness basis pair {w}", witness=w)
    rng = np.random.default_rng(seed) if seed is not None else None
    rows = [list(r) for r in S.rows]
    while len(rows) < 10:
        perp = _sigma_perp(rows, field)
        perp_space = Subspace(field, N3, perp)
        current = Subspace(field, N3, rows)
        candidate = None
        if rng is not None:
            while candidate is None:
                coeffs = [field.rand(rng) for _ in perp]
                v = [field.zero()] * N3
                for c, row in zip(coeffs, perp):
                    if field.is_zero(c):
                        continue
                    v = [field.add(x, field.mul(c, y)) for x, y in zip(v, row)]
                if any(not field.is_zero(x) for x in v) and not current.contains_vector(v):
                    candidate = v
        else:
            for slot in range(N3):
                unit = [field.zero()] * N3
                unit[slot] = field.one()
                if perp_space.contains_vector(unit) and not current.contains_vector(unit):
                    candidate = unit
                    break
            if candidate is None:
                for v in perp:
                    if not current.contains_vector(v):
                        candidate = v
                        break
        if candidate is None:
            raise AssertionError("isotropic subspace with no extension; impossible below rank 10")
        rows.append(candidate)
        rows, _ = rref(rows, field)
    prov = {"method": "completion", "field": field.to_json()}
    if seed is not None:
        prov["seed"] = int(seed)
    return Lagrangian(Subspace(field, N3, rows), prov)


def lagrangian_with_planes(U_list, seed: int | None = None) -> Lagrangian:
    """A Lagrangian containing e_U for every 3-space U in the list.

    Any two of the 3-spaces must intersect nontrivially: disjointness of a
    pair is the same as sigma(e_U, e_U') != 0, which kills isotropy.  The
    resulting decomposables make the scanned decomposable locus of the
    output nonempty by construction.
    """
    if not U_list:
        raise ValueError("need at least one 3-space")
    field = U_list[0].field
    require_odd_characteristic(field, "lagrangian_with_planes")
    for U in U_list:
        if U.ambient != 6 or U.dim != 3:
            raise ValueError("each U must be a 3-dimensional subspace of W")
        if U.field != field:
            raise ValueError("mixed fields in the plane list")
    for i in range(len(U_list)):
        for j in range(i + 1, len(U_list)):
            if U_list[i].intersection(U_list[j]).dim == 0:
                raise IsotropyError(
                    f"3-spaces #{i} and #{j} are disjoint, so their Plucker points "
                    "pair nontrivially and no isotropic span contains both",
                    witness=(i, j),
                )
    points = [plucker_point(U).coeffs for U in U_list]
    span = Subspace(field, N3, points)
    lag = complete_to_lagrangian(span, seed=seed)
    prov = {
        "method": "planes",
        "planes": [U.to_json() for U in U_list],
        "field": field.to_json(),
    }
    if seed is not None:
        prov["seed"] = int(seed)
    return Lagrangian(lag.subspace, prov)


def dual_transport(A: Lagrangian) -> Lagrangian:
    """Transport to the dual side basis-wise along the pairing isomorphism.

    The image is Lagrangian for the dual-side wedge form, and applying the
    transport twice returns the original subspace (the basis-wise map
    squares to minus the identity, which spans the same rows).
    """
    f = A.field
    rows = []
    for r in A.subspace.rows:
        kv = KVector(f, 3, r, dual=bool(A.provenance.get("dual", False)))
        rows.append(grade_dual(kv).coeffs)
    prov = dict(A.provenance)
    prov["dual"] = not bool(prov.get("dual", False))
    return Lagrangian(Subspace(f, N3, rows), prov)
