"""The exterior algebra of a fixed 6-dimensional space W, with exact scalars.

Basis convention: indices are 0..5 internally (1..6 in JSON and display);
the grade-k slots are the strictly increasing k-subsets of {0,...,5} in
lexicographic order, so grade 3 has 20 slots, grade 2 has 15, etc.  All
signs come from one rule: the parity of the merge permutation of two
disjoint sorted index tuples.

The wedge pairing on degree-3 forms, sigma(a, b) = coefficient of
e_012345 in a^b, is alternating and nondegenerate away from characteristic
2; it is the form every Lagrangian in this package is isotropic for.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .fields import Field, FieldError

DIM = 6

BASIS: dict[int, tuple[tuple[int, ...], ...]] = {
    k: tuple(combinations(range(DIM), k)) for k in range(DIM + 1)
}
SLOT: dict[int, dict[tuple[int, ...], int]] = {
    k: {idx: i for i, idx in enumerate(BASIS[k])} for k in range(DIM + 1)
}
DIMS = {k: len(BASIS[k]) for k in range(DIM + 1)}  # 1,6,15,20,15,6,1


def merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Sign of sorting the concatenation a+b; 0 if they share an index."""
    if set(a) & set(b):
        return 0
    inv = sum(1 for i in a for j in b if i > j)
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def _wedge_table(j: int, k: int):
    """For grades (j,k): per (slot_a, slot_b) the (out_slot, sign) or None."""
    table = []
    for a in BASIS[j]:
        row = []
        for b in BASIS[k]:
            s = merge_sign(a, b)
            if s == 0:
                row.append(None)
            else:
                out = tuple(sorted(a + b))
                row.append((SLOT[j + k][out], s))
        table.append(tuple(row))
    return tuple(table)


@lru_cache(maxsize=None)
def _complement_table(k: int):
    """Per grade-k slot: (slot of complement in grade 6-k, merge sign)."""
    out = []
    for a in BASIS[k]:
        comp = tuple(i for i in range(DIM) if i not in a)
        out.append((SLOT[DIM - k][comp], merge_sign(a, comp)))
    return tuple(out)


class GradeError(ValueError):
    """Grade contract violation (overflow past 6, contraction of grade 0, ...)."""


class KVector:
    """An exact element of the k-th exterior power, any grade 0..6.

    Instances are immutable value objects.  ``dual`` marks elements of the
    exterior powers of the dual space W*; the coordinate algebra is
    identical, the flag only guards against mixing the two sides.
    """

    __slots__ = ("field", "grade", "coeffs", "dual")

    def __init__(self, field: Field, grade: int, coeffs, dual: bool = False):
        if grade not in BASIS:
            raise GradeError(f"grade {grade} out of range 0..6")
        coeffs = tuple(field.coerce(c) for c in coeffs)
        if len(coeffs) != DIMS[grade]:
            raise ValueError(f"grade {grade} needs {DIMS[grade]} coefficients")
        self.field = field
        self.grade = grade
        self.coeffs = coeffs
        self.dual = dual

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, grade: int, dual: bool = False) -> "KVector":
        return cls(field, grade, [field.zero()] * DIMS[grade], dual)

    @classmethod
    def basis(cls, field: Field, indices, dual: bool = False) -> "KVector":
        """Basis element e_I (or e*_I) for a sorted index tuple, 0-based."""
        idx = tuple(indices)
        k = len(idx)
        if idx not in SLOT[k]:
            raise ValueError(f"{idx} is not a sorted index tuple")
        c = [field.zero()] * DIMS[k]
        c[SLOT[k][idx]] = field.one()
        return cls(field, k, c, dual)

    @classmethod
    def from_coords(cls, field: Field, grade: int, coords, dual: bool = False) -> "KVector":
        return cls(field, grade, coords, dual)

    # -- ring/vector operations -------------------------------------------

    def _check(self, other: "KVector"):
        if other.field != self.field:
            raise FieldError("mixed fields")
        if other.dual != self.dual:
            raise ValueError("mixed W / W* sides")

    def __add__(self, other: "KVector") -> "KVector":
        self._check(other)
        if other.grade != self.grade:
            raise GradeError("cannot add different grades")
        f = self.field
        return KVector(f, self.grade, [f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)], self.dual)

    def __sub__(self, other: "KVector") -> "KVector":
        return self + (-other)

    def __neg__(self) -> "KVector":
        f = self.field
        return KVector(f, self.grade, [f.neg(a) for a in self.coeffs], self.dual)

    def scale(self, c) -> "KVector":
        f = self.field
        c = f.coerce(c)
        return KVector(f, self.grade, [f.mul(c, a) for a in self.coeffs], self.dual)

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(a) for a in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, KVector)
            and other.field == self.field
            and other.grade == self.grade
            and other.dual == self.dual
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.grade, self.dual, self.coeffs))

    def support(self):
        f = self.field
        return [BASIS[self.grade][i] for i, c in enumerate(self.coeffs) if not f.is_zero(c)]

    def __repr__(self):
        f = self.field
        star = "*" if self.dual else ""
        parts = []
        for i, c in enumerate(self.coeffs):
            if f.is_zero(c):
                continue
            mono = "".join(str(j + 1) for j in BASIS[self.grade][i]) or "1"
            parts.append(f"{c}*e{star}_{mono}")
        return " + ".join(parts) if parts else "0"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        f = self.field
        coords = [
            {"idx": [j + 1 for j in BASIS[self.grade][i]], "c": f.scalar_to_json(c)}
            for i, c in enumerate(self.coeffs)
            if not f.is_zero(c)
        ]
        out = dict(f.to_json())
        out["coords"] = coords
        if self.dual:
            out["dual"] = True
        return out

    @classmethod
    def from_json(cls, data: dict, field: Field | None = None, grade: int | None = None) -> "KVector":
        from .fields import field_from_json

        f = field if field is not None else field_from_json(data)
        coords = data["coords"] if isinstance(data, dict) else data
        dual = bool(data.get("dual", False)) if isinstance(data, dict) else False
        grades = {len(item["idx"]) for item in coords}
        if grade is None:
            if len(grades) > 1:
                raise ValueError(f"mixed grades in coordinates: {sorted(grades)}")
            grade = grades.pop() if grades else 3
        elif grades - {grade}:
            raise ValueError(f"coordinates of grade {grades} in a grade-{grade} vector")
        c = [f.zero()] * DIMS[grade]
        for item in coords:
            idx = tuple(sorted(int(i) - 1 for i in item["idx"]))
            if len(set(idx)) != len(idx) or not all(0 <= i < DIM for i in idx):
                raise ValueError(f"bad index set {item['idx']}")
            c[SLOT[grade][idx]] = f.add(c[SLOT[grade][idx]], f.scalar_from_json(item["c"]))
        return cls(f, grade, c, dual)


def wedge(a: KVector, b: KVector) -> KVector:
    """Exterior product; bilinear, associative, graded-anticommutative."""
    a._check(b)
    j, k = a.grade, b.grade
    if j + k > DIM:
        raise GradeError(f"grade overflow: {j} + {k} > {DIM}")
    f = a.field
    table = _wedge_table(j, k)
    out = [f.zero()] * DIMS[j + k]
    for ia, ca in enumerate(a.coeffs):
        if f.is_zero(ca):
            continue
        row = table[ia]
        for ib, cb in enumerate(b.coeffs):
            if f.is_zero(cb):
                continue
            hit = row[ib]
            if hit is None:
                continue
            slot, s = hit
            term = f.mul(ca, cb)
            out[slot] = f.add(out[slot], term if s > 0 else f.neg(term))
    return KVector(f, j + k, out, a.dual)


def wedge_all(vectors) -> KVector:
    it = iter(vectors)
    acc = next(it)
    for v in it:
        acc = wedge(acc, v)
    return acc


class DualVector:
    """An element of W*, six coefficients against the dual basis e*_1..e*_6."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        coeffs = tuple(field.coerce(c) for c in coeffs)
        if len(coeffs) != DIM:
            raise ValueError("a dual vector has 6 coefficients")
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def basis(cls, field: Field, i: int) -> "DualVector":
        c = [field.zero()] * DIM
        c[i] = field.one()
        return cls(field, c)

    def apply(self, v) -> object:
        """Evaluate on a vector of W (a grade-1 KVector or a coordinate list)."""
        coords = v.coeffs if isinstance(v, KVector) else v
        f = self.field
        acc = f.zero()
        for a, b in zip(self.coeffs, coords):
            acc = f.add(acc, f.mul(a, b))
        return acc

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(a) for a in self.coeffs)

    def kernel_basis(self):
        """Basis of ker(w) in W as grade-1 coordinate rows (RREF kernel)."""
        from .linalg import kernel

        return kernel([list(self.coeffs)], self.field, DIM)

    def __eq__(self, other):
        return (
            isinstance(other, DualVector)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return " + ".join(
            f"{c}*e*_{i + 1}" for i, c in enumerate(self.coeffs) if not self.field.is_zero(c)
        ) or "0"


def contract(v: DualVector, omega: KVector) -> KVector:
    """Interior product iota_v: grade k -> k-1; graded Leibniz against wedge."""
    if omega.grade == 0:
        raise GradeError("cannot contract a grade-0 element")
    if omega.dual:
        raise ValueError("contract expects an element of the exterior algebra of W")
    f = omega.field
    if v.field != f:
        raise FieldError("mixed fields")
    k = omega.grade
    out = [f.zero()] * DIMS[k - 1]
    for slot, c in enumerate(omega.coeffs):
        if f.is_zero(c):
            continue
        idx = BASIS[k][slot]
        for pos, i in enumerate(idx):
            vi = v.coeffs[i]
            if f.is_zero(vi):
                continue
            rest = idx[:pos] + idx[pos + 1:]
            term = f.mul(vi, c)
            if pos % 2:
                term = f.neg(term)
            t = SLOT[k - 1][rest]
            out[t] = f.add(out[t], term)
    return KVector(f, k - 1, out)


def symplectic_form(a: KVector, b: KVector):
    """sigma(a,b): the coefficient of e_123456 in a^b, for degree-3 forms.

    Alternating (sigma(a,a)=0) and nondegenerate in characteristic != 2;
    sigma(e_I, e_J) is nonzero exactly when J is the complement of I.
    """
    if a.grade != 3 or b.grade != 3:
        raise GradeError("the wedge pairing is defined on degree-3 forms")
    a._check(b)
    f = a.field
    comp = _complement_table(3)
    acc = f.zero()
    for slot, c in enumerate(a.coeffs):
        if f.is_zero(c):
            continue
        cslot, sign = comp[slot]
        d = b.coeffs[cslot]
        if f.is_zero(d):
            continue
        term = f.mul(c, d)
        acc = f.add(acc, term if sign > 0 else f.neg(term))
    return acc


def sigma_pairing(field: Field):
    """sigma on grade-3 coordinate rows, without building KVectors."""
    comp = _complement_table(3)

    def pair(a, b):
        acc = field.zero()
        for slot, c in enumerate(a):
            if field.is_zero(c):
                continue
            cslot, sign = comp[slot]
            d = b[cslot]
            if field.is_zero(d):
                continue
            t = field.mul(c, d)
            acc = field.add(acc, t if sign > 0 else field.neg(t))
        return acc

    return pair


def grade_dual(omega: KVector) -> KVector:
    """The pairing-induced isomorphism /\\^k W -> /\\^(6-k) W*.

    e_I maps to sign(I, Ibar) e*_Ibar, the sign being the merge parity.  On
    grade 3 the round trip (applying the dual-side map back) is minus the
    identity; as subspaces nothing changes.
    """
    f = omega.field
    k = omega.grade
    comp = _complement_table(k)
    out = [f.zero()] * DIMS[DIM - k]
    for slot, c in enumerate(omega.coeffs):
        if f.is_zero(c):
            continue
        cslot, sign = comp[slot]
        out[cslot] = c if sign > 0 else f.neg(c)
    return KVector(f, DIM - k, out, dual=not omega.dual)


def volume_dual(omega: KVector) -> KVector:
    """Degree-3 case of :func:`grade_dual`; satisfies
    sigma(a, b) = <volume_dual(a), b> coordinatewise."""
    if omega.grade != 3:
        raise GradeError("volume_dual acts on degree-3 forms")
    return grade_dual(omega)


def dual_vector_from_5form(omega: KVector) -> DualVector:
    """Identify a 5-form with an element of W* via grade_dual."""
    if omega.grade != 5:
        raise GradeError("expected a 5-form")
    dv = grade_dual(omega)  # grade-1 on the dual side
    return DualVector(omega.field, dv.coeffs)


def pairing(a: KVector, b: KVector):
    """Coordinatewise pairing of /\\^k W* with /\\^k W (dual bases)."""
    if a.grade != b.grade:
        raise GradeError("pairing needs equal grades")
    if not (a.dual and not b.dual):
        raise ValueError("pairing expects (dual, primal) arguments")
    f = a.field
    acc = f.zero()
    for x, y in zip(a.coeffs, b.coeffs):
        acc = f.add(acc, f.mul(x, y))
    return acc
