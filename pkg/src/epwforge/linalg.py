"""Exact dense linear algebra over a coefficient field, and echelon subspaces.

Matrices are lists of row lists of scalars.  Everything here is
deterministic: reduced row echelon form (RREF) is the canonical
representative of a row space, so two subspaces are equal iff their RREF
matrices are identical.  Dimensions in play are tiny (ambient 6, 15 or 20),
so this module stays in pure Python; the batched finite-field paths live in
:mod:`epwforge.kernels`.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .fields import Field


def rref(rows: Iterable[Sequence], field: Field):
    """Reduced row echelon form.

    Returns (rows, pivots): the nonzero rows of the RREF and the pivot
    column of each row.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if not field.is_zero(mat[i][c]):
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Iterable[Sequence], field: Field) -> int:
    return len(rref(rows, field)[0])


def kernel(rows: Iterable[Sequence], field: Field, ncols: int):
    """Basis of the right kernel {x : M x = 0}, one vector per free column."""
    red, pivots = rref(rows, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [field.zero()] * ncols
        v[free] = field.one()
        for i, p in enumerate(pivots):
            v[p] = field.neg(red[i][free])
        basis.append(v)
    return basis


def matvec(rows, vec, field: Field):
    out = []
    for r in rows:
        acc = field.zero()
        for a, b in zip(r, vec):
            if not (field.is_zero(a) or field.is_zero(b)):
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def scale_to_first_nonzero_one(vec: Sequence, field: Field):
    """Canonical projective representative: first nonzero coordinate 1."""
    for x in vec:
        if not field.is_zero(x):
            inv = field.inv(x)
            return [field.mul(inv, y) for y in vec]
    raise ValueError("zero vector has no projective class")


class Subspace:
    """A linear subspace held by its canonical RREF basis.

    Equality and hashing go through the RREF rows, so subspaces built along
    different paths compare equal exactly when they coincide.
    """

    __slots__ = ("field", "ambient", "rows", "pivots")

    def __init__(self, field: Field, ambient: int, rows, pivots=None):
        self.field = field
        self.ambient = ambient
        if pivots is None:
            rows, pivots = rref(rows, field)
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)
        if self.rows and len(self.rows[0]) != ambient:
            raise ValueError(f"row length {len(self.rows[0])} != ambient {ambient}")
        if len(self.rows) > ambient:
            raise ValueError("more independent rows than ambient dimension")

    @classmethod
    def from_vectors(cls, vectors, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, [list(v) for v in vectors])

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains_vector(self, vec) -> bool:
        v = list(vec)
        f = self.field
        for row, p in zip(self.rows, self.pivots):
            if not f.is_zero(v[p]):
                c = v[p]
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return all(f.is_zero(x) for x in v)

    def reduce_vector(self, vec):
        """Residue of vec modulo this subspace (pivot coordinates cleared)."""
        v = list(vec)
        f = self.field
        for row, p in zip(self.rows, self.pivots):
            if not f.is_zero(v[p]):
                c = v[p]
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.rows)

    def sum_with(self, other: "Subspace") -> "Subspace":
        self._check_compat(other)
        return Subspace(self.field, self.ambient, list(self.rows) + list(other.rows))

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: RREF of [A|A; B|0]; zero-left rows carry the intersection."""
        self._check_compat(other)
        f, n = self.field, self.ambient
        z = [f.zero()] * n
        block = [list(r) + list(r) for r in self.rows]
        block += [list(r) + z for r in other.rows]
        red, _ = rref(block, f)
        out = []
        for row in red:
            if all(f.is_zero(x) for x in row[:n]):
                out.append(row[n:])
        return Subspace(f, n, out)

    def _check_compat(self, other: "Subspace"):
        if other.field != self.field or other.ambient != self.ambient:
            raise ValueError("subspace field/ambient mismatch")

    def basis_matrix(self):
        return [list(r) for r in self.rows]

    def to_json(self):
        f = self.field
        return [[f.scalar_to_json(x) for x in r] for r in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and other.field == self.field
            and other.ambient == self.ambient
            and other.rows == self.rows
        )

    def __hash__(self):
        return hash((self.field, self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field!r})"
