"""Degeneracy sextics of Lagrangian subspaces and their stratifications.

For a Lagrangian A and a point [v] of P(W), the rank invariant is
k(v) = dim(A cap F_v), where F_v = v ^ /\\^2 W is the moving 10-space.  On
the affine chart x_c = 1 the classes of v ^ e_i ^ e_j (i < j, i, j != c)
modulo A form a 10x10 matrix of affine-linear entries whose rank drop at a
point is exactly k(v); its determinant, homogenized and stripped of the
forced x_c^4 factor, is the degree-6 equation s_A cutting {k >= 1}.

Two independent determinant pipelines are provided: an exact
sample-and-fit route on the principal lattice (production path; modular
for p > 10, integer-lifted otherwise and for Q) and symbolic expansion
over the sparse polynomial ring (Laplace with shared minors, plus
fraction-free Bareiss), kept as cross-checks of the sign conventions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

import numpy as np

from .enumeration import (
    eval_poly_batch,
    intersection_dims_with_fibers,
    projective_reps,
)
from .exterior import BASIS, DIMS, DualVector, KVector, SLOT, merge_sign, wedge
from .fields import Field, QQ, require_odd_characteristic
from .interp import (
    DegreeOverflow,
    fit_integer,
    fit_modular,
    lattice_array,
    monomials_from_fit,
)
from .lagrangian import Lagrangian, dual_transport
from .linalg import Subspace, rank as exact_rank, scale_to_first_nonzero_one
from .multipoly import MultiPoly, det_bareiss, det_expansion
from .orbits import plucker_point

N3 = DIMS[3]


class EPWError(Exception):
    pass


class DegenerateSexticError(EPWError):
    """Every chart determinant vanishes identically (k >= 1 everywhere)."""


class DivisionFailureError(EPWError):
    """A chart determinant exceeded affine degree 6; indicates a bug."""


class CensusMismatchError(EPWError):
    """{s_A = 0} disagreed with {k >= 1} at a point."""

    def __init__(self, point, s_value, k_value):
        super().__init__(
            f"census mismatch at {list(point)}: s_A = {s_value}, k = {k_value}"
        )
        self.point = tuple(point)


class SingularPointError(EPWError):
    """The gradient vanishes; the duality map is undefined at such points."""


@dataclass(frozen=True)
class EPWSextic:
    """A degree-6 homogeneous equation with construction provenance."""

    poly: MultiPoly
    provenance: dict = dataclass_field(default_factory=dict)

    def __post_init__(self):
        if self.poly.is_zero():
            raise ValueError("the zero polynomial is not a sextic")
        if not self.poly.is_homogeneous(6):
            raise ValueError("sextic must be homogeneous of degree exactly 6")

    @property
    def field(self) -> Field:
        return self.poly.field

    def eval(self, point):
        return self.poly.eval(point)

    def __eq__(self, other):
        return isinstance(other, EPWSextic) and other.poly == self.poly

    def __hash__(self):
        return hash(self.poly)


@dataclass
class StratumReport:
    """Census of the rank invariant over an enumerated point set."""

    field_json: dict
    total: int
    counts: dict[int, int]

    def count_at_least(self, k: int) -> int:
        return sum(c for kk, c in self.counts.items() if kk >= k)

    def to_json(self) -> dict:
        return {
            "field": self.field_json,
            "points": self.total,
            "by_rank": {str(k): self.counts[k] for k in sorted(self.counts)},
            "at_least": {
                str(k): self.count_at_least(k)
                for k in range(1, max(self.counts, default=0) + 1)
            },
        }


def fiber_rows(v_coords, field: Field):
    """The 15 spanning rows of F_v = v ^ /\\^2 W in degree-3 coordinates."""
    rows = []
    for pair in BASIS[2]:
        row = [field.zero()] * N3
        for k in range(6):
            if k in pair or field.is_zero(v_coords[k]):
                continue
            slot = SLOT[3][tuple(sorted((k,) + pair))]
            s = merge_sign((k,), pair)
            val = v_coords[k] if s > 0 else field.neg(v_coords[k])
            row[slot] = field.add(row[slot], val)
        rows.append(row)
    return rows


def epw_rank_at(A: Lagrangian, v) -> int:
    """k(v) = dim(A cap F_v) = 20 - rank of the stacked bases."""
    f = A.field
    coords = list(v.coeffs) if isinstance(v, KVector) else [f.coerce(x) for x in v]
    if all(f.is_zero(x) for x in coords):
        raise ValueError("rank invariant undefined at the zero vector")
    stacked = [list(r) for r in A.basis_rows] + fiber_rows(coords, f)
    k = 20 - exact_rank(stacked, f)
    if __debug__ and k >= 2:
        from .lagrangian import is_isotropic

        inter = A.subspace.intersection(Subspace(f, N3, fiber_rows(coords, f)))
        assert is_isotropic(inter), "A cap F_v must be isotropic inside a Lagrangian"
    return k


# ---------------------------------------------------------------------------
# chart matrices


@dataclass
class ChartMatrix:
    """The 10x10 affine-linear system of a chart, in evaluated form.

    ``const[q][t]`` and ``lin[k][q][t]`` give the entry at row q, column t
    as const + sum_k lin[k] * x_(vars[k]+1); vars are the five non-chart
    coordinate indices (0-based).
    """

    field: Field
    chart: int  # 0-based
    vars: tuple[int, ...]
    const: list
    lin: list

    def entry_poly(self, q: int, t: int) -> MultiPoly:
        linpart = {
            self.vars[k]: self.lin[k][q][t]
            for k in range(5)
            if not self.field.is_zero(self.lin[k][q][t])
        }
        return MultiPoly.affine_linear(self.field, self.const[q][t], linpart)

    def as_polys(self):
        return [[self.entry_poly(q, t) for t in range(10)] for q in range(10)]

    def eval_at(self, point6):
        """Evaluate at a full 6-coordinate point with x_chart scaled to 1."""
        f = self.field
        pc = point6[self.chart]
        inv = f.inv(pc)
        xs = [f.mul(inv, point6[v]) for v in self.vars]
        out = []
        for q in range(10):
            row = []
            for t in range(10):
                acc = self.const[q][t]
                for k in range(5):
                    acc = f.add(acc, f.mul(self.lin[k][q][t], xs[k]))
                row.append(acc)
            out.append(row)
        return out


def _chart_matrix(A: Lagrangian, chart0: int) -> ChartMatrix:
    f = A.field
    sub = A.subspace
    nonpivot = [q for q in range(N3) if q not in set(sub.pivots)]
    assert len(nonpivot) == 10

    def reduced_classes(vec_idx: int):
        cols = []
        for pair in _chart_pairs(chart0):
            w = wedge(KVector.basis(f, (vec_idx,)), KVector.basis(f, pair))
            red = sub.reduce_vector(w.coeffs)
            cols.append([red[q] for q in nonpivot])
        return cols  # list over columns, each a 10-list over rows

    others = tuple(i for i in range(6) if i != chart0)
    const_cols = reduced_classes(chart0)
    const = [[const_cols[t][q] for t in range(10)] for q in range(10)]
    lin = []
    for k in others:
        cols = reduced_classes(k)
        lin.append([[cols[t][q] for t in range(10)] for q in range(10)])
    return ChartMatrix(field=f, chart=chart0, vars=others, const=const, lin=lin)


def _chart_pairs(chart0: int):
    others = [i for i in range(6) if i != chart0]
    return list(combinations(others, 2))


def epw_matrix(A: Lagrangian, chart: int):
    """Public 10x10 matrix of affine-linear polynomials on chart x_chart = 1.

    ``chart`` is 1-based, matching the CLI.  Rank deficiency of the
    evaluated matrix at a point equals k(v) >= 1 there.
    """
    if chart not in range(1, 7):
        raise ValueError("chart must be in 1..6")
    return _chart_matrix(A, chart - 1).as_polys()


# ---------------------------------------------------------------------------
# determinant pipelines


def _det_int_bareiss(m) -> int:
    """Fraction-free integer determinant; consumes its input rows."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - mik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def _integerized(cm: ChartMatrix):
    """Clear denominators row-wise; returns integer const/lin matrices."""
    if cm.field.characteristic != 0:
        const = [[int(x) for x in row] for row in cm.const]
        lin = [[[int(x) for x in row] for row in mat] for mat in cm.lin]
        return const, lin
    const, lin = [], [[] for _ in range(5)]
    for q in range(10):
        dens = [Fraction(x).denominator for x in cm.const[q]]
        for k in range(5):
            dens += [Fraction(x).denominator for x in cm.lin[k][q]]
        scale = lcm(*dens)
        const.append([int(Fraction(x) * scale) for x in cm.const[q]])
        for k in range(5):
            lin[k].append([int(Fraction(x) * scale) for x in cm.lin[k][q]])
    return const, lin


def _lattice_det_values_modular(cm: ChartMatrix, p: int) -> np.ndarray:
    from . import kernels

    pts = lattice_array()
    C = np.array([[int(x) for x in row] for row in cm.const], dtype=np.int64)
    L = np.array(
        [[[int(x) for x in row] for row in mat] for mat in cm.lin], dtype=np.int64
    )
    mats = (C[None, :, :] + np.tensordot(pts, L, axes=(1, 0))) % p
    return kernels.det_batch(mats, p)


def _lattice_det_values_integer(cm: ChartMatrix) -> list[int]:
    const, lin = _integerized(cm)
    pts = lattice_array()
    out = []
    for pt in pts:
        mat = [
            [
                const[q][t]
                + sum(lin[k][q][t] * int(pt[k]) for k in range(5) if lin[k][q][t])
                for t in range(10)
            ]
            for q in range(10)
        ]
        out.append(_det_int_bareiss(mat))
    return out


@lru_cache(maxsize=None)
def _dense_shift_tables():
    """Monomial gather tables for multiply-by-x_k on the degree-10 basis."""
    from .interp import lattice_points

    monos = lattice_points(10)
    index = {m: i for i, m in enumerate(monos)}
    shifts = []
    for k in range(5):
        src = np.full(len(monos), -1, dtype=np.int64)
        for i, m in enumerate(monos):
            if m[k]:
                lower = list(m)
                lower[k] -= 1
                src[i] = index[tuple(lower)]
        shifts.append((src, src >= 0))
    return tuple(shifts), monos


def _det_dense_modp(cm: ChartMatrix, p: int) -> MultiPoly | None:
    """Symbolic chart determinant mod p on a dense degree-10 monomial basis.

    Subset-DP Laplace expansion; every intermediate minor of a matrix of
    affine-linear entries has degree at most its size, so the fixed
    3003-slot basis never overflows.  Multiplication by an affine-linear
    entry is one scalar pass plus up to five gather-adds, all vectorized.
    """
    shifts, monos = _dense_shift_tables()
    nm = len(monos)
    C = [[int(x) % p for x in row] for row in cm.const]
    L = [[[int(x) % p for x in row] for row in mat] for mat in cm.lin]
    unit = np.zeros(nm, dtype=np.int64)
    unit[0] = 1
    minors: dict[int, np.ndarray] = {0: unit}
    full = (1 << 10) - 1
    for col in range(10):
        nxt: dict[int, np.ndarray] = {}
        for mask, minor in minors.items():
            for i in range(10):
                bit = 1 << i
                if mask & bit:
                    continue
                c0 = C[i][col]
                cs = [L[k][i][col] for k in range(5)]
                if not c0 and not any(cs):
                    continue
                term = (minor * c0) % p if c0 else np.zeros(nm, dtype=np.int64)
                for k in range(5):
                    ck = cs[k]
                    if not ck:
                        continue
                    src, valid = shifts[k]
                    term[valid] = (term[valid] + ck * minor[src[valid]]) % p
                if bin(mask >> (i + 1)).count("1") % 2:
                    term = (-term) % p
                key = mask | bit
                acc = nxt.get(key)
                if acc is None:
                    nxt[key] = term
                else:
                    nxt[key] = (acc + term) % p
        minors = {k: v for k, v in nxt.items() if v.any()}
        if not minors:
            return None
    det = minors.get(full)
    if det is None or not det.any():
        return None
    f = cm.field
    terms = {}
    for i in np.nonzero(det)[0]:
        terms[_expand_exponent(monos[int(i)], cm.vars)] = int(det[int(i)])
    return MultiPoly(f, terms)


def _sextic_poly_from_chart_fast(cm: ChartMatrix) -> MultiPoly | None:
    """Affine chart determinant by the production route, or None if zero.

    Dispatch: over Q, integer lattice samples with an exact degree-6 fit;
    over F_p with p > 10, modular samples and fit (the lattice stays poised
    mod p); over tiny fields, the dense vectorized symbolic determinant
    (the degree-6 collapse is a fact of the field A lives over, so sampling
    through an integer lift would see degree-10 junk).
    """
    f = cm.field
    p = f.characteristic
    if 0 < p <= 10:
        det = _det_dense_modp(cm, p)
        if det is None:
            return None
        if det.total_degree() > 6:
            raise DivisionFailureError(
                f"chart {cm.chart + 1} determinant has affine degree "
                f"{det.total_degree()} > 6; the forced x_c^4 factor is missing"
            )
        return det
    try:
        if p == 0:
            values = _lattice_det_values_integer(cm)
            if not any(values):
                return None
            coeffs = fit_integer(values)
            mono5 = monomials_from_fit(coeffs, QQ)
            terms = {}
            for exp5, val in mono5.items():
                assert val.denominator == 1, "integer determinant with fractional fit"
                if val:
                    terms[_expand_exponent(exp5, cm.vars)] = f.coerce(val.numerator)
        else:
            values = _lattice_det_values_modular(cm, p)
            if not values.any():
                return None
            coeffs = fit_modular(values, p)
            mono5 = monomials_from_fit(coeffs, f)
            terms = {
                _expand_exponent(exp5, cm.vars): c for exp5, c in mono5.items()
            }
    except DegreeOverflow as exc:
        raise DivisionFailureError(
            f"chart {cm.chart + 1} determinant is not of affine degree <= 6 "
            f"(witness lattice point {exc.point}); the forced x_c^4 factor is missing"
        ) from exc
    affine = MultiPoly(f, terms)
    if affine.is_zero():
        return None
    return affine


def _expand_exponent(exp5, vars5) -> tuple[int, ...]:
    exp6 = [0] * 6
    for k, e in enumerate(exp5):
        exp6[vars5[k]] = e
    return tuple(exp6)


def _sextic_poly_from_chart_symbolic(cm: ChartMatrix, method: str) -> MultiPoly | None:
    f = cm.field
    mat = cm.as_polys()
    det = det_expansion(mat, f) if method == "expansion" else det_bareiss(mat, f)
    if det.is_zero():
        return None
    if det.total_degree() > 6:
        raise DivisionFailureError(
            f"chart {cm.chart + 1} determinant has affine degree {det.total_degree()} > 6; "
            "the forced x_c^4 factor is missing"
        )
    return det


def epw_sextic(A: Lagrangian, chart: int | None = None, method: str = "interp") -> EPWSextic:
    """The degree-6 equation of {k >= 1} attached to a Lagrangian.

    ``chart`` (1-based) pins the chart; by default chart 1 is tried and the
    remaining charts are fallbacks.  Degeneracy is declared only after all
    six chart determinants vanish identically, confirmed by a point census
    when the field is small enough to enumerate.

    method: "interp" (lattice sample-and-fit, production), "expansion"
    (symbolic Laplace with shared minors) or "bareiss" (symbolic
    fraction-free elimination).  All three agree exactly; the symbolic
    routes exist to cross-check the fast one.
    """
    require_odd_characteristic(A.field, "epw_sextic")
    if method not in ("interp", "expansion", "bareiss"):
        raise ValueError(f"unknown method {method!r}")
    charts = [chart] if chart is not None else [1, 2, 3, 4, 5, 6]
    for c in charts:
        if c not in range(1, 7):
            raise ValueError("chart must be in 1..6")
        cm = _chart_matrix(A, c - 1)
        if method == "interp":
            affine = _sextic_poly_from_chart_fast(cm)
        else:
            affine = _sextic_poly_from_chart_symbolic(cm, method)
        if affine is None:
            continue
        poly = affine.homogenize(c - 1, 6).normalized()
        if not poly.is_homogeneous(6):
            raise AssertionError("homogenization failed to land in degree 6")
        from .store import content_hash

        return EPWSextic(
            poly=poly,
            provenance={
                "lagrangian_sha": content_hash(A),
                "charts": [c],
                "method": method,
                "dual": bool(A.provenance.get("dual", False)),
                "field": A.field.to_json(),
            },
        )
    detail = "all six chart determinants vanish identically"
    p = A.field.characteristic
    if 0 < p <= 7:
        ks = rank_census(A).counts
        if 0 in ks:
            raise AssertionError(
                "identically vanishing determinants but a census point with k = 0"
            )
        detail += f"; census over F_{p} confirms k >= 1 at every point"
    raise DegenerateSexticError(detail)


# ---------------------------------------------------------------------------
# censuses and loci


def rank_census(A: Lagrangian) -> StratumReport:
    """Counts of k(v) over all points of P^5(F_p)."""
    p = A.field.characteristic
    if p == 0:
        raise ValueError("exhaustive census needs a finite field")
    pts = projective_reps(p, 6)
    basis = np.array(
        [[int(x) for x in row] for row in A.basis_rows], dtype=np.int64
    )
    ks = intersection_dims_with_fibers(basis, pts, p)
    vals, counts = np.unique(ks, return_counts=True)
    return StratumReport(
        field_json=A.field.to_json(),
        total=int(pts.shape[0]),
        counts={int(v): int(c) for v, c in zip(vals, counts)},
    )


def sextic_vanishing_census(A: Lagrangian, sextic: EPWSextic | None = None):
    """Exhaustively verify {s_A = 0} = {k >= 1} over P^5(F_p), p <= 7.

    Returns (StratumReport, True); any mismatch raises
    :class:`CensusMismatchError` with the witness point.
    """
    p = A.field.characteristic
    if not 2 < p <= 7:
        raise ValueError("the census is an odd-p <= 7 feature")
    s = sextic if sextic is not None else epw_sextic(A)
    pts = projective_reps(p, 6)
    exps = np.array([list(e) for e, _ in s.poly.sorted_terms()], dtype=np.int64)
    cfs = np.array([int(c) for _, c in s.poly.sorted_terms()], dtype=np.int64)
    svals = eval_poly_batch(exps, cfs, pts, p)
    basis = np.array([[int(x) for x in row] for row in A.basis_rows], dtype=np.int64)
    ks = intersection_dims_with_fibers(basis, pts, p)
    disagree = (svals == 0) != (ks >= 1)
    if disagree.any():
        i = int(np.nonzero(disagree)[0][0])
        raise CensusMismatchError(pts[i].tolist(), int(svals[i]), int(ks[i]))
    vals, counts = np.unique(ks, return_counts=True)
    report = StratumReport(
        field_json=A.field.to_json(),
        total=int(pts.shape[0]),
        counts={int(v): int(c) for v, c in zip(vals, counts)},
    )
    return report, True


def theta_contains(A: Lagrangian, U: Subspace) -> bool:
    """Whether the decomposable point of a 3-space lies in P(A)."""
    if U.ambient != 6 or U.dim != 3:
        raise ValueError("expected a 3-dimensional subspace of W")
    return A.contains_vector(plucker_point(U).coeffs)


def theta_enumerate(A: Lagrangian) -> list[Subspace]:
    """All decomposable points of P(A) over F_p, p <= 5, as their 3-spaces.

    Enumerates every projective point of P(A) ((p^10 - 1)/(p - 1) of them)
    and keeps those with a 3-dimensional divisor kernel.  Rational input is
    rejected; use :func:`theta_contains` for membership over Q.
    """
    from .enumeration import divisor_kernel_dims
    from .orbits import divisor_kernel

    p = A.field.characteristic
    if p == 0:
        raise ValueError("enumeration is a finite-field feature; use theta_contains")
    if p > 5:
        raise ValueError("enumeration is bounded to p <= 5")
    reps = projective_reps(p, 10)
    basis = np.array([[int(x) for x in row] for row in A.basis_rows], dtype=np.int64)
    tri = reps @ basis % p
    dims = divisor_kernel_dims(tri, p)
    hits = np.nonzero(dims == 3)[0]
    f = A.field
    out = []
    for i in hits:
        kv = KVector(f, 3, [int(x) for x in tri[i]])
        out.append(divisor_kernel(kv))
    return out


def c_UA_points(A: Lagrangian, U: Subspace):
    """Points of P(U) with k >= 2, for a 3-space whose decomposable lies in P(A).

    Away from these points k = 1 exactly on P(U), the decomposable itself
    accounting for the 1.  Returns (point KVector, k) pairs.
    """
    p = A.field.characteristic
    if p == 0:
        raise ValueError("plane census needs a finite field")
    if not theta_contains(A, U):
        raise ValueError("U is not in the decomposable locus of P(A)")
    f = A.field
    reps = projective_reps(p, 3)
    rows = np.array([[int(x) for x in r] for r in U.rows], dtype=np.int64)
    pts = reps @ rows % p
    out = []
    for row in pts:
        coords = [int(x) for x in row]
        k = epw_rank_at(A, coords)
        if k >= 2:
            out.append((KVector(f, 1, scale_to_first_nonzero_one(coords, f)), k))
    return out


def dual_sextic(A: Lagrangian, method: str = "interp") -> EPWSextic:
    """The equation on P(W*) attached to the transported Lagrangian.

    Its zero locus is {w : /\\^3(ker w) cap A != 0}; degeneracy propagates.
    """
    return epw_sextic(dual_transport(A), method=method)


def gradient_point(s: EPWSextic, v) -> DualVector:
    """The projectivized gradient of the sextic at a point of its zero locus.

    At smooth points this is the tangent hyperplane, a point of P(W*) lying
    on the transported-side sextic; a vanishing gradient (the k >= 2 locus)
    raises :class:`SingularPointError`.
    """
    f = s.field
    coords = list(v.coeffs) if isinstance(v, KVector) else [f.coerce(x) for x in v]
    partials = [s.poly.diff(i).eval(coords) for i in range(6)]
    if all(f.is_zero(x) for x in partials):
        raise SingularPointError(f"zero gradient at {coords}; point has k >= 2")
    return DualVector(f, scale_to_first_nonzero_one(partials, f))
