"""Sparse polynomials in x1..x6 over an exact field.

Terms are keyed by length-6 exponent tuples; zero coefficients are never
stored, and iteration/serialization order is graded lexicographic,
descending, so equal polynomials serialize identically.  ``normalized``
produces the canonical scale: over Q, coprime integer coefficients with a
positive graded-lex leading coefficient; over F_p, a monic leading
coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .fields import Field, QQ

NVARS = 6


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class MultiPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict | None = None):
        self.field = field
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = field.coerce(c)
                if field.is_zero(c):
                    continue
                exp = tuple(int(e) for e in exp)
                if len(exp) != NVARS or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp}")
                clean[exp] = c
        self.terms = clean

    # -- constructions -------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "MultiPoly":
        return cls(field, {})

    @classmethod
    def constant(cls, field: Field, c) -> "MultiPoly":
        return cls(field, {(0,) * NVARS: c})

    @classmethod
    def variable(cls, field: Field, i: int) -> "MultiPoly":
        exp = [0] * NVARS
        exp[i] = 1
        return cls(field, {tuple(exp): field.one()})

    @classmethod
    def affine_linear(cls, field: Field, const, lin: dict[int, object]) -> "MultiPoly":
        """const + sum_i lin[i] * x_i."""
        terms = {(0,) * NVARS: const}
        for i, c in lin.items():
            exp = [0] * NVARS
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(field, terms)

    # -- basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention here."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def leading(self):
        """(exponent, coefficient) of the graded-lex greatest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.field != self.field:
            raise ValueError("mixed fields")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(out.get(e, f.zero()), c)
            if f.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(f, out)

    def __neg__(self) -> "MultiPoly":
        f = self.field
        return MultiPoly(f, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        f = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(e, f.zero()), f.mul(c1, c2))
                if f.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(f, out)

    def scale(self, c) -> "MultiPoly":
        f = self.field
        c = f.coerce(c)
        if f.is_zero(c):
            return MultiPoly.zero(f)
        return MultiPoly(f, {e: f.mul(c, x) for e, x in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and other.field == self.field
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field, tuple(self.sorted_terms())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}^{p}" if p > 1 else f"x{i + 1}" for i, p in enumerate(e) if p)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # -- evaluation and substitution --------------------------------------------

    def eval(self, point):
        """Evaluate at a length-6 scalar point."""
        f = self.field
        pt = [f.coerce(x) for x in point]
        acc = f.zero()
        for e, c in self.terms.items():
            v = c
            for x, p in zip(pt, e):
                for _ in range(p):
                    v = f.mul(v, x)
            acc = f.add(acc, v)
        return acc

    def subs_zero(self, variables) -> "MultiPoly":
        """Set the listed variables (0-based) to zero."""
        kill = set(variables)
        f = self.field
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in kill):
                continue
            out[e] = c
        return MultiPoly(f, out)

    def diff(self, i: int) -> "MultiPoly":
        f = self.field
        out: dict = {}
        for e, c in self.terms.items():
            if not e[i]:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = f.mul(f.from_int(e[i]), c)
        return MultiPoly(f, out)

    def homogenize(self, var: int, degree: int) -> "MultiPoly":
        """Pad each term with a power of x_var up to the target degree."""
        f = self.field
        out = {}
        for e, c in self.terms.items():
            d = sum(e)
            if d > degree:
                raise ValueError(f"term of degree {d} exceeds target {degree}")
            if e[var]:
                raise ValueError(f"variable x{var + 1} already present in {e}")
            ne = list(e)
            ne[var] = degree - d
            out[tuple(ne)] = c
        return MultiPoly(f, out)

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact polynomial division; raises if the remainder is nonzero."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        rem = MultiPoly(f, dict(self.terms))
        q: dict = {}
        dexp, dc = other.leading()
        dinv = f.inv(dc)
        while not rem.is_zero():
            e, c = rem.leading()
            qe = tuple(a - b for a, b in zip(e, dexp))
            if any(x < 0 for x in qe):
                raise ArithmeticError("inexact polynomial division")
            qc = f.mul(c, dinv)
            q[qe] = f.add(q.get(qe, f.zero()), qc)
            rem = rem - MultiPoly(f, {qe: qc}) * other
        return MultiPoly(f, q)

    # -- canonical scale ---------------------------------------------------------

    def normalized(self) -> "MultiPoly":
        """Canonical scalar multiple.

        Q: clear denominators, divide by the coefficient gcd, make the
        graded-lex leading coefficient positive.  F_p: monic leading
        coefficient.  Zero stays zero.
        """
        if self.is_zero():
            return self
        f = self.field
        if f is QQ or f == QQ:
            denom_lcm = 1
            for c in self.terms.values():
                d = c.denominator
                denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
            nums = [int(c * denom_lcm) for c in self.terms.values()]
            g = 0
            for n in nums:
                g = gcd(g, abs(n))
            lead_exp, lead_c = self.leading()
            sign = -1 if lead_c < 0 else 1
            s = Fraction(denom_lcm * sign, g)
            return self.scale(s)
        _, lead_c = self.leading()
        return self.scale(f.inv(lead_c))

    # -- serialization -------------------------------------------------------------

    def to_json_terms(self):
        f = self.field
        return [
            {"exp": list(e), "c": f.scalar_to_json(c)} for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json_terms(cls, field: Field, items) -> "MultiPoly":
        f = field
        terms: dict = {}
        for item in items:
            e = tuple(int(x) for x in item["exp"])
            c = f.scalar_from_json(item["c"])
            terms[e] = f.add(terms.get(e, f.zero()), c)
        return cls(f, terms)


def det_bareiss(mat, field: Field) -> MultiPoly:
    """Fraction-free Bareiss determinant of a square MultiPoly matrix.

    Every intermediate entry is a minor of the input, so divisions by the
    previous pivot are exact in the polynomial ring.  Row pivoting only;
    a fully zero pivot column means determinant zero.
    """
    n = len(mat)
    M = [[p for p in row] for row in mat]
    if any(len(row) != n for row in M):
        raise ValueError("square matrix required")
    if n == 0:
        return MultiPoly.constant(field, field.one())
    sign = 1
    prev = MultiPoly.constant(field, field.one())
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num.exact_div(prev)
            M[i][k] = MultiPoly.zero(field)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def det_expansion(mat, field: Field) -> MultiPoly:
    """Determinant by Laplace expansion with shared minors.

    Dynamic programming over row subsets: the k-column minors are built
    from the (k-1)-column ones, so entries that are linear forms are only
    ever multiplied into a single growing polynomial.  For matrices of
    affine-linear entries this does far less coefficient arithmetic than
    elimination.
    """
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("square matrix required")
    one = MultiPoly.constant(field, field.one())
    if n == 0:
        return one
    minors = {0: one}
    for col in range(n):
        nxt: dict[int, MultiPoly] = {}
        for mask, minor in minors.items():
            if minor.is_zero():
                continue
            for i in range(n):
                bit = 1 << i
                if mask & bit:
                    continue
                entry = mat[i][col]
                if entry.is_zero():
                    continue
                term = minor * entry
                # Laplace sign along the newest column: parity of the used
                # rows sitting below row i.
                if bin(mask >> (i + 1)).count("1") % 2:
                    term = -term
                key = mask | bit
                acc = nxt.get(key)
                nxt[key] = term if acc is None else acc + term
        minors = nxt
        if not minors:
            return MultiPoly.zero(field)
    return minors.get((1 << n) - 1, MultiPoly.zero(field))
