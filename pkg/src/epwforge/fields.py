"""Exact coefficient fields: the rationals and odd prime fields F_p.

Scalars are plain Python values (``fractions.Fraction`` for Q, ``int``
canonical representatives in [0, p) for F_p); a field object supplies the
arithmetic.  No floating point is used anywhere in this package.

F_2 is allowed as a field object because exhaustive enumeration over F_2 is
the cheapest oracle for orbit censuses, but every operation that depends on
the alternating wedge pairing on degree-3 forms rejects characteristic 2
(the pairing degenerates to a symmetric form there); those rejections live
at the call sites, not here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, int]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin, valid for all n < 3.3e24.
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldError(ValueError):
    """Invalid field construction or cross-field operand mix."""


class Rationals:
    """The field Q.  Scalars are Fractions, always in lowest terms."""

    characteristic = 0
    name = "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def is_zero(self, a) -> bool:
        return a == 0

    def coerce(self, a) -> Fraction:
        if isinstance(a, Fraction):
            return a
        if isinstance(a, int):
            return Fraction(a)
        raise FieldError(f"cannot coerce {a!r} into Q")

    def rand(self, rng, lo: int = -9, hi: int = 9) -> Fraction:
        # Small integers keep downstream determinants small; genericity over
        # Q only needs a Zariski-dense sample set.
        return Fraction(int(rng.integers(lo, hi + 1)))

    def scalar_to_json(self, a) -> str:
        a = self.coerce(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def scalar_from_json(self, v) -> Fraction:
        if isinstance(v, str):
            return Fraction(v)
        if isinstance(v, int):
            return Fraction(v)
        raise FieldError(f"bad rational literal {v!r}")

    def to_json(self) -> dict:
        return {"field": "Q"}

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """F_p for prime p; scalars are ints reduced to [0, p)."""

    name = "Fp"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p >= 1 << 30:
            raise FieldError(f"prime {p} too large for the batched kernels")
        self.p = p
        self.characteristic = p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1 % self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def coerce(self, a) -> int:
        if isinstance(a, int):
            return a % self.p
        if isinstance(a, Fraction) and a.denominator == 1:
            return a.numerator % self.p
        raise FieldError(f"cannot coerce {a!r} into F_{self.p}")

    def rand(self, rng) -> int:
        return int(rng.integers(0, self.p))

    def scalar_to_json(self, a) -> int:
        return self.coerce(a)

    def scalar_from_json(self, v) -> int:
        if not isinstance(v, int):
            raise FieldError(f"bad F_{self.p} literal {v!r}")
        return v % self.p

    def to_json(self) -> dict:
        return {"field": "Fp", "p": self.p}

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


Field = Union[Rationals, PrimeField]

QQ = Rationals()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def field_from_json(desc: dict) -> Field:
    """Parse a field descriptor: {"field": "Q"} or {"field": "Fp", "p": n}."""
    kind = desc.get("field")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return GF(int(desc["p"]))
    raise FieldError(f"unknown field descriptor {desc!r}")


def field_from_spec(text: str) -> Field:
    """Parse the CLI spelling: "q" or "f<p>" (e.g. "f7")."""
    t = text.strip().lower()
    if t == "q":
        return QQ
    if t.startswith("f") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise FieldError(f"bad field spec {text!r}; expected 'q' or 'f<p>'")


def require_odd_characteristic(field: Field, what: str) -> None:
    """Reject F_2 for operations relying on the alternating degree-3 pairing."""
    if field.characteristic == 2:
        raise FieldError(f"{what} requires characteristic != 2")
