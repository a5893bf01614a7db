"""Exact scalar arithmetic: rationals, prime fields, polynomials, Laurent.

Dense polynomials over a field are tuples of coefficients, constant term
first, with no trailing zeros (the zero polynomial is the empty tuple).
Laurent polynomials carry a finitely supported map from integer exponents to
nonzero field elements.  Everything is exact; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussian import PreconditionError


class Rationals:
    """The field of rational numbers (fractions.Fraction values)."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

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
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def fmt(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class PrimeField:
    """The field with p elements, represented by the integers 0..p-1."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

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
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def fmt(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# -- dense polynomials ---------------------------------------------------------

Poly = tuple


def poly_trim(field, coeffs) -> Poly:
    coeffs = list(coeffs)
    while coeffs and field.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def poly_from_ints(field, ints) -> Poly:
    return poly_trim(field, [field.from_int(c) for c in ints])


def poly_add(field, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = field.add(out[i], c)
    return poly_trim(field, out)


def poly_neg(field, a: Poly) -> Poly:
    return tuple(field.neg(c) for c in a)


def poly_sub(field, a: Poly, b: Poly) -> Poly:
    return poly_add(field, a, poly_neg(field, b))


def poly_mul(field, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if field.is_zero(ca):
            continue
        for j, cb in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(ca, cb))
    return poly_trim(field, out)


def poly_divmod(field, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [field.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = field.inv(b[-1])
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1]
        if field.is_zero(c):
            continue
        factor = field.mul(c, inv_lead)
        quot[shift] = factor
        for i, cb in enumerate(b):
            rem[shift + i] = field.sub(rem[shift + i], field.mul(factor, cb))
    return poly_trim(field, quot), poly_trim(field, rem)


def poly_monic(field, a: Poly) -> tuple:
    """(leading coefficient, monic polynomial) with a = lead * monic."""
    if not a:
        return field.one, ()
    lead = a[-1]
    inv = field.inv(lead)
    return lead, tuple(field.mul(c, inv) for c in a)


def poly_valuation(a: Poly) -> int:
    """Index of the lowest nonzero coefficient (0 for the zero polynomial)."""
    for i, c in enumerate(a):
        if c != 0:
            return i
    return 0


def poly_str(field, a: Poly, var: str = "t") -> str:
    if not a:
        return "0"
    parts = []
    for e in range(len(a) - 1, -1, -1):
        c = a[e]
        if field.is_zero(c):
            continue
        coeff = field.fmt(c)
        if e == 0:
            term = coeff
        else:
            tpow = var if e == 1 else f"{var}^{e}"
            if coeff == "1":
                term = tpow
            elif coeff == "-1":
                term = f"-{tpow}"
            else:
                term = f"{coeff}*{tpow}"
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)


# -- Laurent polynomials --------------------------------------------------------


class LaurentPoly:
    """Finitely supported map exponent -> nonzero coefficient over a field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=None):
        self.field = field
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                if not field.is_zero(c):
                    self.coeffs[e] = c

    @classmethod
    def zero(cls, field) -> "LaurentPoly":
        return cls(field)

    @classmethod
    def term(cls, field, exponent: int, coeff=None) -> "LaurentPoly":
        return cls(field, {exponent: field.one if coeff is None else coeff})

    @classmethod
    def from_poly(cls, field, poly: Poly, shift: int = 0) -> "LaurentPoly":
        return cls(field, {i + shift: c for i, c in enumerate(poly)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = self.field.add(out.get(e, self.field.zero), c)
            if self.field.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly(self.field, out)

    def __neg__(self):
        return LaurentPoly(self.field, {e: self.field.neg(c) for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = self.field.add(out.get(e, self.field.zero), self.field.mul(c1, c2))
                if self.field.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(self.field, out)

    def scale(self, k: int) -> "LaurentPoly":
        """Multiply by the unit t^k."""
        return LaurentPoly(self.field, {e + k: c for e, c in self.coeffs.items()})

    def min_exp(self) -> int:
        if not self.coeffs:
            return 0
        return min(self.coeffs)

    def to_poly(self) -> Poly:
        """Dense coefficients; requires no negative exponents."""
        if not self.coeffs:
            return ()
        if self.min_exp() < 0:
            raise PreconditionError("Laurent polynomial has negative exponents")
        out = [self.field.zero] * (max(self.coeffs) + 1)
        for e, c in self.coeffs.items():
            out[e] = c
        return poly_trim(self.field, out)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.field.fmt(self.coeffs[e])
            if e == 0:
                parts.append(c)
            else:
                base = "t" if e == 1 else f"t^{e}"
                parts.append(base if c == "1" else f"{c}*{base}")
        return "+".join(parts).replace("+-", "-")
