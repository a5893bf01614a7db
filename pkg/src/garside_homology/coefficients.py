"""Rank-one coefficient systems and specialization of the differentials.

Three systems act through the length of a morphism: trivial (every atom acts
by 1), sign (atoms of length 1 act by -1), and Laurent (they act by t).  On a
category with several objects the action is transported to the group at the
basepoint through chosen connecting paths; only their lengths matter, so a
structure file ships a path length per object rather than the paths.

Specializing a cell complex turns each chain-valued differential into a
matrix over integers or over Laurent polynomials; Laurent columns are scaled
by powers of the unit t so that entries land in plain polynomials, which is
where Smith normal forms are computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .gaussian import GaussianStructure, PreconditionError, Word
from .linalg import IntegerDomain, PolynomialDomain, ScalarMatrix
from .resolution import CellComplex
from .rings import (
    LaurentPoly,
    Poly,
    PrimeField,
    Rationals,
    poly_divmod,
    poly_from_ints,
    poly_monic,
    poly_trim,
)

KINDS = ("trivial", "sign", "laurent")


@dataclass(frozen=True)
class CoefficientSystem:
    kind: str
    field: object = None  # Rationals() or PrimeField(p); Laurent only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown coefficient system {self.kind!r}")
        if self.kind == "laurent" and self.field is None:
            raise PreconditionError("Laurent coefficients need a field")
        if self.kind != "laurent" and self.field is not None:
            raise PreconditionError(f"{self.kind} coefficients take no field")

    def domain(self):
        if self.kind == "laurent":
            return PolynomialDomain(self.field)
        return IntegerDomain()

    def describe(self) -> str:
        if self.kind == "trivial":
            return "Z (trivial action)"
        if self.kind == "sign":
            return "Z (sign action)"
        return f"{self.field.name}[t,t^-1]"


def make_system(kind: str, field: Optional[str] = None, p: Optional[int] = None) -> CoefficientSystem:
    if p is not None and field != "Fp":
        raise PreconditionError("--p only makes sense with field Fp")
    if kind != "laurent":
        if field is not None:
            raise PreconditionError(f"{kind} coefficients take no field")
        return CoefficientSystem(kind)
    if field in (None, "Q"):
        return CoefficientSystem("laurent", Rationals())
    if field == "Fp":
        if p is None:
            raise PreconditionError("field Fp needs a prime p")
        return CoefficientSystem("laurent", PrimeField(p))
    raise PreconditionError(f"unknown field {field!r}")


def word_exponent(struct: GaussianStructure, word: Word) -> int:
    """Length of the transported morphism: len(u_src) + len(word) - len(u_tgt).

    For a one-object structure this is just the word length.  May be
    negative on categories.
    """
    e = struct.word_length(word)
    if len(struct.object_names) == 1:
        return e
    if struct.path_lengths is None:
        raise PreconditionError(
            "structure has several objects but no basepoint path lengths for transport"
        )
    return e + struct.path_lengths[word.src] - struct.path_lengths[struct.word_target(word)]


def scalar_of(struct: GaussianStructure, system: CoefficientSystem, word: Word):
    """Image of a morphism in the coefficient ring."""
    if system.kind == "trivial":
        return 1
    e = word_exponent(struct, word)
    if system.kind == "sign":
        return -1 if e % 2 else 1
    return LaurentPoly.term(system.field, e)


def specialize(
    cell_complex: CellComplex,
    system: CoefficientSystem,
    clearing: str = "column",
) -> list[Optional[ScalarMatrix]]:
    """Matrices of the differentials over the coefficient ring.

    Entry (B, A) of matrix n is the sum over the terms f[B] of the boundary
    of the n-cell A of multiplicity * scalar_of(f).  For Laurent systems,
    columns containing negative exponents are multiplied by a power of t
    ('column' mode; 'global' scales the whole matrix instead, 'none' demands
    the entries be polynomial already).  Index 0 of the returned list is
    None: degree zero has no outgoing differential here, the resolution
    continues by the augmentation.
    """
    struct = cell_complex.structure
    mats: list[Optional[ScalarMatrix]] = [None]
    laurent = system.kind == "laurent"
    domain = system.domain()
    for n in range(1, len(cell_complex.cells)):
        rows = cell_complex.cells[n - 1]
        cols = cell_complex.cells[n]
        row_index = {cell: i for i, cell in enumerate(rows)}
        if laurent:
            zero = LaurentPoly.zero(system.field)
            work = [[zero] * len(cols) for _ in rows]
        else:
            work = [[0] * len(cols) for _ in rows]
        for j, cell in enumerate(cols):
            for (word, facet), mult in cell_complex.boundaries[n][cell].items():
                i = row_index[facet]
                if laurent:
                    e = word_exponent(struct, word)
                    term = LaurentPoly(system.field, {e: system.field.from_int(mult)})
                    work[i][j] = work[i][j] + term
                else:
                    work[i][j] += mult * scalar_of(struct, system, word)
        if laurent:
            entries = _clear_laurent(work, len(rows), len(cols), system.field, clearing)
        else:
            entries = work
        mats.append(ScalarMatrix(len(rows), len(cols), entries, domain))
    return mats


def _clear_laurent(work, n_rows, n_cols, field, clearing):
    def column_min(j):
        exps = [work[i][j].min_exp() for i in range(n_rows) if work[i][j].coeffs]
        return min(exps) if exps else 0

    if clearing == "column":
        shifts = [max(0, -column_min(j)) for j in range(n_cols)]
    elif clearing == "global":
        overall = min((column_min(j) for j in range(n_cols)), default=0)
        shifts = [max(0, -overall)] * n_cols
    elif clearing == "none":
        shifts = [0] * n_cols
    else:
        raise PreconditionError(f"unknown clearing mode {clearing!r}")
    entries = []
    for i in range(n_rows):
        row = []
        for j in range(n_cols):
            row.append(work[i][j].scale(shifts[j]).to_poly())
        entries.append(row)
    return entries


# -- cyclotomic polynomials ------------------------------------------------------


@lru_cache(maxsize=None)
def _cyclotomic_ints(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    field = Rationals()
    num = poly_from_ints(field, [-1] + [0] * (n - 1) + [1])  # t^n - 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = poly_divmod(field, num, poly_from_ints(field, _cyclotomic_ints(d)))
            if rem:
                raise ArithmeticError("cyclotomic recursion produced a remainder")
    return tuple(int(c) for c in num)


def cyclotomic_poly(n: int, field) -> Poly:
    """The n-th cyclotomic polynomial with coefficients in the field."""
    if n < 1:
        raise PreconditionError("cyclotomic index must be positive")
    return poly_from_ints(field, _cyclotomic_ints(n))


def cyclotomic(n: int, field=None) -> LaurentPoly:
    """Laurent wrapper around cyclotomic_poly (rationals by default)."""
    field = field or Rationals()
    return LaurentPoly.from_poly(field, cyclotomic_poly(n, field))


def _totient(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def cyclotomic_factorization(poly: Poly, field) -> Optional[list[tuple[int, int]]]:
    """Write a polynomial as a product of cyclotomics, if one exists.

    Returns (n, multiplicity) pairs with n ascending, greedily dividing by
    the smallest cyclotomic first (over a prime field the decomposition is
    not unique; this one is deterministic).  None when no exact product
    exists; unit input gives an empty list.
    """
    _, p = poly_monic(field, poly_trim(field, poly))
    if not p:
        return None
    degree = len(p) - 1
    factors: list[tuple[int, int]] = []
    n = 1
    limit = 2 * degree * degree + 2
    while len(p) > 1:
        if n > limit:
            return None
        if _totient(n) <= len(p) - 1:
            phi = cyclotomic_poly(n, field)
            mult = 0
            while True:
                q, r = poly_divmod(field, p, phi)
                if r:
                    break
                p = q
                mult += 1
            if mult:
                factors.append((n, mult))
        n += 1
    return factors


def format_cyclotomic(factors: list[tuple[int, int]]) -> str:
    if not factors:
        return "1"
    parts = []
    for n, mult in factors:
        base = f"Phi_{n}"
        parts.append(base if mult == 1 else f"{base}^{mult}")
    return "*".join(parts)
