"""Smith normal form over Euclidean domains and homology assembly.

The two supported domains are arbitrary-precision integers and univariate
polynomials over a field (rationals or a prime field).  The normal form
tracks both transforms and the inverse of the column transform, which is
what the kernel/image homology computation needs; determinants of the
transforms are accumulated alongside so unimodularity is checkable exactly.

Pivots are chosen of minimal Euclidean size (absolute value, degree), ties
broken by position, to keep intermediate entries small.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Optional

from .gaussian import ConsistencyError, PreconditionError
from . import rings
from .rings import Poly, poly_monic


class IntegerDomain:
    """Euclidean structure on arbitrary-precision integers."""

    name = "Z"
    zero = 0
    one = 1

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def divmod(self, a, b):
        return divmod(a, b)

    def divides(self, a, b) -> bool:
        """Whether a divides b."""
        return b % a == 0

    def size(self, a) -> int:
        return abs(a)

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def inv_unit(self, a):
        return a

    def unit_normalize(self, a):
        """(unit, normal) with a = unit * normal and normal >= 0."""
        return (-1, -a) if a < 0 else (1, a)

    def fmt(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, IntegerDomain)

    def __hash__(self):
        return hash("Z")


class PolynomialDomain:
    """Euclidean structure on dense polynomials over a field."""

    def __init__(self, field):
        self.field = field
        self.name = f"{field.name}[t]"
        self.zero: Poly = ()
        self.one: Poly = (field.one,)

    def is_zero(self, a) -> bool:
        return not a

    def add(self, a, b):
        return rings.poly_add(self.field, a, b)

    def sub(self, a, b):
        return rings.poly_sub(self.field, a, b)

    def mul(self, a, b):
        return rings.poly_mul(self.field, a, b)

    def neg(self, a):
        return rings.poly_neg(self.field, a)

    def divmod(self, a, b):
        return rings.poly_divmod(self.field, a, b)

    def divides(self, a, b) -> bool:
        return not rings.poly_divmod(self.field, b, a)[1]

    def size(self, a) -> int:
        return len(a)

    def is_unit(self, a) -> bool:
        return len(a) == 1

    def inv_unit(self, a):
        return (self.field.inv(a[0]),)

    def unit_normalize(self, a):
        """(unit, normal) with a = unit * normal and normal monic."""
        lead, monic = poly_monic(self.field, a)
        return (lead,), monic

    def fmt(self, a) -> str:
        return rings.poly_str(self.field, a)

    def __eq__(self, other):
        return isinstance(other, PolynomialDomain) and other.field == self.field

    def __hash__(self):
        return hash(("polydom", self.field))


@dataclass
class ScalarMatrix:
    """Dense rectangular matrix over one of the supported domains."""

    rows: int
    cols: int
    entries: list
    domain: object

    @classmethod
    def zero(cls, rows: int, cols: int, domain) -> "ScalarMatrix":
        return cls(rows, cols, [[domain.zero] * cols for _ in range(rows)], domain)

    @classmethod
    def identity(cls, n: int, domain) -> "ScalarMatrix":
        m = cls.zero(n, n, domain)
        for i in range(n):
            m.entries[i][i] = domain.one
        return m

    def copy(self) -> "ScalarMatrix":
        return ScalarMatrix(self.rows, self.cols, [row[:] for row in self.entries], self.domain)

    def mul(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.cols != other.rows or self.domain != other.domain:
            raise PreconditionError("matrix shapes or domains do not match")
        dom = self.domain
        out = ScalarMatrix.zero(self.rows, other.cols, dom)
        for i in range(self.rows):
            row = self.entries[i]
            for k in range(self.cols):
                a = row[k]
                if dom.is_zero(a):
                    continue
                other_row = other.entries[k]
                out_row = out.entries[i]
                for j in range(other.cols):
                    b = other_row[j]
                    if not dom.is_zero(b):
                        out_row[j] = dom.add(out_row[j], dom.mul(a, b))
        return out

    def is_zero(self) -> bool:
        dom = self.domain
        return all(dom.is_zero(e) for row in self.entries for e in row)

    def __eq__(self, other):
        return (
            isinstance(other, ScalarMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.domain == other.domain
            and self.entries == other.entries
        )


@dataclass
class SNFResult:
    """Diagonalization U * A * V = diag(divisors), divisors a divisibility chain.

    Divisors are unit-normalized (positive integers, monic polynomials) and
    nonzero; rank is their count.  V_inv is the exact inverse of V, and the
    determinants of U and V are units of the domain.
    """

    divisors: list
    rank: int
    U: ScalarMatrix
    V: ScalarMatrix
    V_inv: ScalarMatrix
    det_U: object
    det_V: object


def smith_normal_form(matrix: ScalarMatrix) -> SNFResult:
    dom = matrix.domain
    m, n = matrix.rows, matrix.cols
    A = [row[:] for row in matrix.entries]
    U = ScalarMatrix.identity(m, dom)
    V = ScalarMatrix.identity(n, dom)
    Vinv = ScalarMatrix.identity(n, dom)
    det_u = dom.one
    det_v = dom.one

    def swap_rows(i1, i2):
        nonlocal det_u
        if i1 == i2:
            return
        A[i1], A[i2] = A[i2], A[i1]
        U.entries[i1], U.entries[i2] = U.entries[i2], U.entries[i1]
        det_u = dom.neg(det_u)

    def swap_cols(j1, j2):
        nonlocal det_v
        if j1 == j2:
            return
        for row in A:
            row[j1], row[j2] = row[j2], row[j1]
        for row in V.entries:
            row[j1], row[j2] = row[j2], row[j1]
        Vinv.entries[j1], Vinv.entries[j2] = Vinv.entries[j2], Vinv.entries[j1]
        det_v = dom.neg(det_v)

    def add_row(src, dst, factor):
        """row[dst] += factor * row[src]"""
        if dom.is_zero(factor):
            return
        Asrc, Adst = A[src], A[dst]
        for j in range(n):
            if not dom.is_zero(Asrc[j]):
                Adst[j] = dom.add(Adst[j], dom.mul(factor, Asrc[j]))
        Us, Ud = U.entries[src], U.entries[dst]
        for j in range(m):
            if not dom.is_zero(Us[j]):
                Ud[j] = dom.add(Ud[j], dom.mul(factor, Us[j]))

    def add_col(src, dst, factor):
        """col[dst] += factor * col[src]; V follows, Vinv gets the inverse op."""
        if dom.is_zero(factor):
            return
        for row in A:
            if not dom.is_zero(row[src]):
                row[dst] = dom.add(row[dst], dom.mul(factor, row[src]))
        for row in V.entries:
            if not dom.is_zero(row[src]):
                row[dst] = dom.add(row[dst], dom.mul(factor, row[src]))
        # inverse elementary op acts on rows: row[src] -= factor * row[dst]
        Vs, Vd = Vinv.entries[src], Vinv.entries[dst]
        for j in range(n):
            if not dom.is_zero(Vd[j]):
                Vs[j] = dom.sub(Vs[j], dom.mul(factor, Vd[j]))

    def scale_row(i, unit):
        nonlocal det_u
        if unit == dom.one:
            return
        A[i] = [dom.mul(unit, e) for e in A[i]]
        U.entries[i] = [dom.mul(unit, e) for e in U.entries[i]]
        det_u = dom.mul(det_u, unit)

    def find_pivot(start):
        best = None
        best_size = None
        for i in range(start, m):
            row = A[i]
            for j in range(start, n):
                if not dom.is_zero(row[j]):
                    s = dom.size(row[j])
                    if best_size is None or s < best_size:
                        best, best_size = (i, j), s
        return best

    r = 0
    while True:
        pivot = find_pivot(r)
        if pivot is None:
            break
        swap_rows(r, pivot[0])
        swap_cols(r, pivot[1])
        while True:
            # shrink the pivot against its column, then its row
            dirty = False
            for i in range(r + 1, m):
                if dom.is_zero(A[i][r]):
                    continue
                q, rem = dom.divmod(A[i][r], A[r][r])
                add_row(r, i, dom.neg(q))
                if not dom.is_zero(rem):
                    swap_rows(r, i)
                    dirty = True
            if dirty:
                continue
            for j in range(r + 1, n):
                if dom.is_zero(A[r][j]):
                    continue
                q, rem = dom.divmod(A[r][j], A[r][r])
                add_col(r, j, dom.neg(q))
                if not dom.is_zero(rem):
                    swap_cols(r, j)
                    dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the submatrix for the chain
            offender = None
            for i in range(r + 1, m):
                row = A[i]
                for j in range(r + 1, n):
                    if not dom.is_zero(row[j]) and not dom.divides(A[r][r], row[j]):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, r, dom.one)
        unit, normal = dom.unit_normalize(A[r][r])
        if unit != dom.one:
            scale_row(r, dom.inv_unit(unit))
        A[r][r] = normal
        r += 1
        if r == m or r == n:
            break

    divisors = [A[i][i] for i in range(r)]
    return SNFResult(divisors, r, U, V, Vinv, det_u, det_v)


@dataclass
class HomologyGroup:
    """Free rank plus a divisibility chain of non-unit torsion divisors."""

    free_rank: int
    torsion: list
    domain: object
    notes: list = dataclass_field(default_factory=list)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def homology_at(
    boundary_in: Optional[ScalarMatrix],
    boundary_out: Optional[ScalarMatrix],
    dim_n: int,
    domain,
) -> HomologyGroup:
    """Homology at C_n: kernel of boundary_out modulo image of boundary_in.

    boundary_out is the map leaving C_n (pass None in degree 0, where the
    resolution continues by the augmentation and contributes no relations),
    boundary_in the one entering from C_{n+1} (None when there are no cells
    above).  Shapes are checked against dim_n.
    """
    if boundary_out is None:
        boundary_out = ScalarMatrix.zero(0, dim_n, domain)
    if boundary_in is None:
        boundary_in = ScalarMatrix.zero(dim_n, 0, domain)
    if boundary_out.cols != dim_n or boundary_in.rows != dim_n:
        raise PreconditionError("matrix shapes do not match the cell count")
    if boundary_out.domain != domain or boundary_in.domain != domain:
        raise PreconditionError("matrix domain mismatch")
    if dim_n == 0:
        return HomologyGroup(0, [], domain)

    if not boundary_out.mul(boundary_in).is_zero():
        raise ConsistencyError("composite of consecutive boundaries is nonzero")

    out_snf = smith_normal_form(boundary_out)
    kernel_rank = dim_n - out_snf.rank
    # coordinates of the incoming image in the kernel basis (columns of V
    # past the rank): rows of V_inv * boundary_in below the rank
    W = out_snf.V_inv.mul(boundary_in)
    for i in range(out_snf.rank):
        if any(not domain.is_zero(e) for e in W.entries[i]):
            raise ConsistencyError("image does not lie in the kernel")
    K = ScalarMatrix(kernel_rank, boundary_in.cols, W.entries[out_snf.rank :], domain)
    k_snf = smith_normal_form(K)
    torsion = [d for d in k_snf.divisors if not domain.is_unit(d)]
    return HomologyGroup(kernel_rank - k_snf.rank, torsion, domain)
