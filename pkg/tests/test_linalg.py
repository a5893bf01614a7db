"""Smith normal forms verified against transforms, minors, and random ops."""

import itertools
import random

import pytest

from garside_homology import ConsistencyError, PreconditionError, artin_named
from garside_homology.linalg import (
    IntegerDomain,
    PolynomialDomain,
    ScalarMatrix,
    SNFResult,
    homology_at,
    smith_normal_form,
)
from garside_homology.rings import PrimeField, Rationals, poly_from_ints

ZZ = IntegerDomain()
QQ = Rationals()
QPOLY = PolynomialDomain(QQ)


def int_matrix(rows):
    return ScalarMatrix(len(rows), len(rows[0]) if rows else 0, [list(r) for r in rows], ZZ)


def poly_matrix(field, rows):
    dom = PolynomialDomain(field)
    ent = [[poly_from_ints(field, e) for e in row] for row in rows]
    return ScalarMatrix(len(rows), len(rows[0]) if rows else 0, ent, dom)


def check_snf(matrix: ScalarMatrix, result: SNFResult):
    dom = matrix.domain
    # U * A * V is the diagonal of the divisors
    product = result.U.mul(matrix).mul(result.V)
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            expected = result.divisors[i] if i == j and i < result.rank else dom.zero
            assert product.entries[i][j] == expected
    # transforms invertible: determinants are units
    assert dom.is_unit(result.det_U)
    assert dom.is_unit(result.det_V)
    # V_inv really inverts V
    n = matrix.cols
    assert result.V.mul(result.V_inv) == ScalarMatrix.identity(n, dom)
    # divisibility chain
    for a, b in zip(result.divisors, result.divisors[1:]):
        assert dom.divides(a, b)


def test_snf_basic_examples():
    res = smith_normal_form(int_matrix([[2, 0], [0, 3]]))
    assert res.divisors == [1, 6]
    check_snf(int_matrix([[2, 0], [0, 3]]), res)

    zero = smith_normal_form(int_matrix([[0, 0], [0, 0]]))
    assert zero.rank == 0 and zero.divisors == []

    diag = poly_matrix(QQ, [[[-1, 1], []], [[], [-1, 1]]])
    res = smith_normal_form(diag)
    assert res.divisors == [poly_from_ints(QQ, [-1, 1])] * 2
    check_snf(diag, res)


def test_snf_normalizes_units():
    res = smith_normal_form(int_matrix([[-2]]))
    assert res.divisors == [2]
    f5 = PrimeField(5)
    mat = poly_matrix(f5, [[[3, 1]]])  # 3 + t, leading coeff already 1
    res = smith_normal_form(mat)
    assert res.divisors == [poly_from_ints(f5, [3, 1])]
    mat2 = poly_matrix(f5, [[[1, 2]]])  # 1 + 2t -> monic 3 + t
    res2 = smith_normal_form(mat2)
    assert res2.divisors == [poly_from_ints(f5, [3, 1])]
    check_snf(mat2, res2)


def minors_gcd_int(rows, k):
    """gcd of all k x k minors; determinant by expansion, exact."""
    m, n = len(rows), len(rows[0])

    def det(sub):
        size = len(sub)
        if size == 1:
            return sub[0][0]
        total = 0
        for j in range(size):
            if sub[0][j]:
                minor = [r[:j] + r[j + 1 :] for r in sub[1:]]
                total += (-1) ** j * sub[0][j] * det(minor)
        return total

    import math

    g = 0
    for rs in itertools.combinations(range(m), k):
        for cs in itertools.combinations(range(n), k):
            g = math.gcd(g, det([[rows[i][j] for j in cs] for i in rs]))
    return g


def test_snf_divisors_match_determinantal_divisors():
    rng = random.Random(1234)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        mat = int_matrix(rows)
        res = smith_normal_form(mat)
        check_snf(mat, res)
        prod = 1
        for k, d in enumerate(res.divisors, start=1):
            prod *= d
            assert prod == minors_gcd_int(rows, k), (rows, res.divisors)
        if res.rank < min(m, n):
            assert minors_gcd_int(rows, res.rank + 1) == 0


def test_snf_random_integer_matrices():
    rng = random.Random(42)
    for _ in range(100):
        m = rng.randint(0, 5)
        n = rng.randint(0, 5)
        rows = [[rng.randint(-30, 30) for _ in range(n)] for _ in range(m)]
        mat = ScalarMatrix(m, n, rows, ZZ)
        check_snf(mat, smith_normal_form(mat))


def test_snf_random_polynomial_matrices():
    for field in (QQ, PrimeField(2), PrimeField(5)):
        rng = random.Random(hash(field) % 100000)
        for _ in range(100):
            m = rng.randint(0, 3)
            n = rng.randint(0, 3)
            rows = [
                [[rng.randint(-3, 3) for _ in range(rng.randint(0, 3))] for _ in range(n)]
                for _ in range(m)
            ]
            mat = poly_matrix(field, rows)
            check_snf(mat, smith_normal_form(mat))


def unimodular_shuffle(rng, mat: ScalarMatrix) -> ScalarMatrix:
    out = mat.copy()
    dom = out.domain
    for _ in range(8):
        kind = rng.randrange(4)
        if out.rows > 1 and kind == 0:
            i, j = rng.sample(range(out.rows), 2)
            f = dom.one if rng.random() < 0.5 else dom.neg(dom.one)
            for c in range(out.cols):
                out.entries[j][c] = dom.add(out.entries[j][c], dom.mul(f, out.entries[i][c]))
        elif out.cols > 1 and kind == 1:
            i, j = rng.sample(range(out.cols), 2)
            for r in range(out.rows):
                out.entries[r][j] = dom.add(out.entries[r][j], out.entries[r][i])
        elif out.rows > 1 and kind == 2:
            i, j = rng.sample(range(out.rows), 2)
            out.entries[i], out.entries[j] = out.entries[j], out.entries[i]
        elif out.cols > 1 and kind == 3:
            i, j = rng.sample(range(out.cols), 2)
            for r in range(out.rows):
                out.entries[r][i], out.entries[r][j] = out.entries[r][j], out.entries[r][i]
    return out


def test_snf_invariant_under_unimodular_ops():
    from garside_homology.coefficients import make_system, specialize
    from garside_homology.resolution import build_complex

    rng = random.Random(7)
    cx = build_complex(artin_named("A3"))
    for system in (make_system("trivial"), make_system("sign")):
        mats = specialize(cx, system)
        for mat in mats[1:]:
            base = smith_normal_form(mat).divisors
            for _ in range(20):
                assert smith_normal_form(unimodular_shuffle(rng, mat)).divisors == base


def test_homology_at_shapes_and_errors():
    d1 = int_matrix([[1, -1]])
    with pytest.raises(PreconditionError):
        homology_at(None, d1, 3, ZZ)
    bad_pair_out = int_matrix([[1, 0]])
    bad_pair_in = int_matrix([[1], [1]])
    with pytest.raises(ConsistencyError):
        homology_at(bad_pair_in, bad_pair_out, 2, ZZ)


def test_homology_at_direct_cases():
    # kernel Z^2 with image spanned by (2, 0): H = Z + Z_2
    b_in = int_matrix([[2], [0]])
    group = homology_at(b_in, None, 2, ZZ)
    assert (group.free_rank, group.torsion) == (1, [2])
    # full-rank boundary out: nothing left
    b_out = int_matrix([[1, 0], [0, 1]])
    group = homology_at(None, b_out, 2, ZZ)
    assert group.is_trivial()
    # zero everything: free of rank dim
    group = homology_at(None, None, 3, ZZ)
    assert (group.free_rank, group.torsion) == (3, [])


def test_homology_rank_identity():
    # free rank equals dim C_n - rank out - rank in on random consistent data:
    # build B with columns inside ker(A) by construction
    rng = random.Random(31415)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        A = int_matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)])
        snf = smith_normal_form(A)
        kernel_cols = [
            [snf.V.entries[i][j] for j in range(snf.rank, n)] for i in range(n)
        ]
        k = n - snf.rank
        if k == 0:
            continue
        mix = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(k)]
        B_entries = [
            [sum(kernel_cols[i][t] * mix[t][c] for t in range(k)) for c in range(2)]
            for i in range(n)
        ]
        B = int_matrix(B_entries) if n else None
        group = homology_at(B, A, n, ZZ)
        rank_b = smith_normal_form(B).rank
        assert group.free_rank == n - snf.rank - rank_b


def test_universal_coefficient_rank_inequality():
    # dim_Fp H_n(C (x) Fp) >= free rank of H_n(C over Z), per prime and degree
    from garside_homology.coefficients import make_system, specialize
    from garside_homology.homology import compute_homology
    from garside_homology.resolution import build_complex
    from garside_homology import circulating_structure

    for struct in (artin_named("A3"), circulating_structure("G7")):
        for kind in ("trivial", "sign"):
            system = make_system(kind)
            integral = compute_homology(struct, system)
            cx = integral.cell_complex
            mats = specialize(cx, system)
            for p in (2, 3, 5):
                field = PrimeField(p)
                dom = PolynomialDomain(field)

                def reduce_mat(mat):
                    if mat is None:
                        return None
                    ent = [
                        [poly_from_ints(field, [e]) for e in row]
                        for row in mat.entries
                    ]
                    return ScalarMatrix(mat.rows, mat.cols, ent, dom)

                for n, group in enumerate(integral.groups):
                    b_out = reduce_mat(mats[n]) if 1 <= n < len(mats) else None
                    b_in = reduce_mat(mats[n + 1]) if n + 1 < len(mats) else None
                    modp = homology_at(b_in, b_out, len(cx.cells[n]), dom)
                    dim_p = modp.free_rank + len(modp.torsion)
                    assert dim_p >= group.free_rank
