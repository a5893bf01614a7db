"""Coefficient systems, specialization, clearing, cyclotomic arithmetic."""

import random

import pytest

from garside_homology import PreconditionError, Word, artin_named, circulating_structure
from garside_homology.coefficients import (
    CoefficientSystem,
    cyclotomic,
    cyclotomic_factorization,
    cyclotomic_poly,
    format_cyclotomic,
    make_system,
    scalar_of,
    specialize,
    word_exponent,
)
from garside_homology.homology import compute_homology
from garside_homology.resolution import build_complex
from garside_homology.rings import (
    LaurentPoly,
    PrimeField,
    Rationals,
    poly_divmod,
    poly_from_ints,
    poly_mul,
)

QQ = Rationals()


def test_system_construction():
    assert make_system("trivial").kind == "trivial"
    assert make_system("laurent", "Q").field == QQ
    assert make_system("laurent", "Fp", 5).field == PrimeField(5)
    with pytest.raises(PreconditionError):
        make_system("laurent", "Fp")
    with pytest.raises(PreconditionError):
        make_system("laurent", "R7")
    with pytest.raises(PreconditionError):
        CoefficientSystem("laurent")
    with pytest.raises(PreconditionError):
        CoefficientSystem("sign", QQ)
    with pytest.raises(PreconditionError):
        CoefficientSystem("frobnicate")


def test_scalar_of_basics():
    struct = artin_named("A2")
    one = struct.identity(0)
    atom = struct.word_from_names(["a"])
    assert scalar_of(struct, make_system("trivial"), atom) == 1
    assert scalar_of(struct, make_system("sign"), one) == 1
    assert scalar_of(struct, make_system("sign"), atom) == -1
    laurent = scalar_of(struct, make_system("laurent", "Q"), atom)
    assert laurent == LaurentPoly.term(QQ, 1)


def test_scalar_transport(two_cycle_category):
    s = two_cycle_category  # path lengths: x -> 0, y -> 3
    system = make_system("laurent", "Q")
    u = s.word_from_names(["u"])  # x -> y, length 2
    v = s.word_from_names(["v"])  # y -> x, length 1
    uv = s.word_from_names(["u", "v"])  # loop at x, length 3
    assert word_exponent(s, u) == 2 + 0 - 3
    assert scalar_of(s, system, u) == LaurentPoly.term(QQ, -1)
    assert word_exponent(s, v) == 1 + 3 - 0
    assert word_exponent(s, uv) == 3
    # sign through transport: exponents -1, 4, 3
    assert scalar_of(s, make_system("sign"), u) == -1
    assert scalar_of(s, make_system("sign"), v) == 1
    assert scalar_of(s, make_system("sign"), s.word_from_names(["v", "u"])) == -1


def test_scalar_requires_transport_data(cospan_category):
    with pytest.raises(PreconditionError):
        scalar_of(cospan_category, make_system("sign"), cospan_category.word_from_names(["p"]))
    # trivial does not need it
    assert scalar_of(cospan_category, make_system("trivial"), cospan_category.word_from_names(["p"])) == 1


def test_scalar_is_multiplicative():
    rng = random.Random(99)
    struct = circulating_structure("G13")
    system = make_system("laurent", "Q")
    sign = make_system("sign")
    for _ in range(50):
        m = rng.randint(0, 4)
        u = Word(0, tuple(rng.randrange(3) for _ in range(m)))
        v = Word(0, tuple(rng.randrange(3) for _ in range(rng.randint(0, 4))))
        uv = Word(0, u.atoms + v.atoms)
        assert scalar_of(struct, system, uv) == scalar_of(struct, system, u) * scalar_of(struct, system, v)
        assert scalar_of(struct, sign, uv) == scalar_of(struct, sign, u) * scalar_of(struct, sign, v)


def test_single_object_scalar_depends_on_length_only():
    struct = artin_named("A2")
    system = make_system("laurent", "Q")
    aba = struct.word_from_names(["a", "b", "a"])
    bab = struct.word_from_names(["b", "a", "b"])
    assert scalar_of(struct, system, aba) == scalar_of(struct, system, bab)


def test_specialized_edge_column(two_cycle_category):
    # a 1-cell column under the trivial system hits its two endpoint rows
    cx = build_complex(two_cycle_category, max_dim=1)
    mats = specialize(cx, make_system("trivial"))
    m = mats[1]
    assert (m.rows, m.cols) == (2, 2)
    for j in range(2):
        col = [m.entries[i][j] for i in range(2)]
        assert sorted(col) == [-1, 1]


def test_specialized_products_vanish(builtins):
    for name, struct in builtins.items():
        cx = build_complex(struct)
        for system in (make_system("trivial"), make_system("sign"), make_system("laurent", "Q")):
            if system.kind != "trivial" and len(struct.object_names) > 1 and struct.path_lengths is None:
                continue
            mats = specialize(cx, system)
            for n in range(1, len(mats) - 1):
                assert mats[n].mul(mats[n + 1]).is_zero(), (name, system.kind, n)


def test_column_clearing():
    field = QQ
    entries = [[LaurentPoly(field, {-2: field.one, 0: field.one, 1: field.one})]]
    from garside_homology.coefficients import _clear_laurent

    cleared = _clear_laurent(entries, 1, 1, field, "column")
    assert cleared[0][0] == poly_from_ints(field, [1, 0, 1, 1])  # exponents {0,2,3}
    untouched = _clear_laurent([[LaurentPoly(field, {1: field.one})]], 1, 1, field, "column")
    assert untouched[0][0] == poly_from_ints(field, [0, 1])
    with pytest.raises(PreconditionError):
        _clear_laurent([[LaurentPoly(field, {-1: field.one})]], 1, 1, field, "none")
    with pytest.raises(PreconditionError):
        _clear_laurent([], 0, 0, field, "sideways")


def test_clearing_mode_does_not_change_homology(two_cycle_category):
    system = make_system("laurent", "Q")
    col = compute_homology(two_cycle_category, system, clearing="column")
    glob = compute_homology(two_cycle_category, system, clearing="global")
    for a, b in zip(col.groups, glob.groups):
        assert (a.free_rank, a.torsion) == (b.free_rank, b.torsion)
    # the loop has length 3 and acts by t^3
    assert col.groups[0].torsion == [poly_from_ints(QQ, [-1, 0, 0, 1])]
    assert col.groups[1].is_trivial()


def test_cyclotomic_small_values():
    assert cyclotomic_poly(1, QQ) == poly_from_ints(QQ, [-1, 1])
    assert cyclotomic_poly(2, QQ) == poly_from_ints(QQ, [1, 1])
    # divide t^6 - 1 by Phi_1 Phi_2 Phi_3 independently
    t6m1 = poly_from_ints(QQ, [-1, 0, 0, 0, 0, 0, 1])
    divisor = poly_mul(QQ, poly_mul(QQ, poly_from_ints(QQ, [-1, 1]), poly_from_ints(QQ, [1, 1])),
                       poly_from_ints(QQ, [1, 1, 1]))
    quotient, rem = poly_divmod(QQ, t6m1, divisor)
    assert not rem
    assert cyclotomic_poly(6, QQ) == quotient == poly_from_ints(QQ, [1, -1, 1])
    assert cyclotomic(6).to_poly() == cyclotomic_poly(6, QQ)
    with pytest.raises(PreconditionError):
        cyclotomic_poly(0, QQ)


def test_cyclotomic_product_identity_mod_2():
    f2 = PrimeField(2)
    product = poly_mul(f2, cyclotomic_poly(6, f2), cyclotomic_poly(12, f2))
    cube = poly_from_ints(f2, [1, 1, 1])
    assert product == poly_mul(f2, poly_mul(f2, cube, cube), cube)


def test_cyclotomic_reduction_identity():
    # Phi_{n p^r} = Phi_n^(p^r - p^(r-1)) mod p, for p not dividing n
    for n, p, r in [(3, 2, 1), (1, 3, 2), (5, 2, 2)]:
        field = PrimeField(p)
        lhs = cyclotomic_poly(n * p**r, field)
        base = cyclotomic_poly(n, field)
        rhs = (field.one,)
        for _ in range(p**r - p ** (r - 1)):
            rhs = poly_mul(field, rhs, base)
        assert lhs == rhs, (n, p, r)


def test_cyclotomic_factorization():
    poly = poly_mul(QQ, cyclotomic_poly(6, QQ), cyclotomic_poly(12, QQ))
    assert cyclotomic_factorization(poly, QQ) == [(6, 1), (12, 1)]
    square = poly_mul(QQ, cyclotomic_poly(1, QQ), cyclotomic_poly(1, QQ))
    assert cyclotomic_factorization(square, QQ) == [(1, 2)]
    assert cyclotomic_factorization(poly_from_ints(QQ, [1, 1, 0, 1]), QQ) is None
    assert cyclotomic_factorization(poly_from_ints(QQ, [5]), QQ) == []
    assert cyclotomic_factorization((), QQ) is None
    f2 = PrimeField(2)
    cube = poly_from_ints(f2, [1, 1, 1])
    cubed = poly_mul(f2, poly_mul(f2, cube, cube), cube)
    assert cyclotomic_factorization(cubed, f2) == [(3, 3)]
    assert format_cyclotomic([(3, 3)]) == "Phi_3^3"
    assert format_cyclotomic([(6, 1), (12, 1)]) == "Phi_6*Phi_12"
    assert format_cyclotomic([]) == "1"
