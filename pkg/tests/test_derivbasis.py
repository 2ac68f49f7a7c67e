from fractions import Fraction

import pytest

from hessarr.derivbasis import (
    Derivation,
    UnsupportedType,
    check_recursion,
    constant_derivation,
    euler_derivation,
    ideal_generators,
    is_logarithmic,
    psi,
    psi_basis,
    saito_certificate,
)
from hessarr.lowerideal import exponents, ideal_from_hessenberg, validate_lower_ideal
from hessarr.polyalg import Polynomial, graded_span_rank, multiples_in_degree, parse_polynomial
from hessarr.rootsystem import RootSystem


def amb(rs, text):
    return parse_polynomial(text, rs.ambient_dim)


def derivation(rs, *texts):
    return Derivation(rs, tuple(amb(rs, t) for t in texts))


@pytest.fixture
def b3():
    return RootSystem.build("B", 3)


def test_b3_psi_examples(b3):
    assert psi(b3, 1, 3) == derivation(b3, "(x1-x2)*(x1-x3)", "0", "0")
    assert psi(b3, 3, 4) == derivation(b3, "x1", "x2", "x3")
    assert psi(b3, 2, 5) == derivation(b3, "(x1-x3)*x1*(x1+x3)", "(x2-x3)*x2*(x2+x3)", "0")
    assert psi(b3, 1, 6) == derivation(b3, "(x1-x2)*(x1-x3)*x1*(x1+x3)*(x1+x2)", "0", "0")


def test_c3_psi_examples():
    rs = RootSystem.build("C", 3)
    assert psi(rs, 2, 4) == derivation(rs, "(x1-x3)*(x1+x3)", "(x2-x3)*(x2+x3)", "0")
    assert psi(rs, 1, 4) == derivation(rs, "(x1-x2)*(x1-x3)*(x1+x3)", "0", "0")
    assert psi(rs, 1, 5) == derivation(rs, "(x1-x2)*(x1-x3)*(x1+x3)*(x1+x2)", "0", "0")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_c_and_b_agree_in_the_last_column(n):
    b, c = RootSystem.build("B", n), RootSystem.build("C", n)
    for i in range(1, n + 1):
        assert psi(b, i, 2 * n + 1 - i).coeffs == psi(c, i, 2 * n + 1 - i).coeffs


def test_presentation_golden(b3):
    gens = ideal_generators(ideal_from_hessenberg((3, 5, 4), b3))
    assert gens == [
        parse_polynomial("(x1-x2)*(x1-x3)*x1", 3),
        parse_polynomial("(x1-x3)*(x1+x3)*x1^2 + (x2-x3)*(x2+x3)*x2^2", 3),
        parse_polynomial("x1^2+x2^2+x3^2", 3),
    ]


def test_g2_closed_forms():
    rs = RootSystem.build("G", 2)
    assert psi(rs, 2, 3) == euler_derivation(rs)
    assert psi(rs, 1, 1) == derivation(rs, "0", "-1", "1")


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("C", 4), ("G", 2)])
def test_recursions_match_closed_forms(family, rank):
    assert check_recursion(family, rank)


def test_euler_and_constant_derivations(b3, ideals_of):
    for ideal in ideals_of("B", 3):
        assert is_logarithmic(euler_derivation(b3), ideal)
    a3 = RootSystem.build("A", 3)
    single = validate_lower_ideal(a3, [a3.simple[0]])
    d1 = constant_derivation(a3, [1, 0, 0, 0])
    assert not is_logarithmic(d1, single)
    assert is_logarithmic(euler_derivation(a3), single)


def test_trace_zero_is_enforced():
    rs = RootSystem.build("A", 2)
    with pytest.raises(ValueError):
        derivation(rs, "1", "0", "0")


@pytest.mark.parametrize("key", [("A", 3), ("A", 4), ("B", 3), ("B", 4), ("C", 3), ("C", 4), ("G", 2)])
def test_bases_are_logarithmic_and_certified(key, ideals_of):
    for ideal in ideals_of(*key):
        basis = psi_basis(ideal)
        assert all(is_logarithmic(t, ideal) for t in basis)
        cert = saito_certificate(basis, ideal)
        assert cert.passed, cert.summary()
        assert cert.constant != 0
        gens = ideal_generators(ideal)
        assert sorted(g.homogeneous_degree() for g in gens) == [d + 1 for d in exponents(ideal)]


def test_saito_on_example_ideal(b3):
    ideal = ideal_from_hessenberg((3, 5, 4), b3)
    cert = saito_certificate(psi_basis(ideal), ideal)
    expected = parse_polynomial("(x1-x2)*(x1-x3)*(x2-x3)*x2*(x2+x3)*x3", 3)
    assert cert.determinant == expected * cert.constant
    assert cert.constant == 1


def test_saito_on_empty_ideal(b3):
    empty = validate_lower_ideal(b3, 0)
    unit = [constant_derivation(b3, [int(i == k) for k in range(3)]) for i in range(3)]
    cert = saito_certificate(unit, empty)
    assert cert.passed and cert.determinant == Polynomial.const(3, 1)


def test_dependent_derivations_fail(b3):
    ideal = ideal_from_hessenberg((3, 5, 4), b3)
    basis = psi_basis(ideal)
    cert = saito_certificate([basis[0], basis[0], basis[2]], ideal)
    assert not cert.passed
    assert cert.determinant.is_zero()


def test_degree_sum_mismatch_reported(b3):
    ideal = ideal_from_hessenberg((3, 5, 4), b3)
    euler = euler_derivation(b3)
    cert = saito_certificate([euler, euler.scale(Polynomial.var(3, 0)), psi(b3, 1, 3)], ideal)
    assert not cert.passed and not cert.degrees_ok


def test_type_d_is_unsupported(ideals_of):
    with pytest.raises(UnsupportedType):
        psi_basis(ideals_of("D", 3)[-1])


def invariant_generators(rs):
    """Basic invariants as reduced polynomials."""
    m = rs.ambient_dim
    xs = [Polynomial.var(m, k) for k in range(m)]

    def power_sum(k):
        s = Polynomial.zero(m)
        for v in xs:
            s = s + v ** k
        return rs.reduce(s)

    if rs.family == "A":
        return [power_sum(k) for k in range(2, m + 1)]
    if rs.family in ("B", "C"):
        return [power_sum(2 * k) for k in range(1, m + 1)]
    if rs.family == "G":
        return [power_sum(2), power_sum(6)]
    raise ValueError


@pytest.mark.parametrize("key", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)])
def test_full_ideal_generates_coinvariant_ideal(key):
    rs = RootSystem.build(*key)
    full = validate_lower_ideal(rs, rs.full_mask)
    ours = ideal_generators(full)
    inv = invariant_generators(rs)
    for w in rs.weyl_group():
        for f in inv:
            assert rs.act_on_polynomial(w, f) == f
    for d in range(len(rs.roots) + 2):
        a = graded_span_rank(multiples_in_degree(ours, d), d)
        b = graded_span_rank(multiples_in_degree(inv, d), d)
        both = graded_span_rank(multiples_in_degree(ours + inv, d), d)
        assert a == b == both
