from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hessarr.polyalg import (
    Polynomial,
    apply_diff_operator,
    dim_sym,
    graded_span_rank,
    monomials_of_degree,
    multiples_in_degree,
    parse_polynomial,
    partial_derivative,
    poly_substitute,
    to_text,
)

coeffs = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4))


@st.composite
def polys(draw, nvars=3, max_deg=3):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)]),
            coeffs,
            max_size=5,
        )
    )
    return Polynomial(nvars, terms)


def x(i, n=3):
    return Polynomial.var(n, i)


def test_text_format_matches_canonical_examples():
    p = 2 * x(0) ** 2 + 4 * x(0) * x(1) - x(1) ** 2 + Fraction(1, 2)
    assert to_text(p) == "2 * x1^2 + 4 * x1*x2 - x2^2 + 1/2"
    assert to_text(Polynomial.zero(2)) == "0"
    assert to_text(-x(2)) == "-x3"
    assert to_text(x(0) + x(1), prefix="a") == "a1 + a2"


def test_parse_accepts_products_and_parentheses():
    p = parse_polynomial("(x1-x2)*(x1-x3)*x1", 3)
    expected = (x(0) - x(1)) * (x(0) - x(2)) * x(0)
    assert p == expected
    assert parse_polynomial("2*a1^2+a1*a2", 2, prefix="a") == Polynomial(2, {(2, 0): 2, (1, 1): 1})
    assert parse_polynomial("-x1 + 3/2 x2", 2) == Polynomial.linear([-1, Fraction(3, 2)])


@pytest.mark.parametrize("bad", ["x4", "x1 +", "y1", "(x1", "x1^x2"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_polynomial(bad, 3)


@given(polys())
def test_text_round_trip(p):
    assert parse_polynomial(to_text(p), 3) == p


@given(polys(), polys(), polys())
@settings(max_examples=60)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Polynomial.zero(3)


def test_expansion_against_sympy():
    sympy = pytest.importorskip("sympy")
    s1, s2, s3 = sympy.symbols("x1 x2 x3")
    ours = (x(0) - x(1)) ** 3 * (x(0) + 2 * x(2)) - Fraction(1, 3) * x(1) ** 4
    theirs = sympy.expand((s1 - s2) ** 3 * (s1 + 2 * s3) - sympy.Rational(1, 3) * s2 ** 4)
    terms = {e: Fraction(int(c.p), int(c.q)) for e, c in sympy.Poly(theirs, s1, s2, s3).terms()}
    assert ours == Polynomial(3, terms)


@given(polys(), polys())
@settings(max_examples=60)
def test_derivative_is_a_derivation(a, b):
    for i in range(3):
        assert partial_derivative(a * b, i) == partial_derivative(a, i) * b + a * partial_derivative(b, i)


def test_diff_operator_pairs_monomials():
    # d_{x1^2 x2} (x1^3 x2^2) = 3*2*x1 * 2*x2
    f = Polynomial.monomial((2, 1))
    g = Polynomial.monomial((3, 2))
    assert apply_diff_operator(f, g) == Polynomial.monomial((1, 1), 12)
    assert apply_diff_operator(g, f).is_zero()


@given(polys(max_deg=2), polys(max_deg=2), polys(max_deg=4))
@settings(max_examples=40)
def test_diff_operator_is_multiplicative(f, g, h):
    assert apply_diff_operator(f * g, h) == apply_diff_operator(f, apply_diff_operator(g, h))


def test_substitution_and_evaluation_agree():
    p = x(0) ** 2 * x(1) - 3 * x(2)
    q = poly_substitute(p, 2, x(0) + x(1))
    for pt in [(1, 2, 3), (Fraction(1, 2), -1, 4)]:
        assert q.evaluate(pt) == p.evaluate((pt[0], pt[1], pt[0] + pt[1]))


def test_monomials_and_dimensions():
    mons = monomials_of_degree(3, 2)
    assert len(mons) == dim_sym(3, 2) == 6
    assert mons[0] == (2, 0, 0)
    assert dim_sym(2, -1) == 0 and dim_sym(0, 0) == 1


def test_graded_span_rank_of_coinvariant_ideal():
    # (x1+x2, x1 x2) in two variables: degree 2 piece spanned by x1^2 + x1x2, x1x2 + x2^2, x1x2
    gens = [x(0, 2) + x(1, 2), x(0, 2) * x(1, 2)]
    assert graded_span_rank(multiples_in_degree(gens, 2), 2) == 3
    assert graded_span_rank(multiples_in_degree(gens, 1), 1) == 1
    with pytest.raises(ValueError):
        graded_span_rank([x(0, 2)], 2)


def test_homogeneity_queries():
    assert (x(0) * x(1) + x(2) ** 2).homogeneous_degree() == 2
    assert (x(0) + 1).homogeneous_degree() is None
    assert Polynomial.zero(3).homogeneous_degree() == -1
