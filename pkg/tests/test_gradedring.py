import random

import pytest

from hessarr.derivbasis import ideal_generators
from hessarr.gradedring import (
    GradedQuotient,
    NotArtinian,
    colon_check,
    hilbert_series,
    lefschetz_check,
    pd_pairing_check,
    product_series,
    quotient_for,
)
from hessarr.lowerideal import exponents, ideal_from_hessenberg, validate_lower_ideal
from hessarr.polyalg import Polynomial, parse_polynomial
from hessarr.rootsystem import RootSystem
from hessarr.volume import volume_polynomial


def test_product_series():
    assert product_series([1, 2]) == [1, 2, 2, 1]
    assert product_series([]) == [1]


def test_b3_example_hilbert():
    rs = RootSystem.build("B", 3)
    q = quotient_for(ideal_from_hessenberg((3, 5, 4), rs))
    assert q.graded_dims == [1, 3, 5, 6, 5, 3, 1]
    assert q.socle_degree == 6


def test_complete_intersection_of_powers():
    # C[x, y] / (x^2, y^3) has basis monomials x^a y^b, a < 2, b < 3
    gens = [parse_polynomial("x1^2", 2), parse_polynomial("x2^3", 2)]
    q = GradedQuotient(gens, 2)
    assert q.graded_dims == [1, 2, 2, 1]
    assert sorted(q.basis(1)) == [(0, 1), (1, 0)]
    assert q.contains(parse_polynomial("x1^2*x2 + x2^3", 2))
    assert not q.contains(parse_polynomial("x1*x2^2", 2))


def test_non_artinian_detected():
    q = GradedQuotient([parse_polynomial("x1^2", 2)], 2, max_degree=4)
    with pytest.raises(NotArtinian):
        q.graded_dims


def test_multiplication_matrix():
    gens = [parse_polynomial("x1^2", 2), parse_polynomial("x2^2", 2)]
    q = GradedQuotient(gens, 2)
    m = q.multiplication_matrix(parse_polynomial("x1 + x2", 2), 1)
    assert len(m) == 2 and all(any(row) for row in m)


@pytest.mark.parametrize("key", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)])
def test_hilbert_palindromic_socle(key, ideals_of):
    for ideal in ideals_of(*key):
        dims = hilbert_series(ideal_generators(ideal), ideal.rs.nvars)
        assert dims == product_series(exponents(ideal))
        assert dims == dims[::-1]
        assert len(dims) - 1 == len(ideal)


@pytest.mark.parametrize("key", [("A", 2), ("B", 2), ("G", 2), ("A", 3)])
def test_colon_along_every_cover(key, ideals_of):
    for ideal in ideals_of(*key):
        for r in ideal.addable_roots():
            rep = colon_check(ideal, r)
            assert rep.passed, rep.table


def test_colon_random_b3_steps(ideals_of):
    rng = random.Random(7)
    ideals = ideals_of("B", 3)
    for _ in range(8):
        ideal = rng.choice(ideals)
        adds = ideal.addable_roots()
        if adds:
            assert colon_check(ideal, rng.choice(adds)).passed


def test_added_root_is_outside_the_bigger_ideal():
    rs = RootSystem.build("A", 2)
    empty = validate_lower_ideal(rs, 0)
    one = empty.with_root(rs.simple[0])
    rep = colon_check(empty, rs.simple[0])
    assert rep.passed
    big = GradedQuotient(ideal_generators(one), rs.nvars)
    assert big.contains(rs.reduced_form(rs.simple[0])) is False


@pytest.mark.parametrize("key", [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)])
def test_pairing_and_lefschetz(key, ideals_of):
    for ideal in ideals_of(*key):
        q = quotient_for(ideal)
        assert pd_pairing_check(q, volume_polynomial(ideal))
        rep = lefschetz_check(ideal, q=q)
        assert rep.passed
        assert rep.verdict == ("trivial" if len(ideal) == 0 else "pass")


def test_lefschetz_frozen_b3():
    rs = RootSystem.build("B", 3)
    rep = lefschetz_check(ideal_from_hessenberg((3, 5, 4), rs))
    assert [(d.dim, d.hl_rank, d.primitive_dim) for d in rep.degrees] == [(1, 1, 1), (3, 3, 2), (5, 5, 2), (6, 6, 1)]
    assert rep.degrees[0].minors == [1931400]


def test_lefschetz_fails_for_a_degenerate_class():
    rs = RootSystem.build("A", 2)
    full = validate_lower_ideal(rs, rs.full_mask)
    rep = lefschetz_check(full, ell=rs.reduced_form(rs.simple[0]))
    assert rep.verdict == "fail"
