from itertools import combinations
from math import comb

import pytest

from hessarr.lowerideal import (
    InvalidHessenberg,
    NotLowerIdeal,
    enumerate_hessenberg,
    enumerate_lower_ideals,
    exponents,
    hessenberg_from_ideal,
    ideal_from_hessenberg,
    validate_lower_ideal,
)
from hessarr.polyalg import parse_polynomial, to_text
from hessarr.rootsystem import RootSystem


def roots_by_text(rs, texts):
    out = []
    for t in texts:
        vec = parse_polynomial(t, rs.ambient_dim).linear_coeffs()
        out.append(rs.root_of_vector(vec)[0])
    return out


def brute_force_ideals(rs):
    n = len(rs.roots)
    found = set()
    for mask in range(1 << n):
        ok = all(
            not (mask >> b.index & 1) or (mask >> a.index & 1)
            for a in rs.roots
            for b in rs.roots
            if rs.le(a, b)
        )
        if ok:
            found.add(mask)
    return found


def brute_dual_partition(heights, n):
    # column lengths of the Young diagram whose row j has i_j boxes, padded by n
    rows = [n] + [heights.count(j) for j in range(1, max(heights, default=0) + 1)]
    out = []
    for k in range(len(rows)):
        nxt = rows[k + 1] if k + 1 < len(rows) else 0
        out += [k] * (rows[k] - nxt)
    return sorted(out)


I2_TEXT = ["x1 - x2", "x1 - x3", "x2 - x3", "x2", "x2 + x3", "x3"]


def test_example_ideal_of_b3_is_valid():
    rs = RootSystem.build("B", 3)
    ideal = validate_lower_ideal(rs, roots_by_text(rs, I2_TEXT))
    assert len(ideal) == 6
    assert exponents(ideal) == [1, 2, 3]
    assert ideal_from_hessenberg((3, 5, 4), rs) == ideal
    assert list(hessenberg_from_ideal(ideal).values) == [3, 5, 4]


def test_non_lower_subset_reports_witness():
    rs = RootSystem.build("A", 3)
    with pytest.raises(NotLowerIdeal) as info:
        validate_lower_ideal(rs, roots_by_text(rs, ["x1 - x3"]))
    assert to_text(info.value.below.linear_form()) in ("x1 - x2", "x2 - x3")
    assert to_text(info.value.above.linear_form()) == "x1 - x3"


def test_empty_and_full():
    rs = RootSystem.build("C", 3)
    assert exponents(validate_lower_ideal(rs, [])) == [0, 0, 0]
    assert exponents(validate_lower_ideal(rs, rs.full_mask)) == [1, 3, 5]


@pytest.mark.parametrize("key", [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("D", 3)])
def test_enumeration_matches_brute_force(key):
    rs = RootSystem.build(*key)
    ours = [i.mask for i in enumerate_lower_ideals(rs)]
    assert len(ours) == len(set(ours))
    assert set(ours) == brute_force_ideals(rs)


def test_a2_ideals():
    rs = RootSystem.build("A", 2)
    assert len(enumerate_lower_ideals(rs)) == 5


@pytest.mark.parametrize("n", range(1, 6))
def test_type_a_counts_are_catalan(n):
    rs = RootSystem.build("A", n)
    assert len(enumerate_lower_ideals(rs)) == comb(2 * n + 2, n + 1) // (n + 2)


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("C", 3), ("G", 2), ("D", 4), ("B", 4)])
def test_exponents_are_dual_partitions(key, ideals_of):
    rs = RootSystem.build(*key)
    for ideal in ideals_of(*key):
        exps = exponents(ideal)
        assert exps == brute_dual_partition([r.height for r in ideal.members], rs.rank)
        assert sum(exps) == len(ideal)


@pytest.mark.parametrize("key", [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 3), ("G", 2)])
def test_hessenberg_round_trip(key, ideals_of):
    rs = RootSystem.build(*key)
    hs = enumerate_hessenberg(rs)
    ideals = ideals_of(*key)
    assert len(hs) == len(ideals)
    assert {ideal_from_hessenberg(h, rs).mask for h in hs} == {i.mask for i in ideals}
    for h in hs:
        assert hessenberg_from_ideal(ideal_from_hessenberg(h, rs)) == h


def test_type_a_hessenberg_examples():
    rs = RootSystem.build("A", 3)
    simple = ideal_from_hessenberg((2, 3, 4, 4), rs)
    assert [to_text(r.linear_form()) for r in simple.members] == ["x1 - x2", "x2 - x3", "x3 - x4"]
    assert ideal_from_hessenberg((4, 4, 4, 4), rs).mask == rs.full_mask


@pytest.mark.parametrize(
    "family,rank,h",
    [("A", 3, (2, 1, 4, 4)), ("A", 3, (2, 3, 4)), ("B", 3, (6, 4, 4)), ("B", 3, (4, 3, 4)), ("G", 2, (3, 2)), ("G", 2, (7, 3))],
)
def test_invalid_hessenberg(family, rank, h):
    with pytest.raises(InvalidHessenberg):
        ideal_from_hessenberg(h, RootSystem.build(family, rank))


def test_type_d_has_no_hessenberg_encoding(ideals_of):
    with pytest.raises(InvalidHessenberg):
        hessenberg_from_ideal(ideals_of("D", 4)[3])


def test_maximal_and_addable_roots():
    rs = RootSystem.build("B", 3)
    ideal = ideal_from_hessenberg((3, 5, 4), rs)
    assert sorted(to_text(r.linear_form()) for r in ideal.maximal_roots()) == ["x1 - x3", "x2 + x3"]
    assert [to_text(r.linear_form()) for r in ideal.addable_roots()] == ["x1"]
