import pytest

from hessarr.fixedpoints import (
    chamber_bijection_check,
    eta_bijection_check,
    height_product,
    is_palindromic,
    is_weyl_type,
    nilpotent_fixed_points,
    nilpotent_poincare,
    semisimple_poincare,
    separation_series,
    weyl_type_series,
    weyl_type_subsets,
)
from hessarr.gradedring import product_series
from hessarr.lowerideal import exponents, ideal_from_hessenberg, validate_lower_ideal
from hessarr.rootsystem import RootSystem

KEYS = [("A", 3), ("B", 3), ("C", 3), ("D", 3), ("G", 2), ("A", 4), ("B", 4), ("C", 4), ("D", 4)]


def brute_weyl_type(ideal):
    members = [r.index for r in ideal.members]
    out = []
    for bits in range(1 << len(members)):
        y = 0
        for k, idx in enumerate(members):
            if bits >> k & 1:
                y |= 1 << idx
        if is_weyl_type(ideal, y):
            out.append(y)
    return set(out)


def test_b3_example():
    rs = RootSystem.build("B", 3)
    ideal = ideal_from_hessenberg((3, 5, 4), rs)
    assert nilpotent_poincare(ideal) == [1, 3, 5, 6, 5, 3, 1]
    assert semisimple_poincare(ideal) == [1, 3, 11, 18, 11, 3, 1]
    assert len(nilpotent_fixed_points(ideal)) == 24


def test_a2_semisimple_values():
    rs = RootSystem.build("A", 2)
    assert semisimple_poincare(validate_lower_ideal(rs, 0)) == [6]
    assert semisimple_poincare(validate_lower_ideal(rs, rs.simple)) == [1, 4, 1]
    assert semisimple_poincare(validate_lower_ideal(rs, rs.full_mask)) == [1, 2, 2, 1]


def test_height_product_values():
    rs = RootSystem.build("A", 3)
    assert height_product(validate_lower_ideal(rs, rs.full_mask)) == [1, 3, 5, 6, 5, 3, 1]
    assert height_product(validate_lower_ideal(rs, 0)) == [1]


@pytest.mark.parametrize("key", KEYS)
def test_four_way_identity(key, ideals_of):
    for ideal in ideals_of(*key):
        prod = product_series(exponents(ideal))
        assert nilpotent_poincare(ideal) == prod
        assert height_product(ideal) == prod
        assert weyl_type_series(ideal) == prod
        assert separation_series(ideal) == prod
        assert is_palindromic(semisimple_poincare(ideal))
        assert sum(semisimple_poincare(ideal)) == len(ideal.rs.weyl_group())


@pytest.mark.parametrize("key", KEYS)
def test_bijections(key, ideals_of):
    for ideal in ideals_of(*key):
        assert eta_bijection_check(ideal)
        assert chamber_bijection_check(ideal)


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("C", 3), ("G", 2), ("D", 4)])
def test_backtracking_matches_subset_oracle(key, ideals_of):
    for ideal in ideals_of(*key):
        if len(ideal) <= 12:
            assert set(weyl_type_subsets(ideal)) == brute_weyl_type(ideal)


def test_full_ideal_semisimple_is_length_series():
    rs = RootSystem.build("B", 3)
    full = validate_lower_ideal(rs, rs.full_mask)
    series = [0] * (len(rs.roots) + 1)
    for w in rs.weyl_group():
        series[w.length] += 1
    assert semisimple_poincare(full) == series


def test_not_weyl_type():
    rs = RootSystem.build("A", 2)
    full = validate_lower_ideal(rs, rs.full_mask)
    a, b = rs.simple
    assert not is_weyl_type(full, 1 << a.index | 1 << b.index)
    top = [r for r in rs.roots if r.height == 2][0]
    assert not is_weyl_type(full, 1 << top.index)
    assert is_weyl_type(full, 1 << a.index | 1 << top.index)


def test_weyl_type_bound():
    rs = RootSystem.build("A", 3)
    with pytest.raises(ValueError):
        weyl_type_subsets(validate_lower_ideal(rs, rs.full_mask), bound=3)
