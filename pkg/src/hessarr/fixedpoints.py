"""Torus-fixed points of regular nilpotent and regular semisimple Hessenberg
varieties, their Poincare polynomials, and Weyl-type subsets.

Poincare polynomials are coefficient lists in s, where s^k records
cohomological degree 2k.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lowerideal import LowerIdeal
from .rootsystem import WeylElement

WEYL_TYPE_MAX = 24


def _popcount(x: int) -> int:
    return bin(x).count("1")


def nilpotent_fixed_points(ideal: LowerIdeal) -> list[WeylElement]:
    """w with w^-1(Delta) inside (-I) union Phi+."""
    rs = ideal.rs
    out = []
    for w in rs.weyl_group():
        winv = rs.inverse(w)
        ok = True
        for a in rs.simple:
            idx, sign = winv.root_images[a.index]
            if sign < 0 and not (ideal.mask >> idx & 1):
                ok = False
                break
        if ok:
            out.append(w)
    return out


def _series(exps: Sequence[int]) -> list[int]:
    n = max(exps, default=0)
    out = [0] * (n + 1)
    for e in exps:
        out[e] += 1
    return out


def nilpotent_poincare(ideal: LowerIdeal) -> list[int]:
    return _series([_popcount(w.inversions & ideal.mask) for w in nilpotent_fixed_points(ideal)])


def semisimple_poincare(ideal: LowerIdeal) -> list[int]:
    return _series([_popcount(w.inversions & ideal.mask) for w in ideal.rs.weyl_group()])


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[Fraction], list[Fraction]]:
    num = [Fraction(c) for c in num]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / lead
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return q, num


def height_product(ideal: LowerIdeal) -> list[int]:
    """prod over alpha in I of (1 - s^(ht+1)) / (1 - s^ht), divided out exactly."""
    num, den = [1], [1]
    for r in ideal.members:
        h = r.height
        num = _poly_mul(num, [1] + [0] * h + [-1])
        den = _poly_mul(den, [1] + [0] * (h - 1) + [-1])
    q, rem = _poly_divmod(num, den)
    if any(rem) or any(c.denominator != 1 for c in q):
        raise ArithmeticError("height product is not a polynomial")
    out = [int(c) for c in q]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def is_palindromic(coeffs: Sequence[int]) -> bool:
    return list(coeffs) == list(coeffs)[::-1]


def is_weyl_type(ideal: LowerIdeal, subset: int) -> bool:
    """Closed and co-closed inside I (bitmask over all roots)."""
    if subset & ~ideal.mask:
        return False
    for a, b, c in ideal.rs.sum_triples:
        if not (ideal.mask >> c & 1):
            continue
        ina, inb, inc = subset >> a & 1, subset >> b & 1, subset >> c & 1
        if ina and inb and not inc:
            return False
        if not ina and not inb and inc:
            return False
    return True


def weyl_type_subsets(ideal: LowerIdeal, bound: int = WEYL_TYPE_MAX) -> list[int]:
    """All Weyl-type subsets of I as bitmasks, by height-ordered backtracking."""
    if len(ideal) > bound:
        raise ValueError(f"|I| = {len(ideal)} exceeds bound {bound}")
    rs = ideal.rs
    order = sorted(ideal.members, key=lambda r: (r.height, r.index))
    pairs: dict[int, list[tuple[int, int]]] = {r.index: [] for r in order}
    for a, b, c in rs.sum_triples:
        if c in pairs:
            pairs[c].append((a, b))
    out = []

    def go(pos: int, chosen: int):
        if pos == len(order):
            out.append(chosen)
            return
        c = order[pos].index
        must_in = any(chosen >> a & 1 and chosen >> b & 1 for a, b in pairs[c])
        must_out = any(not (chosen >> a & 1) and not (chosen >> b & 1) for a, b in pairs[c])
        if not must_in:
            go(pos + 1, chosen)
        if not must_out:
            go(pos + 1, chosen | (1 << c))

    go(0, 0)
    return sorted(out, key=lambda m: (_popcount(m), m))


def weyl_type_series(ideal: LowerIdeal) -> list[int]:
    return _series([_popcount(y) for y in weyl_type_subsets(ideal)])


def eta_bijection_check(ideal: LowerIdeal) -> bool:
    """w -> N(w) & I is a bijection from fixed points onto Weyl-type subsets."""
    images = [w.inversions & ideal.mask for w in nilpotent_fixed_points(ideal)]
    return len(set(images)) == len(images) and set(images) == set(weyl_type_subsets(ideal))


def chamber_negative_sets(ideal: LowerIdeal) -> set[int]:
    """f(C) = {alpha in I : alpha < 0 on C} for each chamber, via the dominant point."""
    rs = ideal.rs
    point = rs.dominant_point
    out = set()
    for w in rs.weyl_group():
        neg = 0
        for r in ideal.members:
            v = [0] * rs.ambient_dim
            for k, c in enumerate(r.vector):
                if c:
                    v[w.perm[k]] += w.signs[k] * c
            if sum(Fraction(a) * b for a, b in zip(v, point)) < 0:
                neg |= 1 << r.index
        out.add(neg)
    return out


def chamber_bijection_check(ideal: LowerIdeal) -> bool:
    return chamber_negative_sets(ideal) == set(weyl_type_subsets(ideal))


def separation_series(ideal: LowerIdeal) -> list[int]:
    """sum over chambers C of s^d(C, C0) with d the number of separating hyperplanes."""
    return _series([_popcount(m) for m in chamber_negative_sets(ideal)])
