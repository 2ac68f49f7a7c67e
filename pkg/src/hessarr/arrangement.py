"""Ideal arrangements: Poincare polynomial, chambers and the factorization test."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import RowSpace, SparseEchelon
from .lowerideal import LowerIdeal
from .polyalg import Polynomial
from .rootsystem import RootSystem

WHITNEY_MAX = 16
LATTICE_MAX_RANK = 5


@dataclass(frozen=True, eq=False)
class IdealArrangement:
    forms: tuple  # reduced-coordinate linear forms, one per hyperplane
    dim: int
    ideal: LowerIdeal | None = None

    @classmethod
    def from_ideal(cls, ideal: LowerIdeal) -> "IdealArrangement":
        rs = ideal.rs
        forms = tuple(rs.reduced_form(r) for r in ideal.members)
        return cls(forms, rs.nvars, ideal)

    def normals(self) -> list[list]:
        return [list(f.linear_coeffs()) for f in self.forms]

    def __len__(self):
        return len(self.forms)


@dataclass
class PoincareResult:
    coefficients: list[int]
    method: str

    def at(self, t: int) -> int:
        return sum(c * t ** k for k, c in enumerate(self.coefficients))


def _trim(coeffs: list[int]) -> list[int]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poincare_whitney(arr: IdealArrangement) -> list[int]:
    """Sum over all subsets S of (-1)^|S| (-t)^rank(S), by depth-first search."""
    normals = [{i: v for i, v in enumerate(n) if v} for n in arr.normals()]
    if len(normals) > WHITNEY_MAX:
        raise ValueError(f"{len(normals)} hyperplanes exceed the subset-sum bound {WHITNEY_MAX}")
    coeffs = [0] * (arr.dim + 1)

    def visit(start: int, ech: SparseEchelon, size: int):
        r = ech.rank
        coeffs[r] += (-1) ** (size + r)
        for k in range(start, len(normals)):
            child = SparseEchelon()
            child.pivots = dict(ech.pivots)
            child.add(normals[k])
            visit(k + 1, child, size + 1)

    visit(0, SparseEchelon(), 0)
    return _trim(coeffs)


def intersection_lattice(arr: IdealArrangement) -> list[list[frozenset]]:
    """Flats grouped by rank, each flat given by the hyperplanes containing it."""
    normals = arr.normals()
    n = len(normals)
    levels = [[frozenset()]]
    while True:
        nxt = set()
        for flat in levels[-1]:
            for k in range(n):
                if k in flat:
                    continue
                span = RowSpace([normals[i] for i in flat] + [normals[k]], arr.dim)
                closed = frozenset(i for i in range(n) if span.contains(normals[i]))
                nxt.add(closed)
        if not nxt:
            return levels
        levels.append(sorted(nxt, key=sorted))


def poincare_lattice(arr: IdealArrangement) -> list[int]:
    """Sum over flats X of mu(X) (-t)^rank(X), Moebius function by recursion."""
    if arr.dim > LATTICE_MAX_RANK:
        raise ValueError(f"lattice path limited to rank {LATTICE_MAX_RANK}")
    levels = intersection_lattice(arr)
    mu: dict[frozenset, int] = {frozenset(): 1}
    coeffs = [0] * (arr.dim + 1)
    coeffs[0] = 1
    for r in range(1, len(levels)):
        for flat in levels[r]:
            m = -sum(v for y, v in mu.items() if y < flat)
            mu[flat] = m
            coeffs[r] += m * (-1) ** r
    return _trim(coeffs)


def poincare_polynomial(arr: IdealArrangement, method: str = "auto") -> PoincareResult:
    if method == "auto":
        method = "whitney" if len(arr) <= WHITNEY_MAX else "lattice"
    if method == "whitney":
        return PoincareResult(poincare_whitney(arr), "whitney")
    if method == "lattice":
        return PoincareResult(poincare_lattice(arr), "lattice")
    raise ValueError(f"unknown method {method!r}")


def sign_vector_chambers(ideal: LowerIdeal) -> int:
    """Distinct sign patterns of the roots of I on the W-orbit of a dominant point."""
    rs = ideal.rs
    point = rs.dominant_point
    members = ideal.members
    patterns = set()
    for w in rs.weyl_group():
        signs = []
        for r in members:
            v = [0] * rs.ambient_dim
            for k, c in enumerate(r.vector):
                if c:
                    v[w.perm[k]] += w.signs[k] * c
            value = sum(Fraction(a) * b for a, b in zip(v, point))
            if value == 0:
                raise AssertionError("Weyl translate of the dominant point lies on a wall")
            signs.append(value > 0)
        patterns.add(tuple(signs))
    return len(patterns)


class ChamberMismatch(AssertionError):
    pass


def chamber_count(ideal: LowerIdeal) -> int:
    arr = IdealArrangement.from_ideal(ideal)
    by_poincare = poincare_polynomial(arr).at(1)
    by_signs = sign_vector_chambers(ideal)
    if by_poincare != by_signs:
        raise ChamberMismatch(f"pi(A,1) = {by_poincare} but {by_signs} sign vectors")
    return by_signs


def product_poincare(exps: Sequence[int]) -> list[int]:
    """Coefficients of prod (1 + d t)."""
    coeffs = [1]
    for d in exps:
        nxt = coeffs + [0]
        for k in range(len(coeffs)):
            nxt[k + 1] += d * coeffs[k]
        coeffs = nxt
    return _trim(coeffs)


def terao_check(arr: IdealArrangement, exps: Sequence[int]) -> bool:
    return poincare_polynomial(arr).coefficients == product_poincare(exps)
