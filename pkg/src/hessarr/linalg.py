"""Exact linear algebra over Q.

Dense routines use fraction-free (Bareiss) elimination on integer matrices
obtained by clearing row denominators. Large sparse systems (GKM conditions,
graded ideal pieces) go through :class:`SparseEchelon`, an incremental
integer echelon form keyed by leading column.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

Number = int | Fraction


def _int_row(row: Sequence[Number]) -> list[int]:
    den = 1
    for c in row:
        if isinstance(c, Fraction) and c.denominator != 1:
            den = lcm(den, c.denominator)
    if den == 1:
        return [int(c) for c in row]
    return [int(c * den) for c in row]


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class SparseEchelon:
    """Incremental row echelon form over Q with integer sparse rows.

    Each stored row has a distinct leading column and no entries in the
    leading columns of rows stored before it that precede its own lead.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict[int, int]) -> tuple[dict[int, int], int | None]:
        heap = list(row)
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            a = row.get(c)
            if not a:
                continue
            prow = self.pivots.get(c)
            if prow is None:
                return row, c
            p = prow[c]
            g = gcd(a, p)
            fa, fp = p // g, a // g
            new = {k: v * fa for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - fp * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
                if k not in seen:
                    heapq.heappush(heap, k)
            row = _primitive(new)
        return row, None

    def add(self, row: Mapping[int, Number]) -> bool:
        """Add a row; returns True if it increased the rank."""
        items = [(k, v) for k, v in row.items() if v]
        if not items:
            return False
        keys = [k for k, _ in items]
        vals = _int_row([v for _, v in items])
        irow = _primitive(dict(zip(keys, vals)))
        red, lead = self._reduce(irow)
        if lead is None:
            return False
        self.pivots[lead] = red
        return True

    def contains(self, row: Mapping[int, Number]) -> bool:
        items = [(k, v) for k, v in row.items() if v]
        if not items:
            return True
        vals = _int_row([v for _, v in items])
        _, lead = self._reduce(dict(zip([k for k, _ in items], vals)))
        return lead is None


def sparse_rank(rows: Sequence[Mapping[int, Number]]) -> int:
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    return ech.rank


# ------------------------------------------------------------------ dense

def bareiss_rank(matrix: Sequence[Sequence[Number]]) -> int:
    """Rank by fraction-free Gaussian elimination."""
    if not matrix:
        return 0
    m = [_int_row(r) for r in matrix]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(col, ncols):
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_det(matrix: Sequence[Sequence[Number]]) -> Number:
    """Determinant of a square rational matrix via Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    den = 1
    rows = []
    for r in matrix:
        d = 1
        for c in r:
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        den *= d
        rows.append([int(c * d) for c in r])
    m = rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    result = Fraction(sign * m[n - 1][n - 1], den)
    return result.numerator if result.denominator == 1 else result


def rref(rows: Sequence[Sequence[Number]], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    ech = SparseEchelon()
    for r in rows:
        ech.add({i: v for i, v in enumerate(r) if v})
    pivots = sorted(ech.pivots)
    dense = []
    for c in pivots:
        row = ech.pivots[c]
        p = Fraction(row[c])
        v = [Fraction(0)] * ncols
        for k, x in row.items():
            v[k] = x / p
        dense.append(v)
    # back substitution: clear entries above each pivot
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for j in range(i):
            f = dense[j][c]
            if f:
                rj, ri = dense[j], dense[i]
                for k in range(c, ncols):
                    if ri[k]:
                        rj[k] -= f * ri[k]
    return dense, pivots


def nullspace(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence[Number]], b: Sequence[Number]) -> list[Fraction]:
    """Unique solution of a square nonsingular system."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    red, pivots = rref(aug, n + 1)
    if pivots != list(range(n)):
        raise ValueError("system is singular")
    return [red[i][n] for i in range(n)]


def inverse(a: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(a[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


class RowSpace:
    """Span of rational vectors with exact normal forms modulo the span.

    The non-pivot columns index a complement basis; ``coordinates`` returns
    the class of a vector in that basis.
    """

    def __init__(self, rows: Sequence[Sequence[Number] | Mapping[int, Number]], ncols: int):
        self.ncols = ncols
        ech = SparseEchelon()
        for r in rows:
            if isinstance(r, Mapping):
                ech.add(r)
            else:
                ech.add({i: v for i, v in enumerate(r) if v})
        dense_rows = []
        for c in sorted(ech.pivots):
            v = [0] * ncols
            for k, x in ech.pivots[c].items():
                v[k] = x
            dense_rows.append(v)
        self.rows, self.pivots = rref(dense_rows, ncols) if dense_rows else ([], [])
        pset = set(self.pivots)
        self.complement = [c for c in range(ncols) if c not in pset]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Sequence[Number]) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                for k in range(p, self.ncols):
                    if row[k]:
                        v[k] -= f * row[k]
        return v

    def coordinates(self, vec: Sequence[Number]) -> list[Fraction]:
        v = self.reduce(vec)
        return [v[c] for c in self.complement]

    def contains(self, vec: Sequence[Number]) -> bool:
        return not any(self.reduce(vec))


class RationalMatrix:
    """Small immutable dense rational matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[Number]]):
        self.rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    def rank(self) -> int:
        return bareiss_rank(self.rows)

    def det(self) -> Number:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.rows)

    def nullspace(self) -> list[list[Fraction]]:
        return nullspace(self.rows, self.ncols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(c) for c in zip(*self.rows)])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        cols = list(zip(*other.rows))
        return RationalMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def leading_minors(self) -> list[Number]:
        return [bareiss_det([r[:k] for r in self.rows[:k]]) for k in range(1, self.nrows + 1)]
