"""The graded quotient R/a(I) by per-degree linear algebra.

Each degree d of the ideal is the span of monomial multiples of the
generators, kept as an exact row space over the degree-d monomials. Classes in
the quotient are coordinates on the non-pivot monomials of that row space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import RowSpace, SparseEchelon, bareiss_det, nullspace
from .lowerideal import LowerIdeal
from .polyalg import (
    Polynomial,
    coefficient_vector,
    dim_sym,
    monomial_index,
    monomials_of_degree,
    multiples_in_degree,
)
from .rootsystem import Root
from .volume import VolumePolynomial, derivative_action, to_ambient, volume_polynomial


class NotArtinian(AssertionError):
    pass


def _as_row(p: Polynomial, degree: int) -> dict[int, int | Fraction]:
    idx = monomial_index(p.nvars, degree)
    return {idx[e]: c for e, c in p.terms.items()}


class GradedQuotient:
    """R/(gens) for homogeneous gens in nvars variables, assumed Artinian."""

    def __init__(self, gens: Sequence[Polynomial], nvars: int, max_degree: int | None = None):
        self.gens = [g for g in gens if not g.is_zero()]
        self.nvars = nvars
        for g in self.gens:
            if g.nvars != nvars or g.homogeneous_degree() is None:
                raise ValueError("generators must be homogeneous in the given variables")
        predicted = sum(g.homogeneous_degree() - 1 for g in self.gens)
        self.max_degree = predicted + 1 if max_degree is None else max_degree
        self._spaces: dict[int, RowSpace] = {}
        self._dims: list[int] | None = None

    def ideal_space(self, d: int) -> RowSpace:
        if d not in self._spaces:
            rows = [_as_row(p, d) for p in multiples_in_degree(self.gens, d)]
            self._spaces[d] = RowSpace(rows, dim_sym(self.nvars, d))
        return self._spaces[d]

    def ideal_dim(self, d: int) -> int:
        return self.ideal_space(d).rank

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        dims = self.graded_dims
        return dims[d] if d < len(dims) else 0

    @property
    def graded_dims(self) -> list[int]:
        if self._dims is None:
            dims = []
            for d in range(self.max_degree + 1):
                k = dim_sym(self.nvars, d) - self.ideal_dim(d)
                if k == 0:
                    break
                dims.append(k)
            else:
                raise NotArtinian(f"quotient is nonzero in degree {self.max_degree}")
            self._dims = dims
        return self._dims

    @property
    def socle_degree(self) -> int:
        return len(self.graded_dims) - 1

    def basis(self, d: int) -> list[tuple[int, ...]]:
        """Monomials whose classes form a basis of the degree-d piece."""
        mons = monomials_of_degree(self.nvars, d)
        return [mons[c] for c in self.ideal_space(d).complement]

    def basis_polys(self, d: int) -> list[Polynomial]:
        return [Polynomial.monomial(e) for e in self.basis(d)]

    def coords(self, p: Polynomial, d: int) -> list[Fraction]:
        """Class of a degree-d polynomial in the monomial basis of degree d."""
        if p.is_zero():
            return [Fraction(0)] * len(self.ideal_space(d).complement)
        if p.homogeneous_degree() != d:
            raise ValueError("polynomial has the wrong degree")
        return self.ideal_space(d).coordinates(coefficient_vector(p, d))

    def contains(self, p: Polynomial) -> bool:
        if p.is_zero():
            return True
        d = p.homogeneous_degree()
        if d is None:
            raise ValueError("polynomial is not homogeneous")
        return self.ideal_space(d).contains(coefficient_vector(p, d))

    def multiplication_matrix(self, ell: Polynomial, src: int) -> list[list[Fraction]]:
        """Rows: images of basis(src) under multiplication by ell, in basis(src + deg ell)."""
        k = ell.homogeneous_degree()
        return [self.coords(ell * b, src + k) for b in self.basis_polys(src)]


def hilbert_series(gens: Sequence[Polynomial], nvars: int) -> list[int]:
    return GradedQuotient(gens, nvars).graded_dims


def product_series(exps: Sequence[int]) -> list[int]:
    """Coefficients of prod (1 + s + ... + s^d)."""
    out = [1]
    for d in exps:
        nxt = [0] * (len(out) + d)
        for i, c in enumerate(out):
            for k in range(d + 1):
                nxt[i + k] += c
        out = nxt
    return out


def quotient_for(ideal: LowerIdeal) -> GradedQuotient:
    from .derivbasis import ideal_generators

    return GradedQuotient(ideal_generators(ideal), ideal.rs.nvars)


# ------------------------------------------------------------------ colon

@dataclass
class ColonReport:
    passed: bool
    alpha_outside: bool
    generators_inside: bool
    table: list[tuple[int, int, int]] = field(default_factory=list)  # (d, dim colon_d, dim a(I)_d)


def colon_check(ideal: LowerIdeal, alpha: Root) -> ColonReport:
    """a(I) = a(I + alpha) : alpha, compared degree by degree."""
    from .derivbasis import ideal_generators

    rs = ideal.rs
    bigger = ideal.with_root(alpha)
    small = GradedQuotient(ideal_generators(ideal), rs.nvars)
    big = GradedQuotient(ideal_generators(bigger), rs.nvars)
    a = rs.reduced_form(alpha)
    outside = not big.contains(a)
    inside = all(big.contains(a * f) for f in small.gens)
    table = []
    ok = outside and inside
    for d in range(len(ideal) + 2):
        ech = SparseEchelon()
        base = big.ideal_space(d + 1)
        for row in base.rows:
            ech.add({k: v for k, v in enumerate(row) if v})
        before = ech.rank
        for e in monomials_of_degree(rs.nvars, d):
            ech.add(_as_row(a * Polynomial.monomial(e), d + 1))
        image = ech.rank - before
        colon = dim_sym(rs.nvars, d) - image
        table.append((d, colon, small.ideal_dim(d)))
        ok = ok and colon == small.ideal_dim(d)
    return ColonReport(ok, outside, inside, table)


# ------------------------------------------------------------ PD pairing

def _pairing_value(vol: VolumePolynomial, f: Polynomial) -> Fraction:
    return Fraction(derivative_action(vol.ideal.rs, f, vol.ambient).constant_term())


def gram_matrix(q: GradedQuotient, vol: VolumePolynomial, d: int) -> list[list[Fraction]]:
    top = len(vol.ideal)
    return [[_pairing_value(vol, u * v) for v in q.basis_polys(top - d)] for u in q.basis_polys(d)]


def pd_pairing_check(q: GradedQuotient, vol: VolumePolynomial) -> bool:
    from .linalg import bareiss_rank

    top = len(vol.ideal)
    for d in range(top // 2 + 1):
        g = gram_matrix(q, vol, d)
        if q.dim(d) != q.dim(top - d):
            return False
        if bareiss_rank(g) != q.dim(d):
            return False
    return True


# ------------------------------------------------------------ Lefschetz

@dataclass
class LefschetzDegree:
    q: int
    hl_rank: int
    dim: int
    primitive_dim: int
    minors: list[Fraction]

    @property
    def hl(self) -> bool:
        return self.hl_rank == self.dim

    @property
    def hr(self) -> bool:
        return all(m > 0 for m in self.minors)


@dataclass
class LefschetzReport:
    verdict: str  # "pass", "fail" or "trivial"
    degrees: list[LefschetzDegree]
    ell: Polynomial
    rho_value: Fraction

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"


def _matrix_times(vecs: Sequence[Sequence[Fraction]], mat: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    cols = len(mat[0]) if mat else 0
    return [[sum(v[i] * mat[i][j] for i in range(len(v)) if v[i]) for j in range(cols)] for v in vecs]


def lefschetz_check(ideal: LowerIdeal, ell: Polynomial | None = None, q: GradedQuotient | None = None) -> LefschetzReport:
    """Hard Lefschetz and Hodge-Riemann for multiplication by ell (default rho)."""
    from .linalg import bareiss_rank

    rs = ideal.rs
    if ell is None:
        ell = rs.rho
    vol = volume_polynomial(ideal)
    top = len(ideal)
    if top == 0:
        return LefschetzReport("trivial", [], ell, vol.rho_value)
    if q is None:
        q = quotient_for(ideal)
    results = []
    for deg in range(top // 2 + 1):
        k = top - 2 * deg
        basis = q.basis_polys(deg)
        lk = ell ** k
        hl_mat = [q.coords(lk * b, top - deg) for b in basis]
        hl_rank = bareiss_rank(hl_mat) if basis else 0
        # primitive classes: kernel of multiplication by ell^(k+1)
        up = [q.coords(lk * ell * b, top - deg + 1) for b in basis]
        if up and up[0]:
            cols = list(zip(*up))
            kernel = nullspace([list(c) for c in cols], len(basis))
        else:
            kernel = [[Fraction(int(i == j)) for j in range(len(basis))] for i in range(len(basis))]
        prims = []
        for vec in kernel:
            p = Polynomial.zero(rs.nvars)
            for c, b in zip(vec, basis):
                if c:
                    p = p + b * c
            prims.append(p)
        sign = -1 if deg % 2 else 1
        form = [[_pairing_value(vol, lk * a * b) * sign for b in prims] for a in prims]
        minors = [bareiss_det([row[:i] for row in form[:i]]) for i in range(1, len(form) + 1)]
        results.append(LefschetzDegree(deg, hl_rank, len(basis), len(prims), [Fraction(m) for m in minors]))
    ok = all(r.hl and r.hr for r in results)
    return LefschetzReport("pass" if ok else "fail", results, ell, vol.rho_value)
