"""Logarithmic derivations, the explicit bases psi_{i,h(i)}, and Saito's criterion.

A derivation is stored by its coefficients on the ambient partials
d/dx_1 .. d/dx_m, each an ambient polynomial. For types A and G2 the
coefficients sum to zero, so the derivation lies in R (x) t and descends to the
quotient ring; results are always reduced before they are compared.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .linalg import bareiss_det
from .lowerideal import HessenbergFunction, LowerIdeal, check_hessenberg, hessenberg_from_ideal
from .polyalg import Polynomial, partial_derivative, poly_substitute
from .rootsystem import RootSystem


class UnsupportedType(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Derivation:
    rs: RootSystem
    coeffs: tuple  # ambient polynomials, one per ambient coordinate

    def __post_init__(self):
        if len(self.coeffs) != self.rs.ambient_dim:
            raise ValueError("one coefficient per ambient coordinate expected")
        if self.rs.trace_zero:
            total = Polynomial.zero(self.rs.ambient_dim)
            for c in self.coeffs:
                total = total + c
            if not total.is_zero():
                raise ValueError("coefficients must sum to zero for a trace-zero type")

    @property
    def degree(self) -> int:
        degs = {c.homogeneous_degree() for c in self.coeffs if not c.is_zero()}
        if not degs:
            return -1
        if len(degs) != 1 or None in degs:
            raise ValueError("derivation is not homogeneous")
        return degs.pop()

    def apply(self, p: Polynomial) -> Polynomial:
        """theta(p) for an ambient polynomial, as an ambient polynomial."""
        out = Polynomial.zero(self.rs.ambient_dim)
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                out = out + c * partial_derivative(p, k)
        return out

    def apply_reduced(self, p: Polynomial) -> Polynomial:
        """theta acting on the reduced ring."""
        rs = self.rs
        amb = p.extend(rs.ambient_dim) if rs.trace_zero else p
        return rs.reduce(self.apply(amb))

    def matrix_row(self) -> list[Polynomial]:
        """theta(x_1), ..., theta(x_n) in reduced coordinates."""
        rs = self.rs
        return [rs.reduce(self.coeffs[k]) for k in range(rs.nvars)]

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.rs, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, p: Polynomial) -> "Derivation":
        return Derivation(self.rs, tuple(p * c for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Derivation) or other.rs is not self.rs:
            return NotImplemented
        return all(self.rs.reduce(a - b).is_zero() for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def to_text(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append(f"({c}) d{k + 1}")
        return " + ".join(parts) if parts else "0"


def zero_derivation(rs: RootSystem) -> Derivation:
    return Derivation(rs, tuple(Polynomial.zero(rs.ambient_dim) for _ in range(rs.ambient_dim)))


def constant_derivation(rs: RootSystem, vec: Sequence) -> Derivation:
    """Sum vec[k] d_k; for trace-zero types vec is projected to trace zero."""
    m = rs.ambient_dim
    vec = [Fraction(v) for v in vec]
    if rs.trace_zero:
        mean = sum(vec) / m
        vec = [v - mean for v in vec]
    return Derivation(rs, tuple(Polynomial.const(m, v) for v in vec))


def euler_derivation(rs: RootSystem) -> Derivation:
    m = rs.ambient_dim
    coeffs = [Polynomial.var(m, k) for k in range(m)]
    if rs.trace_zero:
        s = Polynomial.linear([Fraction(1, m)] * m)
        coeffs = [c - s for c in coeffs]
    return Derivation(rs, tuple(coeffs))


# ------------------------------------------------------------ logarithmic test

def divisible_by_linear(p: Polynomial, ell: Polynomial) -> bool:
    """Whether p vanishes on the hyperplane ell = 0 (reduced coordinates)."""
    coeffs = ell.linear_coeffs()
    k = max(i for i, c in enumerate(coeffs) if c)
    a = Fraction(coeffs[k])
    rest = [-Fraction(c) / a if i != k else 0 for i, c in enumerate(coeffs)]
    return poly_substitute(p, k, Polynomial.linear(rest)).is_zero()


def is_logarithmic(theta: Derivation, ideal: LowerIdeal) -> bool:
    rs = ideal.rs
    if theta.rs is not rs:
        raise ValueError("derivation and ideal belong to different root systems")
    for r in ideal.members:
        image = rs.reduce(theta.apply(r.linear_form()))
        if not divisible_by_linear(image, rs.reduced_form(r)):
            return False
    return True


# ------------------------------------------------------------------ tableaux

def tableau_entry(rs: RootSystem, i: int, j: int) -> Polynomial:
    """alpha_{i,j} as an ambient linear form; type C uses x_i in the last slot."""
    n = rs.rank
    if rs.family == "C" and j == 2 * n + 1 - i:
        return Polynomial.var(rs.ambient_dim, i - 1)
    for r in rs.roots:
        if r.position == (i, j):
            return r.linear_form()
    raise KeyError((i, j))


def _row_top(rs: RootSystem, i: int) -> int:
    n = rs.rank
    if rs.family == "A":
        return n + 1
    if rs.family in ("B", "C"):
        return 2 * n + 1 - i
    if rs.family == "G":
        return 6 if i == 1 else 3
    raise UnsupportedType(f"no explicit basis for type {rs.family}")


def _initial(rs: RootSystem, i: int) -> Derivation:
    m = rs.ambient_dim
    if rs.family in ("A", "B", "C"):
        return constant_derivation(rs, [1 if k < i else 0 for k in range(m)])
    if rs.family == "G":
        return constant_derivation(rs, [0, -1, 1] if i == 1 else [0, 0, 1])
    raise UnsupportedType(f"no explicit basis for type {rs.family}")


def psi(rs: RootSystem, i: int, j: int) -> Derivation:
    """psi_{i,j} by the tableau recursion psi_{i,j} = psi_{i-1,j-1} + alpha_{i,j} psi_{i,j-1}."""
    return _psi_cached(rs.family, rs.rank, i, j)


@lru_cache(maxsize=None)
def _psi_cached(family: str, rank: int, i: int, j: int) -> Derivation:
    rs = RootSystem.build(family, rank)
    if i == 0:
        return zero_derivation(rs)
    if j < i or j > _row_top(rs, i):
        raise ValueError(f"({i},{j}) is outside the tableau")
    if j == i:
        return _initial(rs, i)
    prev = _psi_cached(family, rank, i - 1, j - 1) if i > 1 else zero_derivation(rs)
    return prev + _psi_cached(family, rank, i, j - 1).scale(tableau_entry(rs, i, j))


def psi_closed_form(rs: RootSystem, i: int, j: int) -> Derivation:
    """Product formulas for psi_{i,j}, independent of the recursion."""
    m = rs.ambient_dim
    n = rs.rank
    x = [Polynomial.var(m, k) for k in range(m)]
    one = Polynomial.const(m, 1)
    fam = rs.family
    if fam == "A":
        coeffs = [Polynomial.zero(m)] * m
        for k in range(i):
            prod = one
            for ell in range(i + 1, j + 1):
                prod = prod * (x[k] - x[ell - 1])
            for q in range(m):
                delta = Fraction(1 if q == k else 0) - Fraction(1, m)
                coeffs[q] = coeffs[q] + prod * delta
        return Derivation(rs, tuple(coeffs))
    if fam in ("B", "C"):
        coeffs = [Polynomial.zero(m)] * m
        for k in range(1, i + 1):
            if fam == "C" and j == 2 * n + 1 - i:
                prod = x[k - 1]
                for ell in range(i + 1, n + 1):
                    prod = prod * (x[k - 1] - x[ell - 1]) * (x[k - 1] + x[ell - 1])
            else:
                prod = one
                for ell in range(i + 1, j + 1):
                    prod = prod * tableau_entry(rs, k, ell)
            coeffs[k - 1] = prod
        return Derivation(rs, tuple(coeffs))
    if fam == "G":
        if i == j:
            return _initial(rs, i)
        if i == 1:
            prod = one
            for ell in range(2, j + 1):
                prod = prod * tableau_entry(rs, 1, ell)
            return Derivation(rs, (Polynomial.zero(m), -prod, prod))
        if (i, j) == (2, 3):
            s = Polynomial.linear([Fraction(1, 3)] * 3)
            return Derivation(rs, tuple(x[k] - s for k in range(3)))
    raise UnsupportedType(f"no closed form for type {fam} at ({i},{j})")


def tableau_positions(rs: RootSystem) -> list[tuple[int, int]]:
    out = []
    for i in range(1, rs.rank + 1):
        for j in range(i, _row_top(rs, i) + 1):
            out.append((i, j))
    return out


def f_closed_form_A(rs: RootSystem, i: int, j: int) -> Polynomial:
    """sum_{k<=i} prod_{l=i+1}^{j} (x_k - x_l) x_k, reduced."""
    m = rs.ambient_dim
    x = [Polynomial.var(m, k) for k in range(m)]
    out = Polynomial.zero(m)
    for k in range(i):
        prod = x[k]
        for ell in range(i + 1, j + 1):
            prod = prod * (x[k] - x[ell - 1])
        out = out + prod
    return rs.reduce(out)


def check_recursion(family: str, rank: int) -> bool:
    """Recursively built psi (and f for type A) agree with the closed forms."""
    rs = RootSystem.build(family, rank)
    for i, j in tableau_positions(rs):
        if psi(rs, i, j) != psi_closed_form(rs, i, j):
            return False
    if family == "A":
        m = rs.ambient_dim
        x = [Polynomial.var(m, k) for k in range(m)]
        f: dict[tuple[int, int], Polynomial] = {}
        for i in range(0, m):
            for j in range(i, m + 1):
                if i == 0:
                    f[(0, j)] = Polynomial.zero(rs.nvars)
                elif j == i:
                    s = Polynomial.zero(m)
                    for k in range(i):
                        s = s + x[k]
                    f[(i, i)] = rs.reduce(s)
                else:
                    f[(i, j)] = f[(i - 1, j - 1)] + rs.reduce(x[i - 1] - x[j - 1]) * f[(i, j - 1)]
        for (i, j), val in f.items():
            if i == 0:
                continue
            if val != f_closed_form_A(rs, i, j):
                return False
            if val != half_q_image(psi(rs, i, j)):
                return False
    return True


# ------------------------------------------------------------------ bases

def _hess(ideal: LowerIdeal, h: HessenbergFunction | Sequence[int] | None) -> HessenbergFunction:
    if ideal.rs.family == "D":
        raise UnsupportedType("no explicit basis for type D")
    if h is None:
        return hessenberg_from_ideal(ideal)
    hf = check_hessenberg(h.values if isinstance(h, HessenbergFunction) else h, ideal.rs)
    if hf != hessenberg_from_ideal(ideal):
        raise ValueError("Hessenberg function does not match the ideal")
    return hf


def psi_basis(ideal: LowerIdeal, h=None) -> list[Derivation]:
    hf = _hess(ideal, h)
    rs = ideal.rs
    return [psi(rs, i, hf.values[i - 1]) for i in range(1, rs.rank + 1)]


def quadratic_form(rs: RootSystem) -> Polynomial:
    m = rs.ambient_dim
    q = Polynomial.zero(m)
    for k in range(m):
        q = q + Polynomial.var(m, k) ** 2
    return q


def half_q_image(theta: Derivation) -> Polynomial:
    return theta.rs.reduce(theta.apply(quadratic_form(theta.rs))) * Fraction(1, 2)


def ideal_generators(ideal: LowerIdeal, h=None) -> list[Polynomial]:
    """f_i = theta_i(Q)/2 for the psi basis, reduced; generators of a(I)."""
    return [half_q_image(t) for t in psi_basis(ideal, h)]


# ------------------------------------------------------------------ Saito

def _symbolic_det(mat: list[list[Polynomial]], nvars: int) -> Polynomial:
    n = len(mat)
    if n == 0:
        return Polynomial.const(nvars, 1)
    total = Polynomial.zero(nvars)
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Polynomial.const(nvars, -1 if inv % 2 else 1)
        for r in range(n):
            term = term * mat[r][perm[r]]
            if term.is_zero():
                break
        total = total + term
    return total


@dataclass
class SaitoCertificate:
    passed: bool
    degrees_ok: bool
    determinant: Polynomial
    constant: Fraction | None
    residual: Polynomial
    degree_sum: int
    size: int

    def summary(self) -> str:
        if self.passed:
            return f"det = {self.constant} * prod(alpha), degree sum {self.degree_sum} = |I| = {self.size}"
        reasons = []
        if not self.degrees_ok:
            reasons.append(f"degree sum {self.degree_sum} != |I| = {self.size}")
        if self.constant is None or not self.residual.is_zero():
            reasons.append("determinant is not a nonzero multiple of prod(alpha)")
        return "; ".join(reasons)


def saito_matrix(thetas: Sequence[Derivation]) -> list[list[Polynomial]]:
    return [t.matrix_row() for t in thetas]


def saito_certificate(thetas: Sequence[Derivation], ideal: LowerIdeal, eval_points: int = 3) -> SaitoCertificate:
    rs = ideal.rs
    n = rs.nvars
    if len(thetas) != n:
        raise ValueError(f"expected {n} derivations")
    mat = saito_matrix(thetas)
    det = _symbolic_det(mat, n)
    # cross-check the symbolic expansion by fraction-free elimination at points
    for s in range(eval_points):
        pt = [Fraction(2 * k + 3 + s, k + 1 + 2 * s) for k in range(n)]
        numeric = [[p.evaluate(pt) for p in row] for row in mat]
        if bareiss_det(numeric) != det.evaluate(pt):
            raise AssertionError("determinant paths disagree")
    prod = Polynomial.const(n, 1)
    for r in ideal.members:
        prod = prod * rs.reduced_form(r)
    degs = [t.degree for t in thetas]
    degree_sum = sum(max(d, 0) for d in degs)
    degrees_ok = degree_sum == len(ideal) and all(d >= 0 for d in degs)
    constant = None
    residual = det
    if not det.is_zero():
        exps, c_det = det.leading_term()
        c_prod = prod.coefficient(exps)
        if c_prod:
            constant = Fraction(c_det) / Fraction(c_prod)
            residual = det - prod * constant
    passed = degrees_ok and constant is not None and residual.is_zero()
    return SaitoCertificate(passed, degrees_ok, det, constant, residual, degree_sum, len(ideal))
