"""Volume polynomials P_I = d_{beta_I}(P) and their annihilators.

P is the product of all positive roots. Differential operators are applied in
ambient orthonormal coordinates; for types A and G2 this is well defined on
the reduced ring because P and its derivatives are polynomials in trace-zero
forms, hence killed by d/dx_1 + ... + d/dx_m.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import SparseEchelon
from .lowerideal import LowerIdeal
from .polyalg import (
    Polynomial,
    apply_diff_operator,
    dim_sym,
    graded_span_rank,
    monomial_index,
    monomials_of_degree,
    multiples_in_degree,
)
from .rootsystem import RootSystem


class VolumeError(AssertionError):
    pass


def to_ambient(rs: RootSystem, f: Polynomial) -> Polynomial:
    """Reduced polynomial viewed in ambient variables (last variable unused)."""
    if f.nvars == rs.ambient_dim:
        return f
    return f.extend(rs.ambient_dim) if rs.trace_zero else f


def derivative_action(rs: RootSystem, f: Polynomial, g: Polynomial) -> Polynomial:
    """d_f(g) for reduced f and ambient g, result ambient."""
    return apply_diff_operator(to_ambient(rs, f), g)


def weyl_product(rs: RootSystem) -> Polynomial:
    """Product of the positive roots, ambient coordinates."""
    return rs.positive_root_product()


def _root_product(rs: RootSystem, roots) -> Polynomial:
    out = Polynomial.const(rs.ambient_dim, 1)
    for r in roots:
        out = out * r.linear_form()
    return out


@dataclass(frozen=True, eq=False)
class VolumePolynomial:
    ideal: LowerIdeal
    raw: Polynomial  # d_{beta_I}(P), ambient
    sign: int  # sign of d_{rho^|I|}(raw)
    rho_value: Fraction  # d_{rho^|I|}(normalized) > 0

    @property
    def ambient(self) -> Polynomial:
        return self.raw * self.sign

    @property
    def reduced(self) -> Polynomial:
        return self.ideal.rs.reduce(self.ambient)

    @property
    def degree(self) -> int:
        return len(self.ideal)

    def in_simple_roots(self) -> Polynomial:
        rs = self.ideal.rs
        return rs.in_simple_root_basis(rs.reduce(self.raw))


def volume_polynomial(ideal: LowerIdeal) -> VolumePolynomial:
    return _volume_cached(ideal.rs.family, ideal.rs.rank, ideal.mask)


@lru_cache(maxsize=None)
def _volume_cached(family: str, rank: int, mask: int) -> VolumePolynomial:
    rs = RootSystem.build(family, rank)
    ideal = LowerIdeal(rs, mask)
    beta = _root_product(rs, [r for r in rs.roots if not (mask >> r.index & 1)])
    raw = apply_diff_operator(beta, weyl_product(rs))
    if raw.is_zero() or raw.homogeneous_degree() != len(ideal):
        raise VolumeError(f"P_I vanishes or has the wrong degree for {ideal!r}")
    rho_pow = to_ambient(rs, rs.rho) ** len(ideal)
    value = apply_diff_operator(rho_pow, raw).constant_term()
    if value == 0:
        raise VolumeError("rho^|I| pairs to zero with P_I")
    sign = 1 if value > 0 else -1
    return VolumePolynomial(ideal, raw, sign, Fraction(value) * sign)


def stepwise_check(ideal: LowerIdeal, root) -> bool:
    """d_alpha(P_{I + alpha}) == P_I for the raw volume polynomials."""
    bigger = ideal.with_root(root)
    return apply_diff_operator(root.linear_form(), volume_polynomial(bigger).raw) == volume_polynomial(ideal).raw


def top_pairing(ideal: LowerIdeal) -> Fraction:
    """d_{alpha_I}(P_I) with alpha_I the product of the roots of I (raw sign)."""
    rs = ideal.rs
    return apply_diff_operator(_root_product(rs, ideal.members), volume_polynomial(ideal).raw).constant_term()


def annihilator_rank(rs: RootSystem, g: Polynomial, degree: int) -> int:
    """Rank of f -> d_f(g) on the degree-d piece of the reduced ring."""
    ech = SparseEchelon()
    target_deg = (g.homogeneous_degree() or 0) - degree
    if target_deg < 0:
        return 0
    tidx = monomial_index(g.nvars, target_deg)
    # columns of the linear map, as rows of its transpose (rank is the same)
    for e in monomials_of_degree(rs.nvars, degree):
        img = derivative_action(rs, Polynomial.monomial(e), g)
        ech.add({tidx[k]: c for k, c in img.terms.items()})
    return ech.rank


@dataclass
class AnnihilatorReport:
    passed: bool
    generators_killed: list[bool]
    table: list[tuple[int, int, int]] = field(default_factory=list)  # (d, dim Ann_d, dim a_d)
    offending_degree: int | None = None
    extra_killed: list[bool] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "generators_killed": self.generators_killed,
            "extra_killed": self.extra_killed,
            "table": [{"degree": d, "ann_dim": a, "ideal_dim": b} for d, a, b in self.table],
            "offending_degree": self.offending_degree,
        }


def annihilator_check(
    ideal: LowerIdeal,
    gens: Sequence[Polynomial] | None = None,
    vol: VolumePolynomial | None = None,
    kill: Sequence[Polynomial] = (),
    max_degree: int | None = None,
) -> AnnihilatorReport:
    """Generators kill P_I and dim Ann(P_I)_d = dim a(I)_d for d <= |I| + 1."""
    from .derivbasis import ideal_generators

    rs = ideal.rs
    if gens is None:
        gens = ideal_generators(ideal)
    if vol is None:
        vol = volume_polynomial(ideal)
    g = vol.raw
    killed = [derivative_action(rs, f, g).is_zero() for f in gens]
    extra = [derivative_action(rs, f, g).is_zero() for f in kill]
    top = len(ideal) + 1 if max_degree is None else min(max_degree, len(ideal) + 1)
    table = []
    offending = None
    for d in range(top + 1):
        ann = dim_sym(rs.nvars, d) - annihilator_rank(rs, g, d)
        ideal_dim = graded_span_rank(multiples_in_degree(gens, d), d)
        table.append((d, ann, ideal_dim))
        if ann != ideal_dim and offending is None:
            offending = d
    passed = all(killed) and all(extra) and offending is None
    return AnnihilatorReport(passed, killed, table, offending, extra)
