"""GKM graphs of regular semisimple Hessenberg varieties.

Vertices are Weyl group elements; w and w s_alpha are joined for alpha in I,
with label w(alpha). A class assigns a reduced polynomial to every vertex; it
satisfies the GKM condition when each edge difference is divisible by its
label, i.e. vanishes after restriction to the label's kernel.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import SparseEchelon, nullspace
from .lowerideal import LowerIdeal
from .polyalg import (
    Polynomial,
    dim_sym,
    monomial_index,
    monomials_of_degree,
    poly_substitute,
    to_text,
)
from .rootsystem import RootSystem, WeylElement

DEFAULT_MAX_DEGREE = 3


def canonical_sign(p: Polynomial) -> Polynomial:
    """Scale a linear form so that its first nonzero coefficient is positive."""
    coeffs = p.linear_coeffs()
    first = next(c for c in coeffs if c)
    return p if first > 0 else -p


@dataclass(frozen=True)
class GKMEdge:
    u: int  # vertex indices, u < v
    v: int
    root: int  # index of alpha in Phi+
    label: Polynomial  # canonical sign, reduced coordinates


@dataclass(eq=False)
class GKMGraph:
    ideal: LowerIdeal
    vertices: list[WeylElement]
    edges: list[GKMEdge]

    @property
    def rs(self) -> RootSystem:
        return self.ideal.rs

    def to_dot(self) -> str:
        lines = ["graph gkm {"]
        for w in self.vertices:
            lines.append(f'  "{w.word_text()}";')
        for e in self.edges:
            a, b = self.vertices[e.u].word_text(), self.vertices[e.v].word_text()
            lines.append(f'  "{a}" -- "{b}" [label="{to_text(e.label)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def edge_label(rs: RootSystem, w: WeylElement, root) -> Polynomial:
    """w(alpha) as a reduced linear form, with its actual sign."""
    idx, sign = w.root_images[root.index]
    return rs.reduced_form(rs.roots[idx]) * sign


def build_gkm_graph(ideal: LowerIdeal, bound: int | None = None) -> GKMGraph:
    rs = ideal.rs
    W = rs.weyl_group(bound)
    edges = []
    for r in ideal.members:
        s = rs.reflection(r)
        for w in W:
            v = rs.multiply(w, s)
            if w.index < v.index:
                lw = edge_label(rs, w, r)
                lv = edge_label(rs, v, r)
                if lw != -lv:
                    raise AssertionError("edge labels from the two endpoints are not opposite")
                edges.append(GKMEdge(w.index, v.index, r.index, canonical_sign(lw)))
    edges.sort(key=lambda e: (e.u, e.v, e.root))
    if 2 * len(edges) != len(W) * len(ideal):
        raise AssertionError("unexpected edge count")
    return GKMGraph(ideal, W, edges)


# ------------------------------------------------------------------ classes

GKMClass = list  # one reduced Polynomial per vertex, indexed like graph.vertices


def _divisible(p: Polynomial, label: Polynomial) -> bool:
    from .derivbasis import divisible_by_linear

    return divisible_by_linear(p, label)


def is_gkm_class(graph: GKMGraph, cls: Sequence[Polynomial]) -> bool:
    degs = {p.homogeneous_degree() for p in cls if not p.is_zero()}
    if None in degs or len(degs) > 1:
        raise ValueError("class components must be homogeneous of one degree")
    for e in graph.edges:
        if not _divisible(cls[e.u] - cls[e.v], e.label):
            return False
    return True


def euler_class(graph: GKMGraph, form: Polynomial) -> list[Polynomial]:
    """(w(form))_w, the equivariant class of the line bundle of a character."""
    rs = graph.rs
    return [rs.act_on_polynomial(w, form) for w in graph.vertices]


def diagonal_class(graph: GKMGraph, p: Polynomial) -> list[Polynomial]:
    return [p for _ in graph.vertices]


def dot_action(graph: GKMGraph, u: WeylElement, cls: Sequence[Polynomial]) -> list[Polynomial]:
    """(u.f)_w = u(f_{u^-1 w})."""
    rs = graph.rs
    uinv = rs.inverse(u)
    return [rs.act_on_polynomial(u, cls[rs.multiply(uinv, w).index]) for w in graph.vertices]


# ----------------------------------------------------------- solution spaces

@lru_cache(maxsize=None)
def _restriction(nvars: int, degree: int, coeffs: tuple) -> tuple[dict, ...]:
    """For each degree-d monomial, its restriction to ker(label) as {monomial index: coeff}."""
    k = max(i for i, c in enumerate(coeffs) if c)
    a = Fraction(coeffs[k])
    repl = Polynomial.linear([-Fraction(c) / a if i != k else 0 for i, c in enumerate(coeffs)])
    idx = monomial_index(nvars, degree)
    out = []
    for e in monomials_of_degree(nvars, degree):
        img = poly_substitute(Polynomial.monomial(e), k, repl)
        out.append({idx[m]: c for m, c in img.terms.items()})
    return tuple(out)


def gkm_equations(graph: GKMGraph, degree: int) -> list[dict[int, Fraction]]:
    """Linear conditions on the stacked coefficient vector of a degree-d class."""
    n = graph.rs.nvars
    size = dim_sym(n, degree)
    rows = []
    for e in graph.edges:
        restr = _restriction(n, degree, tuple(e.label.linear_coeffs()))
        by_target: dict[int, dict[int, Fraction]] = {}
        for j, img in enumerate(restr):
            for m, c in img.items():
                row = by_target.setdefault(m, {})
                row[e.u * size + j] = row.get(e.u * size + j, 0) + c
                row[e.v * size + j] = row.get(e.v * size + j, 0) - c
        rows.extend(r for r in by_target.values() if any(r.values()))
    return rows


def gkm_space_dim(graph: GKMGraph, degree: int, max_degree: int = DEFAULT_MAX_DEGREE) -> int:
    if degree > max_degree:
        raise ValueError(f"degree {degree} exceeds bound {max_degree}")
    n = graph.rs.nvars
    unknowns = len(graph.vertices) * dim_sym(n, degree)
    ech = SparseEchelon()
    for row in gkm_equations(graph, degree):
        ech.add(row)
    return unknowns - ech.rank


def gkm_basis(graph: GKMGraph, degree: int) -> list[list[Polynomial]]:
    """An explicit basis of the degree-d GKM classes."""
    n = graph.rs.nvars
    size = dim_sym(n, degree)
    total = len(graph.vertices) * size
    rows = []
    for r in gkm_equations(graph, degree):
        v = [0] * total
        for k, c in r.items():
            v[k] = c
        rows.append(v)
    mons = monomials_of_degree(n, degree)
    out = []
    for vec in nullspace(rows, total):
        cls = []
        for w in range(len(graph.vertices)):
            terms = {mons[j]: vec[w * size + j] for j in range(size) if vec[w * size + j]}
            cls.append(Polynomial(n, terms))
        out.append(cls)
    return out


def free_module_prediction(semisimple: Sequence[int], nvars: int, degree: int) -> int:
    """sum_k b_{2k} dim Sym^{d-k}."""
    return sum(b * dim_sym(nvars, degree - k) for k, b in enumerate(semisimple) if k <= degree)


def _stack(cls: Sequence[Polynomial], degree: int, nvars: int) -> dict[int, Fraction]:
    size = dim_sym(nvars, degree)
    idx = monomial_index(nvars, degree)
    row = {}
    for w, p in enumerate(cls):
        for e, c in p.terms.items():
            row[w * size + idx[e]] = c
    return row


def invariant_cohomology_dim(graph: GKMGraph, degree: int) -> int:
    """dim of the W-invariant part (dot action) of ordinary cohomology in degree 2d.

    Dot-invariant equivariant classes are exactly (w(f))_w for f in R, so the
    invariant part of H = H_T / R_+ H_T in degree d is (U + V) / V with
    U = {(w(f))_w : f in R_d} and V = span of x_i * (GKM classes of degree d-1).
    """
    rs = graph.rs
    n = rs.nvars
    if degree == 0:
        return 1
    ech = SparseEchelon()
    for cls in gkm_basis(graph, degree - 1):
        for i in range(n):
            xi = Polynomial.var(n, i)
            ech.add(_stack([xi * p for p in cls], degree, n))
    v_dim = ech.rank
    for e in monomials_of_degree(n, degree):
        ech.add(_stack(euler_class(graph, Polynomial.monomial(e)), degree, n))
    return ech.rank - v_dim
