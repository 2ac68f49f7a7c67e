"""Root systems of types A, B, C, D, G2 in explicit orthonormal coordinates.

Types A_n and G_2 live in n+1 (resp. 3) ambient coordinates modulo
x_1 + ... + x_m. Polynomials in the ring Sym(t^*) are stored in *reduced*
coordinates: the last ambient variable is eliminated via
x_m -> -(x_1 + ... + x_{m-1}). For B, C, D reduced and ambient coincide.

Weyl group elements are signed permutations of the ambient coordinates; for
G_2 these are the permutations of (x, y, z) with a uniform sign.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .linalg import inverse, solve
from .polyalg import Polynomial, to_text

FAMILIES = ("A", "B", "C", "D", "G")
DEFAULT_MAX_WEYL = 10 ** 6


class WeylBoundExceeded(RuntimeError):
    pass


def max_weyl_bound() -> int:
    env = os.environ.get("HESSARR_MAX_WEYL")
    return int(env) if env else DEFAULT_MAX_WEYL


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unsupported family {self.family!r}")
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.family == "G" and self.rank != 2:
            raise ValueError("type G requires rank 2")
        if self.family == "D" and self.rank < 2:
            raise ValueError("type D requires rank >= 2")

    @property
    def ambient_dim(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "G":
            return 3
        return self.rank

    @property
    def trace_zero(self) -> bool:
        return self.family in ("A", "G")

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True, eq=False)
class Root:
    index: int
    vector: tuple  # ambient coefficients
    simple_coords: tuple
    height: int
    position: tuple | None  # tableau slot (i, j), 1-based; None for type D

    def linear_form(self) -> Polynomial:
        return Polynomial.linear(self.vector)

    def __repr__(self):
        return f"Root({self.index}: {to_text(self.linear_form())})"


@dataclass(eq=False)
class WeylElement:
    """Signed permutation x_k -> signs[k] * x_{perm[k]} of ambient coordinates."""

    perm: tuple
    signs: tuple
    word: tuple = ()
    root_images: tuple = ()  # per positive root: (index, sign) of w(alpha)
    inversions: int = 0  # bitmask N(w) = {alpha > 0 : w(alpha) < 0}
    index: int = -1

    @property
    def key(self) -> tuple:
        return (self.perm, self.signs)

    @property
    def length(self) -> int:
        return bin(self.inversions).count("1")

    def word_text(self) -> str:
        return "e" if not self.word else "".join(f"s{i + 1}" for i in self.word)

    def __repr__(self):
        return f"WeylElement({self.word_text()})"


def compose_signed(a_perm, a_signs, b_perm, b_signs):
    """Signed permutation of the composite map a(b(.))."""
    perm = tuple(a_perm[b_perm[k]] for k in range(len(b_perm)))
    signs = tuple(b_signs[k] * a_signs[b_perm[k]] for k in range(len(b_perm)))
    return perm, signs


def invert_signed(perm, signs):
    m = len(perm)
    ip = [0] * m
    isg = [1] * m
    for k in range(m):
        ip[perm[k]] = k
        isg[perm[k]] = signs[k]
    return tuple(ip), tuple(isg)


def _unit(m, i, c=1):
    v = [0] * m
    v[i] = c
    return v


def _tableau(t: RootSystemType) -> list[tuple[tuple, tuple | None]]:
    """Positive roots in the fixed row-major tableau order with their slots."""
    n, m, fam = t.rank, t.ambient_dim, t.family
    out = []
    if fam == "A":
        for i in range(m - 1):
            for j in range(i + 1, m):
                v = [0] * m
                v[i], v[j] = 1, -1
                out.append((tuple(v), (i + 1, j + 1)))
    elif fam in ("B", "C"):
        for i in range(1, n + 1):
            for j in range(i + 1, 2 * n + 2 - i):
                v = [0] * m
                if j <= n:
                    v[i - 1], v[j - 1] = 1, -1
                elif j == 2 * n + 1 - i and fam == "C":
                    v[i - 1] = 2
                elif fam == "B" and j == n + 1:
                    v[i - 1] = 1
                else:
                    other = 2 * n + 2 - j if fam == "B" else 2 * n + 1 - j
                    v[i - 1], v[other - 1] = 1, 1
                out.append((tuple(v), (i, j)))
    elif fam == "D":
        for i in range(n - 1):
            for j in range(i + 1, n):
                v = [0] * m
                v[i], v[j] = 1, -1
                out.append((tuple(v), None))
            for j in range(n - 1, i, -1):
                v = [0] * m
                v[i], v[j] = 1, 1
                out.append((tuple(v), None))
    else:
        rows = [
            ((1, -1, 0), (1, 2)),
            ((-1, 0, 1), (1, 3)),
            ((0, -1, 1), (1, 4)),
            ((1, -2, 1), (1, 5)),
            ((-1, -1, 2), (1, 6)),
            ((-2, 1, 1), (2, 3)),
        ]
        out = [(v, p) for v, p in rows]
    return out


def _simple_vectors(t: RootSystemType) -> list[tuple]:
    n, m, fam = t.rank, t.ambient_dim, t.family
    if fam == "G":
        return [(1, -1, 0), (-2, 1, 1)]
    out = []
    for i in range(n - 1 if fam != "A" else n):
        v = [0] * m
        v[i], v[i + 1] = 1, -1
        out.append(tuple(v))
    if fam == "B":
        out.append(tuple(_unit(m, n - 1)))
    elif fam == "C":
        out.append(tuple(_unit(m, n - 1, 2)))
    elif fam == "D":
        v = [0] * m
        v[n - 2], v[n - 1] = 1, 1
        out.append(tuple(v))
    return out


def _simple_reflection_signed(t: RootSystemType, i: int):
    """Signed permutation realising the i-th simple reflection."""
    n, m, fam = t.rank, t.ambient_dim, t.family
    perm = list(range(m))
    signs = [1] * m
    if fam == "G":
        if i == 0:
            perm[0], perm[1] = 1, 0
        else:
            perm[1], perm[2] = 2, 1
            signs = [-1, -1, -1]
        return tuple(perm), tuple(signs)
    last = (fam != "A") and i == n - 1
    if not last:
        perm[i], perm[i + 1] = i + 1, i
    elif fam in ("B", "C"):
        signs[n - 1] = -1
    else:  # D
        perm[n - 2], perm[n - 1] = n - 1, n - 2
        signs[n - 2] = signs[n - 1] = -1
    return tuple(perm), tuple(signs)


class RootSystem:
    """Positive roots, order, reduced coordinates and Weyl group of one type."""

    def __init__(self, t: RootSystemType):
        self.type = t
        self.family = t.family
        self.rank = t.rank
        self.ambient_dim = t.ambient_dim
        self.trace_zero = t.trace_zero
        n, m = self.rank, self.ambient_dim

        simple_vecs = _simple_vectors(t)
        simple_red = [self.reduce_vector(v) for v in simple_vecs]
        inv = inverse(simple_red)  # rows: reduced coordinate vectors -> simple coords
        self._to_simple = inv
        roots = []
        for idx, (vec, pos) in enumerate(_tableau(t)):
            red = self.reduce_vector(vec)
            coords = [sum(red[k] * inv[k][i] for k in range(n)) for i in range(n)]
            if any(c.denominator != 1 or c < 0 for c in coords):
                raise AssertionError(f"root {vec} is not a non-negative integer combination of simple roots")
            coords = tuple(int(c) for c in coords)
            roots.append(Root(idx, tuple(vec), coords, sum(coords), pos))
        self.roots: list[Root] = roots
        self._by_vector = {r.vector: r for r in roots}
        self._by_simple = {r.simple_coords: r for r in roots}
        self.simple: list[Root] = [self._by_vector[v] for v in simple_vecs]
        self.full_mask = (1 << len(roots)) - 1

    # ------------------------------------------------------------ coordinates
    @classmethod
    def build(cls, family: str, rank: int) -> "RootSystem":
        return _cached_build(family, rank)

    @property
    def nvars(self) -> int:
        """Variable count of the reduced ring."""
        return self.rank

    def reduce_vector(self, vec: Sequence) -> list:
        if self.trace_zero:
            last = vec[-1]
            return [vec[k] - last for k in range(len(vec) - 1)]
        return list(vec)

    def reduce(self, p: Polynomial) -> Polynomial:
        """Ambient polynomial -> canonical reduced representative."""
        if p.nvars != self.ambient_dim:
            raise ValueError("expected a polynomial in ambient coordinates")
        if not self.trace_zero:
            return p
        m = self.ambient_dim
        images = [Polynomial.var(m - 1, k) for k in range(m - 1)]
        images.append(Polynomial.linear([-1] * (m - 1)))
        return p.compose(images)

    @cached_property
    def _lift_images(self) -> list[Polynomial]:
        m = self.ambient_dim
        s = Polynomial.linear([Fraction(1, m)] * m)
        return [Polynomial.var(m, k) - s for k in range(m - 1)]

    def lift(self, p: Polynomial) -> Polynomial:
        """Reduced polynomial -> its representative in the trace-zero subring."""
        if p.nvars != self.nvars:
            raise ValueError("expected a polynomial in reduced coordinates")
        if not self.trace_zero:
            return p
        return p.compose(self._lift_images)

    def reduced_form(self, root: Root) -> Polynomial:
        return Polynomial.linear(self.reduce_vector(root.vector))

    def ambient_inner(self, u: Sequence, v: Sequence) -> Fraction:
        """Inner product of two trace-zero (or B/C/D) ambient linear forms."""
        return sum(Fraction(a) * b for a, b in zip(u, v))

    def in_simple_root_basis(self, p: Polynomial) -> Polynomial:
        """Rewrite a reduced polynomial in variables a_i = alpha_i."""
        n = self.rank
        simple_red = [self.reduce_vector(r.vector) for r in self.simple]
        # a = S x with S the simple-root rows, so x_k = sum_i (S^-1)[k][i] a_i
        c = inverse(simple_red)
        images = [Polynomial.linear(c[k]) for k in range(n)]
        return p.compose(images)

    @cached_property
    def rho(self) -> Polynomial:
        """Half the sum of positive roots, reduced coordinates."""
        total = Polynomial.zero(self.nvars)
        for r in self.roots:
            total = total + self.reduced_form(r)
        return total * Fraction(1, 2)

    @cached_property
    def dominant_point(self) -> list[Fraction]:
        """Ambient point x with alpha_i(x) = 1 for each simple root (sum zero for A, G)."""
        m = self.ambient_dim
        rows = [list(r.vector) for r in self.simple]
        rhs = [1] * len(rows)
        if self.trace_zero:
            rows.append([1] * m)
            rhs.append(0)
        return solve(rows, rhs)

    # ------------------------------------------------------------- the order
    def root_of_vector(self, vec: Sequence) -> tuple[Root, int] | None:
        """Look up +-alpha for an ambient vector; returns (root, sign)."""
        t = tuple(vec)
        r = self._by_vector.get(t)
        if r is not None:
            return r, 1
        r = self._by_vector.get(tuple(-x for x in t))
        if r is not None:
            return r, -1
        return None

    def root_of_simple_coords(self, coords: Sequence[int]) -> Root | None:
        return self._by_simple.get(tuple(coords))

    def le(self, a: Root, b: Root) -> bool:
        return all(x <= y for x, y in zip(a.simple_coords, b.simple_coords))

    @cached_property
    def down_masks(self) -> list[int]:
        """For each root, bitmask of roots below or equal to it."""
        out = []
        for b in self.roots:
            mask = 0
            for a in self.roots:
                if self.le(a, b):
                    mask |= 1 << a.index
            out.append(mask)
        return out

    @cached_property
    def hasse_edges(self) -> list[tuple[int, int]]:
        """Cover relations a < b (b - a is a simple root)."""
        edges = []
        for a in self.roots:
            for b in self.roots:
                diff = [y - x for x, y in zip(a.simple_coords, b.simple_coords)]
                if min(diff) >= 0 and sum(diff) == 1:
                    edges.append((a.index, b.index))
        return edges

    @cached_property
    def sum_triples(self) -> list[tuple[int, int, int]]:
        """All (a, b, c) with a < b indices and alpha_a + alpha_b = alpha_c."""
        out = []
        for a in self.roots:
            for b in self.roots:
                if a.index < b.index:
                    s = tuple(x + y for x, y in zip(a.simple_coords, b.simple_coords))
                    c = self._by_simple.get(s)
                    if c is not None:
                        out.append((a.index, b.index, c.index))
        return out

    # ------------------------------------------------------------ Weyl group
    def _make_element(self, perm, signs, word=()) -> WeylElement:
        images = []
        inv = 0
        for r in self.roots:
            v = [0] * self.ambient_dim
            for k, c in enumerate(r.vector):
                if c:
                    v[perm[k]] += signs[k] * c
            hit = self.root_of_vector(v)
            if hit is None:
                raise AssertionError("Weyl element does not permute the roots")
            images.append((hit[0].index, hit[1]))
            if hit[1] < 0:
                inv |= 1 << r.index
        return WeylElement(perm, signs, tuple(word), tuple(images), inv)

    @cached_property
    def simple_reflections(self) -> list[WeylElement]:
        out = []
        for i, alpha in enumerate(self.simple):
            perm, signs = _simple_reflection_signed(self.type, i)
            w = self._make_element(perm, signs, (i,))
            if not self._matches_reflection(w, alpha):
                raise AssertionError(f"simple reflection {i} is wrong")
            out.append(w)
        return out

    def _reflect_form(self, u: Sequence, alpha: Root) -> list:
        a = alpha.vector
        f = 2 * self.ambient_inner(u, a) / self.ambient_inner(a, a)
        return [x - f * y for x, y in zip(u, a)]

    def _matches_reflection(self, w: WeylElement, alpha: Root) -> bool:
        m = self.ambient_dim
        for k in range(m):
            target = self.reduce_vector(self._reflect_form(_unit(m, k), alpha))
            image = [0] * m
            image[w.perm[k]] = w.signs[k]
            if self.reduce_vector(image) != target:
                return False
        return True

    def weyl_group(self, bound: int | None = None) -> list[WeylElement]:
        if bound is None:
            bound = max_weyl_bound()
        if getattr(self, "_weyl", None) is not None:
            if len(self._weyl) > bound:
                raise WeylBoundExceeded(f"|W| = {len(self._weyl)} exceeds bound {bound}")
            return self._weyl
        m = self.ambient_dim
        ident = self._make_element(tuple(range(m)), (1,) * m)
        elems = [ident]
        seen = {ident.key: ident}
        queue = deque([ident])
        gens = self.simple_reflections
        while queue:
            w = queue.popleft()
            for i, s in enumerate(gens):
                perm, signs = compose_signed(w.perm, w.signs, s.perm, s.signs)
                if (perm, signs) in seen:
                    continue
                nw = self._make_element(perm, signs, w.word + (i,))
                seen[nw.key] = nw
                elems.append(nw)
                queue.append(nw)
                if len(elems) > bound:
                    raise WeylBoundExceeded(f"|W| exceeds bound {bound}")
        for i, w in enumerate(elems):
            w.index = i
        self._weyl = elems
        self._weyl_by_key = seen
        return elems

    def element(self, perm, signs) -> WeylElement:
        self.weyl_group()
        return self._weyl_by_key[(tuple(perm), tuple(signs))]

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.element(*compose_signed(a.perm, a.signs, b.perm, b.signs))

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.element(*invert_signed(w.perm, w.signs))

    def identity(self) -> WeylElement:
        return self.weyl_group()[0]

    def reflection(self, alpha: Root) -> WeylElement:
        if alpha.index >= len(self.roots) or self.roots[alpha.index] is not alpha:
            raise ValueError("not a positive root of this system")
        cache = self.__dict__.setdefault("_refl_cache", {})
        if alpha.index not in cache:
            found = [w for w in self.weyl_group() if self._matches_reflection(w, alpha)]
            if len(found) != 1:
                raise AssertionError("reflection not found uniquely")
            cache[alpha.index] = found[0]
        return cache[alpha.index]

    def act_on_root(self, w: WeylElement, alpha: Root) -> tuple[Root, int]:
        idx, sign = w.root_images[alpha.index]
        return self.roots[idx], sign

    def act_ambient(self, w: WeylElement, p: Polynomial) -> Polynomial:
        if p.nvars != self.ambient_dim:
            raise ValueError("variable-count mismatch")
        return p.signed_permute(w.perm, w.signs)

    def act_on_polynomial(self, w: WeylElement, p: Polynomial) -> Polynomial:
        """w acting on a reduced polynomial, result reduced."""
        if p.nvars != self.nvars:
            raise ValueError("variable-count mismatch")
        if not self.trace_zero:
            return p.signed_permute(w.perm, w.signs)
        return self.reduce(p.extend(self.ambient_dim).signed_permute(w.perm, w.signs))

    def positive_root_product(self) -> Polynomial:
        prod = Polynomial.const(self.ambient_dim, 1)
        for r in self.roots:
            prod = prod * r.linear_form()
        return prod

    def to_json(self) -> dict:
        return {
            "type": str(self.type),
            "roots": [
                {
                    "index": r.index,
                    "form": to_text(r.linear_form()),
                    "simple_coords": list(r.simple_coords),
                    "height": r.height,
                    "position": list(r.position) if r.position else None,
                }
                for r in self.roots
            ],
            "simple": [r.index for r in self.simple],
            "hasse_edges": [list(e) for e in self.hasse_edges],
            "weyl_order": len(self.weyl_group()),
        }

    def __repr__(self):
        return f"RootSystem({self.type})"


_BUILD_CACHE: dict[tuple[str, int], RootSystem] = {}


def _cached_build(family: str, rank: int) -> RootSystem:
    key = (family, rank)
    if key not in _BUILD_CACHE:
        _BUILD_CACHE[key] = RootSystem(RootSystemType(family, rank))
    return _BUILD_CACHE[key]


def build_root_system(t: RootSystemType) -> RootSystem:
    return _cached_build(t.family, t.rank)


def enumerate_weyl_group(rs: RootSystem, bound: int | None = None) -> list[WeylElement]:
    return rs.weyl_group(bound)


def act_on_polynomial(rs: RootSystem, w: WeylElement, p: Polynomial) -> Polynomial:
    return rs.act_on_polynomial(w, p)


def reflection(rs: RootSystem, alpha: Root) -> WeylElement:
    return rs.reflection(alpha)
