"""Exact multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to rational coefficients.
Coefficients are kept as ``int`` when integral and ``fractions.Fraction``
otherwise; both compare and hash consistently, so canonical forms are unique.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .linalg import SparseEchelon

Number = int | Fraction


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _glex_key(exps: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exps), exps)


class Polynomial:
    """Polynomial in ``nvars`` variables x1..xm with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Number] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} does not match nvars={nvars}")
                    clean[e] = _norm(c)
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: Number) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence[Number]) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(n, terms)

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Number = 1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): c})

    # basic queries
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self) -> int | None:
        """Common degree of all terms, or None when inhomogeneous (zero counts as homogeneous of any degree, returns -1)."""
        if not self.terms:
            return -1
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def coefficient(self, exps: Sequence[int]) -> Number:
        return self.terms.get(tuple(exps), 0)

    def constant_term(self) -> Number:
        return self.terms.get((0,) * self.nvars, 0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Number]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _glex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], Number]:
        return max(self.terms.items(), key=lambda t: _glex_key(t[0]))

    def linear_coeffs(self) -> tuple[Number, ...]:
        hd = self.homogeneous_degree()
        if hd not in (1, -1):
            raise ValueError("not a linear form")
        out = [0] * self.nvars
        for e, c in self.terms.items():
            out[e.index(1)] = c
        return tuple(out)

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return Polynomial(self.nvars, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial(self.nvars)
            return Polynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], Number] = {}
        n = self.nvars
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(e1[i] + e2[i] for i in range(n))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(n, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # structural operations
    def evaluate(self, point: Sequence[Number]) -> Number:
        total: Number = 0
        for e, c in self.terms.items():
            v = c
            for xi, k in zip(point, e):
                if k:
                    v = v * xi ** k
            total += v
        return _norm(total)

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute x_i -> images[i] for every variable simultaneously."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        m = images[0].nvars if images else 0
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.const(m, 1)} for _ in images]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * images[i]
            return cache[k]

        out: dict[tuple[int, ...], Number] = {}
        for e, c in self.terms.items():
            term = Polynomial.const(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            for e2, c2 in term.terms.items():
                out[e2] = out.get(e2, 0) + c2
        return Polynomial(m, out)

    def signed_permute(self, perm: Sequence[int], signs: Sequence[int]) -> "Polynomial":
        """Apply the ring map x_k -> signs[k] * x_{perm[k]}."""
        n = self.nvars
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            s = 1
            for k, a in enumerate(e):
                if a:
                    ne[perm[k]] += a
                    if signs[k] < 0 and a & 1:
                        s = -s
            out[tuple(ne)] = c * s
        return Polynomial(n, out)

    def extend(self, m: int) -> "Polynomial":
        """Embed into m >= nvars variables (new trailing variables absent)."""
        pad = (0,) * (m - self.nvars)
        return Polynomial(m, {e + pad: c for e, c in self.terms.items()})

    def truncate(self, m: int) -> "Polynomial":
        """Drop trailing variables, which must not occur."""
        out = {}
        for e, c in self.terms.items():
            if any(e[m:]):
                raise ValueError("dropped variable occurs in polynomial")
            out[e[:m]] = c
        return Polynomial(m, out)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {str(self)!r})"

    def __str__(self):
        return to_text(self)


# ---------------------------------------------------------------- operations

def poly_substitute(p: Polynomial, var_index: int, replacement: Polynomial) -> Polynomial:
    """Replace x_{var_index} by ``replacement`` (same variable count)."""
    if not 0 <= var_index < p.nvars:
        raise IndexError(f"variable index {var_index} out of range")
    if replacement.nvars != p.nvars:
        raise ValueError("replacement must have the same number of variables")
    images = [Polynomial.var(p.nvars, i) for i in range(p.nvars)]
    images[var_index] = replacement
    return p.compose(images)


def partial_derivative(p: Polynomial, var_index: int) -> Polynomial:
    if not 0 <= var_index < p.nvars:
        raise IndexError(f"variable index {var_index} out of range")
    out = {}
    for e, c in p.terms.items():
        k = e[var_index]
        if k:
            ne = list(e)
            ne[var_index] = k - 1
            out[tuple(ne)] = c * k
    return Polynomial(p.nvars, out)


@lru_cache(maxsize=None)
def _falling(b: int, a: int) -> int:
    r = 1
    for t in range(a):
        r *= b - t
    return r


def apply_diff_operator(f: Polynomial, g: Polynomial) -> Polynomial:
    """f(d/dx_1, ..., d/dx_m) applied to g.

    Coordinates must be orthonormal for this to realise the inner-product
    pairing; root systems with a trace-zero model lift to ambient coordinates first.
    """
    if f.nvars != g.nvars:
        raise ValueError("variable count mismatch")
    n = g.nvars
    out: dict[tuple[int, ...], Number] = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            coef = ca * cb
            ok = True
            for i in range(n):
                if b[i] < a[i]:
                    ok = False
                    break
                if a[i]:
                    coef *= _falling(b[i], a[i])
            if not ok:
                continue
            e = tuple(b[i] - a[i] for i in range(n))
            out[e] = out.get(e, 0) + coef
    return Polynomial(n, out)


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given degree, descending graded-lex."""
    if degree < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomials_of_degree(nvars, degree))}


def dim_sym(nvars: int, degree: int) -> int:
    """Dimension of the degree-d piece of a polynomial ring in nvars variables."""
    if degree < 0:
        return 0
    if nvars == 0:
        return 1 if degree == 0 else 0
    return comb(degree + nvars - 1, nvars - 1)


def coefficient_vector(p: Polynomial, degree: int) -> list[Number]:
    idx = monomial_index(p.nvars, degree)
    v = [0] * len(idx)
    for e, c in p.terms.items():
        v[idx[e]] = c
    return v


def multiples_in_degree(gens: Iterable[Polynomial], degree: int) -> list[Polynomial]:
    """All products m*g with m a monomial and deg(m*g) = degree."""
    out = []
    for g in gens:
        if g.is_zero():
            continue
        dg = g.homogeneous_degree()
        if dg is None:
            raise ValueError("generator is not homogeneous")
        if dg > degree:
            continue
        for e in monomials_of_degree(g.nvars, degree - dg):
            out.append(g * Polynomial.monomial(e))
    return out


def graded_span_rank(polys: Sequence[Polynomial], degree: int) -> int:
    """Rank of the span of homogeneous degree-``degree`` polynomials."""
    ech = SparseEchelon()
    for p in polys:
        if p.is_zero():
            continue
        if p.homogeneous_degree() != degree:
            raise ValueError(f"polynomial {p} is not homogeneous of degree {degree}")
        idx = monomial_index(p.nvars, degree)
        ech.add({idx[e]: c for e, c in p.terms.items()})
    return ech.rank


# ------------------------------------------------------------ text format

def _fmt_coeff(c: Number) -> str:
    c = _norm(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _fmt_mono(e: tuple[int, ...], prefix: str) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"{prefix}{i + 1}")
        elif k > 1:
            parts.append(f"{prefix}{i + 1}^{k}")
    return "*".join(parts)


def to_text(p: Polynomial, prefix: str = "x") -> str:
    """Canonical text: descending graded-lex terms, ``c * x1^a1*x2^a2``."""
    if p.is_zero():
        return "0"
    chunks = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = _fmt_mono(e, prefix)
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)} * {mono}"
        if i == 0:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f" - {body}" if neg else f" + {body}")
    return "".join(chunks)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z]+)(\d+)|(\^)|([-+*()]))")


def parse_polynomial(text: str, nvars: int, prefix: str = "x") -> Polynomial:
    """Parse sums of products of rationals and variables ``{prefix}i``.

    Accepts the canonical output of :func:`to_text` plus parentheses, so
    expressions such as ``(x1-x2)*(x1-x3)*x1`` also round-trip.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        num, name, idx, caret, op = m.groups()
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif name is not None:
            if name != prefix:
                raise ValueError(f"unknown variable {name}{idx}")
            i = int(idx) - 1
            if not 0 <= i < nvars:
                raise ValueError(f"variable {name}{idx} out of range")
            tokens.append(("var", i))
        elif caret:
            tokens.append(("^", None))
        else:
            tokens.append((op, None))
    tokens.append(("end", None))
    k = 0

    def peek():
        return tokens[k][0]

    def take():
        nonlocal k
        t = tokens[k]
        k += 1
        return t

    def expr():
        sign = 1
        if peek() in "+-":
            sign = -1 if take()[0] == "-" else 1
        acc = term() * sign
        while peek() in ("+", "-"):
            op = take()[0]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() == "*" or peek() in ("num", "var", "("):
            if peek() == "*":
                take()
            acc = acc * factor()
        return acc

    def factor():
        kind, val = take()
        if kind == "num":
            base = Polynomial.const(nvars, val)
        elif kind == "var":
            base = Polynomial.var(nvars, val)
        elif kind == "(":
            base = expr()
            if take()[0] != ")":
                raise ValueError("unbalanced parentheses")
        elif kind == "-":
            return -factor()
        else:
            raise ValueError(f"unexpected token {kind!r}")
        if peek() == "^":
            take()
            kind2, e = take()
            if kind2 != "num" or e.denominator != 1:
                raise ValueError("exponent must be a non-negative integer")
            base = base ** int(e)
        return base

    result = expr()
    if peek() != "end":
        raise ValueError("trailing input in polynomial")
    return result
