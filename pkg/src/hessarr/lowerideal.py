"""Lower ideals of the positive-root poset and their Hessenberg encodings."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .rootsystem import Root, RootSystem

DEFAULT_MAX_ROOTS = 30


class NotLowerIdeal(ValueError):
    """Raised when a subset is not downward closed; carries a witness pair."""

    def __init__(self, below: Root, above: Root):
        self.below = below
        self.above = above
        super().__init__(f"{below!r} <= {above!r} but only the latter is in the set")


class InvalidHessenberg(ValueError):
    pass


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class LowerIdeal:
    rs: RootSystem
    mask: int

    @property
    def members(self) -> list[Root]:
        return [self.rs.roots[i] for i in _iter_bits(self.mask)]

    @property
    def indices(self) -> list[int]:
        return list(_iter_bits(self.mask))

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, root: Root) -> bool:
        return bool(self.mask >> root.index & 1)

    def __eq__(self, other):
        return isinstance(other, LowerIdeal) and self.rs is other.rs and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.rs), self.mask))

    def __repr__(self):
        return f"LowerIdeal({self.rs.type}, {[str(r.linear_form()) for r in self.members]})"

    def maximal_roots(self) -> list[Root]:
        out = []
        down = self.rs.down_masks
        for r in self.members:
            if not any(s is not r and (down[s.index] >> r.index & 1) for s in self.members):
                out.append(r)
        return out

    def addable_roots(self) -> list[Root]:
        """Roots alpha not in I with I + alpha still a lower ideal."""
        out = []
        for r in self.rs.roots:
            if not (self.mask >> r.index & 1):
                below = self.rs.down_masks[r.index] & ~(1 << r.index)
                if below & ~self.mask == 0:
                    out.append(r)
        return out

    def with_root(self, root: Root) -> "LowerIdeal":
        return validate_lower_ideal(self.rs, self.mask | (1 << root.index))

    def height_distribution(self) -> list[int]:
        """i_j = number of roots of height j in I, for j = 1 .. max height."""
        hmax = max((r.height for r in self.rs.roots), default=0)
        dist = [0] * (hmax + 1)
        for r in self.members:
            dist[r.height] += 1
        return dist[1:]

    def to_json(self) -> dict:
        from .polyalg import to_text

        return {
            "type": str(self.rs.type),
            "members": [to_text(r.linear_form()) for r in self.members],
            "indices": self.indices,
            "size": len(self),
        }


def validate_lower_ideal(rs: RootSystem, members: int | Iterable[Root | int]) -> LowerIdeal:
    if isinstance(members, int):
        mask = members
        if mask < 0 or mask > rs.full_mask:
            raise ValueError("mask outside the positive roots")
    else:
        mask = 0
        for r in members:
            idx = r if isinstance(r, int) else r.index
            if isinstance(r, Root) and (idx >= len(rs.roots) or rs.roots[idx] is not r):
                raise ValueError(f"{r!r} is not a positive root of {rs.type}")
            mask |= 1 << idx
    for b in _iter_bits(mask):
        missing = rs.down_masks[b] & ~mask
        if missing:
            a = next(_iter_bits(missing))
            raise NotLowerIdeal(rs.roots[a], rs.roots[b])
    return LowerIdeal(rs, mask)


def down_closure(rs: RootSystem, roots: Iterable[Root]) -> LowerIdeal:
    mask = 0
    for r in roots:
        mask |= rs.down_masks[r.index]
    return LowerIdeal(rs, mask)


def enumerate_lower_ideals(rs: RootSystem, bound: int = DEFAULT_MAX_ROOTS) -> list[LowerIdeal]:
    """All lower ideals, as down-closures of antichains, sorted by (size, mask)."""
    if len(rs.roots) > bound:
        raise ValueError(f"|Phi+| = {len(rs.roots)} exceeds enumeration bound {bound}")
    roots = rs.roots
    down = rs.down_masks
    up = [0] * len(roots)
    for b, mask in enumerate(down):
        for a in _iter_bits(mask):
            up[a] |= 1 << b
    found = []

    def extend(start: int, ideal: int, blocked: int):
        found.append(ideal)
        for k in range(start, len(roots)):
            if blocked >> k & 1:
                continue
            # antichain elements are pairwise incomparable
            extend(k + 1, ideal | down[k], blocked | down[k] | up[k])

    extend(0, 0, 0)
    out = sorted(set(found), key=lambda m: (bin(m).count("1"), m))
    if len(out) != len(found):
        raise AssertionError("antichain enumeration produced duplicates")
    return [LowerIdeal(rs, m) for m in out]


def exponents(ideal: LowerIdeal) -> list[int]:
    """Dual partition of the height distribution, sorted ascending, length n."""
    n = ideal.rs.rank
    dist = [n] + ideal.height_distribution() + [0]
    out = []
    for k in range(len(dist) - 1):
        out.extend([k] * (dist[k] - dist[k + 1]))
    if len(out) != n:
        raise AssertionError("height distribution is not a partition")
    return sorted(out)


# ----------------------------------------------------------- Hessenberg form

def hessenberg_flavor(rs: RootSystem) -> str:
    if rs.family == "A":
        return "A"
    if rs.family in ("B", "C"):
        return "BC"
    if rs.family == "G":
        return "G2"
    raise InvalidHessenberg("type D has no Hessenberg encoding")


@dataclass(frozen=True)
class HessenbergFunction:
    values: tuple
    flavor: str

    def __str__(self):
        return ",".join(map(str, self.values))


def check_hessenberg(h: Sequence[int], rs: RootSystem) -> HessenbergFunction:
    flavor = hessenberg_flavor(rs)
    h = tuple(int(v) for v in h)
    n = rs.rank
    if flavor == "A":
        m = n + 1
        if len(h) != m:
            raise InvalidHessenberg(f"type A{n} needs {m} values")
        for i in range(m):
            if not (i + 1 <= h[i] <= m):
                raise InvalidHessenberg(f"h({i + 1}) = {h[i]} out of range")
            if i and h[i] < h[i - 1]:
                raise InvalidHessenberg("h must be non-decreasing")
    elif flavor == "BC":
        if len(h) != n:
            raise InvalidHessenberg(f"type {rs.family}{n} needs {n} values")
        for i in range(1, n + 1):
            top = 2 * n + 1 - i
            v = h[i - 1]
            if not (i <= v <= top):
                raise InvalidHessenberg(f"h({i}) = {v} out of range")
            if v != top and i < n and v > h[i]:
                raise InvalidHessenberg(f"h({i}) > h({i + 1})")
            if v == top and any(h[k - 1] != 2 * n + 1 - k for k in range(i + 1, n + 1)):
                raise InvalidHessenberg(f"h({i}) is full, so later rows must be full")
    else:
        if len(h) != 2:
            raise InvalidHessenberg("type G2 needs 2 values")
        if not (1 <= h[0] <= 6 and 2 <= h[1] <= 3):
            raise InvalidHessenberg("G2 values out of range")
        if h[0] >= 3 and h[1] != 3:
            raise InvalidHessenberg("h(1) >= 3 forces h(2) = 3")
    return HessenbergFunction(h, flavor)


def ideal_from_hessenberg(h: Sequence[int] | HessenbergFunction, rs: RootSystem) -> LowerIdeal:
    values = h.values if isinstance(h, HessenbergFunction) else h
    hf = check_hessenberg(values, rs)
    mask = 0
    for r in rs.roots:
        i, j = r.position
        if j <= hf.values[i - 1]:
            mask |= 1 << r.index
    return validate_lower_ideal(rs, mask)


def hessenberg_from_ideal(ideal: LowerIdeal) -> HessenbergFunction:
    rs = ideal.rs
    flavor = hessenberg_flavor(rs)
    rows = rs.ambient_dim if flavor == "A" else rs.rank
    h = [i + 1 for i in range(rows)]
    for r in ideal.members:
        i, j = r.position
        h[i - 1] = max(h[i - 1], j)
    hf = check_hessenberg(h, rs)
    if ideal_from_hessenberg(hf, rs) != ideal:
        raise AssertionError("Hessenberg encoding does not round-trip")
    return hf


def enumerate_hessenberg(rs: RootSystem) -> list[HessenbergFunction]:
    """All valid Hessenberg functions by direct search over value ranges."""
    from itertools import product

    flavor = hessenberg_flavor(rs)
    n = rs.rank
    if flavor == "A":
        ranges = [range(i + 1, n + 2) for i in range(n + 1)]
    elif flavor == "BC":
        ranges = [range(i, 2 * n + 2 - i) for i in range(1, n + 1)]
    else:
        ranges = [range(1, 7), range(2, 4)]
    out = []
    for h in product(*ranges):
        try:
            out.append(check_hessenberg(h, rs))
        except InvalidHessenberg:
            pass
    return out
