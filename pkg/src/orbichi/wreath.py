"""Wreath products G_n = G wr S_n and their conjugacy theory by types.

An element is a pair ``(g, s)`` with ``g`` a length-n tuple of G-indices and
``s`` a permutation stored as its image array (``s[i]`` is the image of i,
0-based). Multiplication::

    ((g_1..g_n), s) ((g'_1..g'_n), s') = ((g_i g'_{s^-1(i)})_i, s s')

with ``(s s')(i) = s(s'(i))``. Element index is
``rank(s) * |G|**n + code(g)`` where permutations are ranked in
lexicographic order and ``code(g)`` reads ``g`` as a base-|G| number with
``g_1`` most significant. The identity is therefore index 0 whenever G's
identity is 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, ValidationError
from . import groups as _groups
from .groups import FiniteGroup, centralizer


@dataclass(frozen=True)
class WreathElement:
    g: tuple[int, ...]
    perm: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    def perm_inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, j in enumerate(self.perm):
            inv[j] = i
        return tuple(inv)


def wreath_mul(base: FiniteGroup, a: WreathElement, b: WreathElement) -> WreathElement:
    sinv = a.perm_inverse()
    g = tuple(base.mul(a.g[i], b.g[sinv[i]]) for i in range(a.n))
    return WreathElement(g, tuple(a.perm[b.perm[i]] for i in range(a.n)))


class WreathGroup(FiniteGroup):
    """G wr S_n with the index layout described in the module docstring."""

    def __init__(self, base: FiniteGroup, n: int):
        if n < 0:
            raise ValueError("n must be non-negative")
        order = base.order ** n * math.factorial(n)
        if order > _groups.ORDER_CAP:
            raise BudgetExceeded(f"|{base.label} wr S_{n}| = {order} exceeds cap {_groups.ORDER_CAP}")
        self.base = base
        self.n = n
        plist = list(itertools.permutations(range(n)))
        self._perm_rank = {p: i for i, p in enumerate(plist)}
        self._plist = plist
        nb = base.order ** n
        self._nb = nb
        idx = np.arange(order)
        prank, gcode = np.divmod(idx, nb)
        perm_arr = np.array(plist, dtype=np.intp).reshape(len(plist), n)
        self.perms = perm_arr[prank]
        pinv = np.argsort(perm_arr, axis=1) if n else perm_arr
        self.perm_inverses = pinv[prank]
        self.gvecs = (np.array(np.unravel_index(gcode, (base.order,) * n)).T.reshape(order, n)
                      if n else np.zeros((order, 0), dtype=np.intp))
        self._weights = base.order ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self._perm_codes = (perm_arr.astype(np.int64) @ (max(n, 1) ** np.arange(n - 1, -1, -1, dtype=np.int64))
                            if n else np.zeros(1, dtype=np.int64))
        identity = self.index(WreathElement((base.identity,) * n, tuple(range(n))))
        super().__init__(order=order, mul=self._mul_indices, identity=identity,
                         label=f"wreath({base.label},{n})", validate=False)

    def element(self, x: int) -> WreathElement:
        return WreathElement(tuple(int(v) for v in self.gvecs[x]), tuple(int(v) for v in self.perms[x]))

    def index(self, a: WreathElement) -> int:
        if len(a.g) != self.n or sorted(a.perm) != list(range(self.n)):
            raise ValidationError(f"not an element of {self.label}: {a}")
        code = sum(int(v) * int(w) for v, w in zip(a.g, self._weights))
        return self._perm_rank[tuple(a.perm)] * self._nb + code

    def _mul_indices(self, x: int, y: int) -> int:
        return self.index(wreath_mul(self.base, self.element(x), self.element(y)))

    def _build_table(self) -> np.ndarray:
        n, bt = self.n, self.base.table
        if n == 0:
            return np.zeros((1, 1), dtype=np.intp)
        w = max(n, 1) ** np.arange(n - 1, -1, -1, dtype=np.int64)
        table = np.empty((self.order, self.order), dtype=np.intp)
        for a in range(self.order):
            g = bt[self.gvecs[a][None, :], self.gvecs[:, self.perm_inverses[a]]]
            p = self.perms[a][self.perms]
            prank = np.searchsorted(self._perm_codes, p.astype(np.int64) @ w)
            table[a] = prank * self._nb + g.astype(np.int64) @ self._weights
        return table


_wreath_cache: dict = {}


def wreath_group(g: FiniteGroup, n: int) -> WreathGroup:
    """G_n = G wr S_n (cached per base group and n)."""
    key = (id(g), n)
    hit = _wreath_cache.get(key)
    if hit is not None and hit.order > _groups.ORDER_CAP:
        raise BudgetExceeded(f"|{g.label} wr S_{n}| = {hit.order} exceeds cap {_groups.ORDER_CAP}")
    if hit is None or hit.base is not g:
        hit = WreathGroup(g, n)
        _wreath_cache[key] = hit
    return hit


# -- cycle products and types -------------------------------------------------

def perm_cycles(perm: Sequence[int]) -> list[list[int]]:
    """Cycles of a permutation, each listed from its minimal index along ``i -> s^-1(i)``.

    Walking backwards makes the ordered product of the entries along a cycle
    equal to the corresponding component of ``a**r``, hence a well defined
    conjugacy class.
    """
    n = len(perm)
    inv = [0] * n
    for i, j in enumerate(perm):
        inv[j] = i
    seen = [False] * n
    out = []
    for i in range(n):
        if not seen[i]:
            cyc, j = [], i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = inv[j]
            out.append(cyc)
    return out


def cycle_product(base: FiniteGroup, a: WreathElement, cycle: Sequence[int]) -> int:
    """Class representative of the cycle product of ``a`` along ``cycle``."""
    cycle = list(cycle)
    if not cycle:
        raise ValidationError("empty cycle")
    inv = a.perm_inverse()
    start = cycle[0]
    walk, j = [start], inv[start]
    while j != start:
        walk.append(j)
        j = inv[j]
    if sorted(walk) != sorted(cycle) or len(set(cycle)) != len(cycle):
        raise ValidationError(f"{cycle} is not a cycle of {a.perm}")
    return base.class_rep(base.product(a.g[i] for i in walk))


@dataclass(frozen=True)
class WreathType:
    """Counts m_r(c) keyed by (cycle length r, class representative c)."""

    counts: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def from_dict(cls, d: dict) -> "WreathType":
        return cls(tuple(sorted((k, m) for k, m in d.items() if m)))

    def as_dict(self) -> dict:
        return dict(self.counts)

    @property
    def n(self) -> int:
        return sum(r * m for (r, _), m in self.counts)

    def to_json(self) -> list[dict]:
        return [{"r": r, "class_representative": c, "m": m} for (r, c), m in self.counts]


def type_of(base: FiniteGroup, a: WreathElement) -> WreathType:
    counts: dict = {}
    for cyc in perm_cycles(a.perm):
        key = (len(cyc), cycle_product(base, a, cyc))
        counts[key] = counts.get(key, 0) + 1
    return WreathType.from_dict(counts)


def _check_type(t: WreathType, base: FiniteGroup) -> None:
    reps = {c.representative for c in base.conjugacy_classes}
    for (r, c), m in t.counts:
        if r < 1 or m < 0 or c not in reps:
            raise ValidationError(f"inconsistent type entry {(r, c, m)}")


def centralizer_order_by_type(t: WreathType, base: FiniteGroup) -> int:
    """prod over (r, c) of (r |C_G(c)|)^m * m!."""
    _check_type(t, base)
    out = 1
    for (r, c), m in t.counts:
        out *= (r * centralizer(base, c).order) ** m * math.factorial(m)
    return out


def conjugacy_classes_by_type(base: FiniteGroup, n: int) -> list[tuple[WreathType, int]]:
    """One (type, class size) per colored partition of n by the classes of G."""
    keys = [(r, c.representative) for r in range(1, n + 1) for c in base.conjugacy_classes]
    group_order = base.order ** n * math.factorial(n)
    out = []

    def rec(i: int, left: int, chosen: dict):
        if left == 0:
            t = WreathType.from_dict(chosen)
            out.append((t, group_order // centralizer_order_by_type(t, base)))
            return
        if i == len(keys):
            return
        r = keys[i][0]
        for m in range(left // r, -1, -1):
            if m:
                chosen[keys[i]] = m
            rec(i + 1, left - r * m, chosen)
            chosen.pop(keys[i], None)

    rec(0, n, {})
    out.sort(key=lambda p: p[0].counts)
    return out


def representative_of_type(base: FiniteGroup, t: WreathType) -> WreathElement:
    """An element of the given type: each cycle carries its class rep in the first slot."""
    g, perm, pos = [], [], 0
    for (r, c), m in t.counts:
        for _ in range(m):
            block = list(range(pos, pos + r))
            # s(i) = i + 1 cyclically inside the block
            perm += block[1:] + block[:1]
            g += [c] + [base.identity] * (r - 1)
            pos += r
    return WreathElement(tuple(g), tuple(perm))


# -- centralizer factors ------------------------------------------------------

@lru_cache(maxsize=None)
def cyclic_extension(base: FiniteGroup, c: int, r: int) -> FiniteGroup:
    """C_G(c) extended by a central element a with a^r = c; order r |C_G(c)|.

    Element ``j * |C| + h`` is ``h a^j`` (h indexes C_G(c).as_group, 0 <= j < r).
    This is the factor C_G(c)<a_{r,c}> of a wreath centralizer.
    """
    cent = centralizer(base, c).as_group
    cl = cent.embedding.index(c)
    nc = cent.order
    ct = cent.table
    order = r * nc
    idx = np.arange(order)
    j, h = np.divmod(idx, nc)
    s = j[:, None] + j[None, :]
    carry, jj = np.divmod(s, r)
    hh = ct[h[:, None], h[None, :]]
    hh = np.where(carry == 1, ct[hh, cl], hh)
    grp = FiniteGroup(jj * nc + hh, identity=cent.identity, label=f"ext({base.label},{c},{r})", validate=False)
    grp.extension_generator = nc + cent.identity if r > 1 else cl
    grp.extension_base = cent
    return grp


@lru_cache(maxsize=None)
def chi_k_point_wreath(base: FiniteGroup, n: int, k: int) -> Fraction:
    """chi^(k)(pt, G_n) by summing over classes of G_n (by type) the value
    chi^(k-1)(pt, centralizer), with centralizers split into wreath factors."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if n == 0 or k == 0:
        return Fraction(1)
    total = Fraction(0)
    for t, _ in conjugacy_classes_by_type(base, n):
        term = Fraction(1)
        for (r, c), m in t.counts:
            term *= chi_k_point_wreath(cyclic_extension(base, c, r), m, k - 1)
        total += term
    return total


def type_partition_bruteforce(base: FiniteGroup, n: int) -> tuple[list[list[int]], dict]:
    """Brute-force conjugacy classes of G_n and the type of each element."""
    w = wreath_group(base, n)
    types = {x: type_of(base, w.element(x)) for x in w.elements}
    return [list(c.members) for c in w.conjugacy_classes], types
