"""Finite groups stored as multiplication tables over dense element indices.

Element ordering of the catalog families:

* ``cyclic:n``    -- index i is the residue i mod n.
* ``symmetric:n`` -- permutations of ``range(n)`` in lexicographic order of
  their image tuples; the product ``p*q`` is the composition ``p(q(i))``.
* ``dihedral:n``  -- order 2n; index ``i + n*j`` is ``r**i s**j`` with
  ``s r s = r**-1``.
* ``product(A,B)`` -- index ``i1*|B| + i2`` is the pair ``(i1, i2)``.

Every catalog group has identity 0.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from ._parsing import parse_int, split_call
from .errors import BudgetExceeded, SpecError, ValidationError

#: largest order for which a multiplication table is materialized
TABLE_CAP = 4096
#: largest order for which associativity is checked exhaustively
VALIDATE_CAP = 512
#: largest order any constructor will accept
ORDER_CAP = 200_000


class FiniteGroup:
    """A finite group on the indices ``0 .. order-1``.

    Either ``table`` is given, or ``order``/``mul``/``identity`` describe the
    group functionally. Functional groups materialize their table on demand
    as long as ``order <= TABLE_CAP``.
    """

    def __init__(
        self,
        table=None,
        *,
        order: int | None = None,
        mul: Callable[[int, int], int] | None = None,
        identity: int | None = None,
        label: str = "",
        validate: bool = True,
    ):
        self.label = label
        if table is not None:
            table = np.ascontiguousarray(np.asarray(table, dtype=np.intp))
            if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
                raise ValidationError("multiplication table must be a non-empty square array")
            self.order = int(table.shape[0])
            if table.min() < 0 or table.max() >= self.order:
                raise ValidationError("multiplication table entries out of range")
            self._table = table
            self._mul = None
            self.identity = self._find_identity(table) if identity is None else identity
        else:
            if order is None or mul is None or identity is None:
                raise ValueError("functional groups need order, mul and identity")
            if order > ORDER_CAP:
                raise BudgetExceeded(f"group order {order} exceeds cap {ORDER_CAP}")
            self.order = int(order)
            self._table = None
            self._mul = mul
            self.identity = identity
        if validate:
            self.validate()

    def __repr__(self):
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    @staticmethod
    def _find_identity(table: np.ndarray) -> int:
        n = table.shape[0]
        ar = np.arange(n)
        for e in range(n):
            if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
                return e
        raise ValidationError("multiplication table has no two-sided identity")

    # -- multiplication -----------------------------------------------------

    @property
    def has_table(self) -> bool:
        return self._table is not None or self.order <= TABLE_CAP

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.order > TABLE_CAP:
                raise BudgetExceeded(
                    f"order {self.order} is above the table cap {TABLE_CAP}; "
                    "use type-based methods instead")
            self._table = self._build_table()
        return self._table

    def _build_table(self) -> np.ndarray:
        n = self.order
        t = np.empty((n, n), dtype=np.intp)
        for x in range(n):
            for y in range(n):
                t[x, y] = self._mul(x, y)
        return t

    def mul(self, x: int, y: int) -> int:
        if self._table is not None:
            return int(self._table[x, y])
        return self._mul(x, y)

    def product(self, xs: Iterable[int]) -> int:
        acc = self.identity
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    @cached_property
    def inverse(self) -> np.ndarray:
        """Array mapping each element to its inverse."""
        if self.has_table:
            rows, cols = np.nonzero(self.table == self.identity)
            inv = np.empty(self.order, dtype=np.intp)
            inv[rows] = cols
            return inv
        return np.array([self._slow_inv(x) for x in range(self.order)], dtype=np.intp)

    def _slow_inv(self, x: int) -> int:
        y, prev = x, self.identity
        while y != self.identity:
            prev, y = y, self.mul(y, x)
        return prev

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        acc, base = self.identity, x
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    def conjugate(self, x: int, g: int) -> int:
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    @property
    def elements(self) -> range:
        return range(self.order)

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        """Check the group axioms; associativity exhaustively up to VALIDATE_CAP."""
        if not self.has_table:
            return
        t = self.table
        n = self.order
        e = self.identity
        ar = np.arange(n)
        if not (np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
            raise ValidationError(f"element {e} is not a two-sided identity")
        has_right_inv = (t == e).any(axis=1)
        if not has_right_inv.all():
            x = int(np.argmin(has_right_inv))
            raise ValidationError(f"element {x} has no inverse")
        inv = np.argmax(t == e, axis=1)
        if not np.array_equal(t[inv, ar], np.full(n, e)):
            x = int(np.argmax(t[inv, ar] != e))
            raise ValidationError(f"inverse of element {x} is not two-sided")
        if n <= VALIDATE_CAP:
            for a in range(n):
                left = t[t[a]]          # (a*b)*c over (b, c)
                right = t[a][t]         # a*(b*c) over (b, c)
                bad = np.argwhere(left != right)
                if len(bad):
                    b, c = (int(v) for v in bad[0])
                    raise ValidationError(f"multiplication is not associative on ({a}, {b}, {c})")

    # -- structure ----------------------------------------------------------

    @cached_property
    def commute_matrix(self) -> np.ndarray:
        t = self.table
        return t == t.T

    def is_abelian(self) -> bool:
        return bool(self.commute_matrix.all())

    def centralizer(self, x: int) -> "Subgroup":
        return centralizer(self, x)

    @cached_property
    def conjugacy_classes(self) -> list["ConjugacyClass"]:
        return _conjugacy_classes(self)

    @cached_property
    def class_index(self) -> np.ndarray:
        """Array mapping each element to the position of its class."""
        idx = np.empty(self.order, dtype=np.intp)
        for i, c in enumerate(self.conjugacy_classes):
            idx[list(c.members)] = i
        return idx

    def class_rep(self, x: int) -> int:
        return self.conjugacy_classes[self.class_index[x]].representative

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(int(x) for x in self.elements))))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._members

    def __repr__(self):
        return f"Subgroup(order={len(self.elements)} of {self.parent!r})"

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    @property
    def order(self) -> int:
        return len(self.elements)

    def check(self) -> "Subgroup":
        g = self.parent
        if g.identity not in self:
            raise ValidationError("subgroup does not contain the identity")
        for x in self.elements:
            if g.inv(x) not in self:
                raise ValidationError(f"subgroup not closed under inverse at {x}")
            for y in self.elements:
                if g.mul(x, y) not in self:
                    raise ValidationError(f"subgroup not closed under multiplication at ({x}, {y})")
        return self

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and self._members <= other._members

    @cached_property
    def as_group(self) -> FiniteGroup:
        """This subgroup as a standalone group.

        Index i of the new group is parent element ``self.elements[i]``;
        the list is kept on the result as ``embedding``.
        """
        els = np.array(self.elements, dtype=np.intp)
        lookup = np.full(self.parent.order, -1, dtype=np.intp)
        lookup[els] = np.arange(len(els))
        if self.parent.has_table:
            table = lookup[self.parent.table[np.ix_(els, els)]]
        else:
            table = np.array([[lookup[self.parent.mul(int(x), int(y))] for y in els] for x in els])
        grp = FiniteGroup(table, label=f"sub({self.parent.label})", validate=False)
        grp.embedding = tuple(self.elements)
        grp.parent_group = self.parent
        return grp


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


# -- operations --------------------------------------------------------------

def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    """True for the same object or two tabulated groups with identical tables."""
    if a is b:
        return True
    if a.order != b.order or a.identity != b.identity or not (a.has_table and b.has_table):
        return False
    return bool(np.array_equal(a.table, b.table))


def centralizer(g: FiniteGroup, x: int) -> Subgroup:
    """All h with hx = xh."""
    if not 0 <= x < g.order:
        raise IndexError(f"element index {x} out of range")
    return Subgroup(g, tuple(int(h) for h in np.flatnonzero(g.commute_matrix[x])))


def centralizer_of_set(g: FiniteGroup, xs: Iterable[int]) -> Subgroup:
    mask = np.ones(g.order, dtype=bool)
    for x in xs:
        mask &= g.commute_matrix[x]
    return Subgroup(g, tuple(int(h) for h in np.flatnonzero(mask)))


def _conjugacy_classes(g: FiniteGroup) -> list[ConjugacyClass]:
    t = g.table
    inv = g.inverse
    seen = np.zeros(g.order, dtype=bool)
    classes = []
    for x in range(g.order):
        if seen[x]:
            continue
        members = np.unique(t[t[:, x], inv])   # h x h^-1 for all h
        seen[members] = True
        classes.append(ConjugacyClass(x, tuple(int(m) for m in members)))
    return classes


def conjugacy_classes(g: FiniteGroup) -> list[ConjugacyClass]:
    """Classes sorted by their minimal member, which is also the representative."""
    return g.conjugacy_classes


def generated_subgroup(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = sorted(set(int(x) for x in gens) - {g.identity})
    found = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(g, tuple(found))


# -- catalog -----------------------------------------------------------------

def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], label="trivial")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise SpecError("cyclic group order must be positive")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, label=f"cyclic:{n}")


def _perm_codes(perms: np.ndarray, n: int) -> np.ndarray:
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return perms.astype(np.int64) @ weights


def symmetric_group(n: int) -> FiniteGroup:
    if n < 0:
        raise SpecError("symmetric group degree must be non-negative")
    plist = list(itertools.permutations(range(n)))
    perms = np.array(plist, dtype=np.intp).reshape(len(plist), n)
    order = len(perms)
    if order > ORDER_CAP:
        raise BudgetExceeded(f"symmetric:{n} has order {order} above cap {ORDER_CAP}")
    label = f"symmetric:{n}"
    if order > TABLE_CAP:
        index = {tuple(p): i for i, p in enumerate(perms.tolist())}
        plist = perms.tolist()

        def mul(x, y):
            p, q = plist[x], plist[y]
            return index[tuple(p[i] for i in q)]

        grp = FiniteGroup(order=order, mul=mul, identity=0, label=label, validate=False)
    else:
        codes = _perm_codes(perms, n) if n else np.zeros(1, dtype=np.int64)
        table = np.empty((order, order), dtype=np.intp)
        for a in range(order):
            comp = perms[a][perms]           # row b holds p_a(p_b(i))
            table[a] = np.searchsorted(codes, _perm_codes(comp, n)) if n else 0
        grp = FiniteGroup(table, identity=0, label=label)
    grp.perms = perms
    return grp


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    if n < 1:
        raise SpecError("dihedral parameter must be positive")
    order = 2 * n
    table = np.empty((order, order), dtype=np.intp)
    for x in range(order):
        a, b = x % n, x // n
        for y in range(order):
            c, d = y % n, y // n
            i = (a + (c if b == 0 else -c)) % n
            table[x, y] = i + n * ((b + d) % 2)
    return FiniteGroup(table, identity=0, label=f"dihedral:{n}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Componentwise product; element ``(i1, i2)`` has index ``i1*|g2| + i2``."""
    n1, n2 = g1.order, g2.order
    order = n1 * n2
    if order > ORDER_CAP:
        raise BudgetExceeded(f"product order {order} exceeds cap {ORDER_CAP}")
    label = f"product({g1.label},{g2.label})"
    identity = g1.identity * n2 + g2.identity
    if order <= TABLE_CAP:
        t1, t2 = g1.table, g2.table
        table = (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(order, order)
        return FiniteGroup(table, identity=identity, label=label,
                           validate=order <= VALIDATE_CAP and not (n1 == 1 or n2 == 1))

    def mul(x, y):
        a1, a2 = divmod(x, n2)
        b1, b2 = divmod(y, n2)
        return g1.mul(a1, b1) * n2 + g2.mul(a2, b2)

    return FiniteGroup(order=order, mul=mul, identity=identity, label=label, validate=False)


def group_from_table_file(path: str | Path) -> FiniteGroup:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read group table {path}: {exc}") from None
    return group_from_json(data)


def group_from_json(data: dict) -> FiniteGroup:
    try:
        order = int(data["order"])
        mul = np.asarray(data["mul"], dtype=np.intp)
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed group table: {exc}") from None
    if order > VALIDATE_CAP:
        raise BudgetExceeded(f"explicit tables are limited to order {VALIDATE_CAP}")
    if mul.size != order * order:
        raise ValidationError(f"table has {mul.size} entries, expected {order * order}")
    return FiniteGroup(mul.reshape(order, order), label=data.get("label", "table"))


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse ``trivial | cyclic:n | symmetric:n | dihedral:n | product(a,b) | table:path``."""
    spec = spec.strip()
    if spec == "trivial":
        return trivial_group()
    args = split_call(spec, "product")
    if args is not None:
        if len(args) != 2:
            raise SpecError(f"product takes two arguments: {spec!r}")
        return direct_product(parse_group_spec(args[0]), parse_group_spec(args[1]))
    name, sep, arg = spec.partition(":")
    if not sep:
        raise SpecError(f"unknown group spec {spec!r}")
    if name == "table":
        return group_from_table_file(arg)
    constructors = {"cyclic": cyclic_group, "symmetric": symmetric_group, "dihedral": dihedral_group}
    if name not in constructors:
        raise SpecError(f"unknown group family {name!r}")
    return constructors[name](parse_int(arg, f"{name} parameter", minimum=1 if name != "symmetric" else 0))


def build_group(spec) -> FiniteGroup:
    """Build a group from a spec string or a table JSON mapping."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, dict):
        return group_from_json(spec)
    return parse_group_spec(spec)


def find_embedding(g: FiniteGroup, h: FiniteGroup) -> list[int] | None:
    """Lexicographically first injective homomorphism ``g -> h`` as an index map."""
    gens = _small_generating_set(g)
    candidates = [[y for y in h.elements if h.element_order(y) == g.element_order(x)] for x in gens]
    for images in itertools.product(*candidates):
        phi = extend_to_homomorphism(g, h, gens, images)
        if phi is not None and len(set(phi)) == g.order:
            return phi
    return None


def _small_generating_set(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    current = g.trivial_subgroup()
    while current.order < g.order:
        x = next(x for x in g.elements if x not in current)
        gens.append(x)
        current = generated_subgroup(g, gens)
    return gens


def extend_to_homomorphism(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int],
                           images: Sequence[int]) -> list[int] | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism, or None if impossible."""
    phi = {g.identity: h.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, images):
                y, z = g.mul(x, s), h.mul(phi[x], t)
                if y in phi:
                    if phi[y] != z:
                        return None
                else:
                    phi[y] = z
                    nxt.append(y)
        frontier = nxt
    if len(phi) != g.order:
        return None
    return [phi[x] for x in g.elements]


def check_homomorphism(g: FiniteGroup, h: FiniteGroup, phi: Sequence[int], injective: bool = True) -> None:
    if len(phi) != g.order:
        raise ValidationError("embedding must list one image per element")
    for x in g.elements:
        for y in g.elements:
            if h.mul(phi[x], phi[y]) != phi[g.mul(x, y)]:
                raise ValidationError(f"map is not a homomorphism at ({x}, {y})")
    if injective and len(set(phi)) != g.order:
        raise ValidationError("map is not injective")
