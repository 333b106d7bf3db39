"""G-spaces: virtual cell complexes and honest finite G-sets.

A :class:`VirtualGSpace` is a formal integer combination of cell orbits
``sigma^q x G/K``. Dimension only enters through the sign ``(-1)**q``; every
quantity computed downstream factors through Euler characteristics of fixed
point sets, which is all the cell model has to support.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from ._parsing import parse_index_list, parse_int, split_call
from .errors import BudgetExceeded, SpecError, ValidationError
from .groups import (FiniteGroup, Subgroup, build_group, centralizer_of_set, check_homomorphism,
                     find_embedding, generated_subgroup, same_group)

#: cap on |G_n| * |X|^n when materializing a Cartesian power
POWER_BUDGET = 5 * 10**6


# -- coset bookkeeping ---------------------------------------------------------

@lru_cache(maxsize=4096)
def coset_data(k: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """Left cosets of k: (minimal representatives, coset index of every element)."""
    g = k.parent
    labels = g.table[:, list(k.elements)].min(axis=1)
    reps = np.unique(labels)
    return reps, np.searchsorted(reps, labels)


@lru_cache(maxsize=4096)
def coset_fixed_matrix(k: Subgroup) -> np.ndarray:
    """Boolean (|G|, |G/K|) matrix: entry [h, c] says h fixes the c-th coset."""
    reps, coset_of = coset_data(k)
    return coset_of[k.parent.table[:, reps]] == np.arange(len(reps))


def _fixed_counts(fixed: np.ndarray, images: np.ndarray) -> np.ndarray:
    """Number of points fixed by every image in each row of ``images``."""
    if images.shape[1] == 0:
        return np.full(len(images), fixed.shape[1], dtype=np.int64)
    out = np.empty(len(images), dtype=np.int64)
    chunk = max(1, 4_000_000 // max(1, fixed.shape[1] * images.shape[1]))
    for start in range(0, len(images), chunk):
        block = fixed[images[start:start + chunk]]
        out[start:start + chunk] = block.all(axis=1).sum(axis=1)
    return out


# -- virtual spaces ------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    dim: int
    stabilizer: Subgroup
    mult: int = 1

    @property
    def sign(self) -> int:
        return -1 if self.dim % 2 else 1


@dataclass(frozen=True)
class VirtualGSpace:
    group: FiniteGroup
    cells: tuple[Cell, ...] = ()

    def __post_init__(self):
        cells = []
        for c in self.cells:
            if c.stabilizer.parent is not self.group:
                if not same_group(c.stabilizer.parent, self.group):
                    raise ValidationError("cell stabilizer is not a subgroup of the space's group")
                c = Cell(c.dim, Subgroup(self.group, c.stabilizer.elements), c.mult)
            if c.dim < 0:
                raise ValidationError("cell dimension must be non-negative")
            cells.append(c)
        object.__setattr__(self, "cells", tuple(cells))

    def euler(self) -> int:
        g = self.group.order
        return sum(c.mult * c.sign * (g // c.stabilizer.order) for c in self.cells)

    def fixed_euler_many(self, images: np.ndarray) -> np.ndarray:
        """Euler characteristic of the fixed set of each row of generator images."""
        images = np.asarray(images, dtype=np.intp).reshape(len(images), -1)
        total = np.zeros(len(images), dtype=np.int64)
        for c in self.cells:
            total += c.mult * c.sign * _fixed_counts(coset_fixed_matrix(c.stabilizer), images)
        return total

    def fixed_euler_gens(self, gens: Sequence[int]) -> int:
        return int(self.fixed_euler_many(np.array([list(gens)], dtype=np.intp).reshape(1, -1))[0])

    def as_virtual(self) -> "VirtualGSpace":
        return self


def point(g: FiniteGroup) -> VirtualGSpace:
    return VirtualGSpace(g, (Cell(0, g.whole(), 1),))


def orbit_space(g: FiniteGroup, k: Subgroup, dim: int = 0, mult: int = 1) -> VirtualGSpace:
    return VirtualGSpace(g, (Cell(dim, k, mult),))


def empty_space(g: FiniteGroup) -> VirtualGSpace:
    return VirtualGSpace(g, ())


def virtual_with_euler(g: FiniteGroup, chi: int) -> VirtualGSpace:
    """|chi| fixed cells, of dimension 0 when chi >= 0 and 1 otherwise."""
    if chi == 0:
        return empty_space(g)
    return VirtualGSpace(g, (Cell(0 if chi > 0 else 1, g.whole(), abs(chi)),))


# -- finite G-sets ---------------------------------------------------------------

class FiniteGSet:
    """A finite set with an action given as an (|G|, size) table."""

    def __init__(self, group: FiniteGroup, action, validate: bool = True):
        self.group = group
        self.action = np.ascontiguousarray(np.asarray(action, dtype=np.intp).reshape(group.order, -1))
        self.size = self.action.shape[1]
        if validate:
            self.validate()

    def __repr__(self):
        return f"FiniteGSet(size={self.size}, group={self.group!r})"

    def validate(self) -> None:
        g, act = self.group, self.action
        if self.size and (act.min() < 0 or act.max() >= self.size):
            raise ValidationError("action table entries out of range")
        if not np.array_equal(act[g.identity], np.arange(self.size)):
            raise ValidationError("identity does not act trivially")
        t = g.table
        for x in g.elements:
            # action(x, action(y, p)) == action(xy, p) for all y, p
            if not np.array_equal(act[x][act], act[t[x]]):
                y = int(np.argmax((act[x][act] != act[t[x]]).any(axis=1)))
                raise ValidationError(f"action is not compatible with multiplication at ({x}, {y})")

    def euler(self) -> int:
        return self.size

    @property
    def fixed_matrix(self) -> np.ndarray:
        return self.action == np.arange(self.size)

    def fixed_points(self, gens: Sequence[int]) -> list[int]:
        mask = np.ones(self.size, dtype=bool)
        for x in gens:
            mask &= self.action[x] == np.arange(self.size)
        return [int(p) for p in np.flatnonzero(mask)]

    def fixed_euler_many(self, images: np.ndarray) -> np.ndarray:
        images = np.asarray(images, dtype=np.intp).reshape(len(images), -1)
        return _fixed_counts(self.fixed_matrix, images)

    def fixed_euler_gens(self, gens: Sequence[int]) -> int:
        return len(self.fixed_points(gens))

    def orbits(self) -> list[list[int]]:
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for p in range(self.size):
            if not seen[p]:
                orb = np.unique(self.action[:, p])
                seen[orb] = True
                out.append([int(q) for q in orb])
        return out

    def as_virtual(self) -> VirtualGSpace:
        """Embed as 0-cells, one per orbit, stabilizer of the orbit's minimal point."""
        cells = []
        for orb in self.orbits():
            p = orb[0]
            stab = Subgroup(self.group, tuple(int(x) for x in np.flatnonzero(self.action[:, p] == p)))
            cells.append(Cell(0, stab, 1))
        return VirtualGSpace(self.group, tuple(cells))


Space = Union[VirtualGSpace, FiniteGSet]


def point_set(g: FiniteGroup, count: int = 1) -> FiniteGSet:
    return FiniteGSet(g, np.tile(np.arange(count), (g.order, 1)), validate=False)


def coset_set(g: FiniteGroup, k: Subgroup) -> FiniteGSet:
    """G/K with G acting by left multiplication; point i is the coset of the i-th representative."""
    reps, coset_of = coset_data(k)
    return FiniteGSet(g, coset_of[g.table[:, reps]], validate=False)


def free_orbit(g: FiniteGroup) -> FiniteGSet:
    return coset_set(g, g.trivial_subgroup())


def union_sets(x: FiniteGSet, y: FiniteGSet) -> FiniteGSet:
    if not same_group(x.group, y.group):
        raise ValidationError("disjoint union needs a common group")
    return FiniteGSet(x.group, np.hstack([x.action, y.action + x.size]), validate=False)


# -- operations ------------------------------------------------------------------

def fixed_euler(x: Space, h: Subgroup) -> int:
    """Euler characteristic of X^H."""
    if not same_group(h.parent, x.group):
        raise ValidationError("H is not a subgroup of the space's group")
    return x.fixed_euler_gens(list(h.elements))


def disjoint_union(x: Space, y: Space) -> Space:
    if not same_group(x.group, y.group):
        raise ValidationError("disjoint union needs a common group")
    if isinstance(x, FiniteGSet) and isinstance(y, FiniteGSet):
        return union_sets(x, y)
    return VirtualGSpace(x.group, x.as_virtual().cells + y.as_virtual().cells)


def restrict_to_fixed(x: Space, g: int | Iterable[int]) -> VirtualGSpace:
    """The fixed locus of g (an element or a set of elements) over its centralizer.

    The result lives on ``C.as_group`` where C is the centralizer; each fixed
    coset orbit of C becomes one cell with the original dimension and
    multiplicity.
    """
    gens = [g] if isinstance(g, (int, np.integer)) else list(g)
    grp = x.group
    cent = centralizer_of_set(grp, gens)
    cgrp = cent.as_group
    c_els = np.array(cent.elements, dtype=np.intp)
    lookup = np.full(grp.order, -1, dtype=np.intp)
    lookup[c_els] = np.arange(len(c_els))
    cells = []
    for cell in x.as_virtual().cells:
        reps, coset_of = coset_data(cell.stabilizer)
        fixed = coset_fixed_matrix(cell.stabilizer)
        mask = fixed[gens].all(axis=0) if gens else np.ones(len(reps), dtype=bool)
        remaining = set(int(i) for i in np.flatnonzero(mask))
        while remaining:
            idx = min(remaining)
            moved = coset_of[grp.table[c_els, reps[idx]]]
            remaining -= set(int(i) for i in moved)
            stab = c_els[moved == idx]
            cells.append(Cell(cell.dim, Subgroup(cgrp, tuple(int(s) for s in lookup[stab])), cell.mult))
    return VirtualGSpace(cgrp, tuple(cells))


def induce(z: Space, h: FiniteGroup, embedding: Sequence[int] | None = None) -> VirtualGSpace:
    """ind_G^H Z along an injective homomorphism G -> H (found automatically if omitted)."""
    g = z.group
    if embedding is None:
        if g is h:
            embedding = list(g.elements)
        else:
            embedding = find_embedding(g, h)
            if embedding is None:
                raise ValidationError(f"{g.label} does not embed in {h.label}")
    else:
        check_homomorphism(g, h, list(embedding), injective=True)
    cells = tuple(Cell(c.dim, Subgroup(h, tuple(embedding[k] for k in c.stabilizer.elements)), c.mult)
                  for c in z.as_virtual().cells)
    return VirtualGSpace(h, cells)


def cartesian_power_set(x: FiniteGSet, n: int, wreath=None) -> FiniteGSet:
    """X^n as a G_n-set: ((g), s)(x_1..x_n) = (g_1 x_{s^-1(1)}, ..., g_n x_{s^-1(n)}).

    Point index is the base-|X| number with x_1 most significant.
    """
    from .wreath import wreath_group

    if n < 1:
        raise ValueError("n must be positive")
    w = wreath if wreath is not None else wreath_group(x.group, n)
    npts = x.size ** n
    if w.order * npts > POWER_BUDGET:
        raise BudgetExceeded(f"X^{n} with |X|={x.size} over a group of order {w.order} exceeds the power budget")
    pts = np.array(np.unravel_index(np.arange(npts), (x.size,) * n)).T.reshape(npts, n) if npts else np.zeros((0, n), dtype=np.intp)
    weights = x.size ** np.arange(n - 1, -1, -1)
    action = np.empty((w.order, npts), dtype=np.intp)
    for e in range(w.order):
        gvec, sinv = w.gvecs[e], w.perm_inverses[e]
        moved = x.action[gvec[None, :], pts[:, sinv]]
        action[e] = moved @ weights
    return FiniteGSet(w, action, validate=False)


# -- specs -----------------------------------------------------------------------

def parse_space(spec: str, group: FiniteGroup) -> Space:
    """Parse a space spec relative to ``group``.

    Grammar: ``pt | free | points:m | cosets:i,j,.. | virtual:chi | a+b |
    union(a,b) | file:path``. ``cosets:`` takes generators of the stabilizer.
    """
    spec = spec.strip()
    args = split_call(spec, "union")
    if args is not None:
        parts = args
    else:
        parts = _split_plus(spec)
    if len(parts) > 1:
        result = parse_space(parts[0], group)
        for p in parts[1:]:
            result = disjoint_union(result, parse_space(p, group))
        return result
    if spec == "pt":
        return point_set(group)
    if spec == "free":
        return free_orbit(group)
    if spec == "empty":
        return empty_space(group)
    name, sep, arg = spec.partition(":")
    if not sep:
        raise SpecError(f"unknown space spec {spec!r}")
    if name == "points":
        return point_set(group, parse_int(arg, "point count"))
    if name == "cosets":
        gens = parse_index_list(arg)
        if any(i >= group.order for i in gens):
            raise SpecError("stabilizer generator out of range")
        return coset_set(group, generated_subgroup(group, gens))
    if name == "virtual":
        try:
            chi = int(arg)
        except ValueError:
            raise SpecError(f"virtual euler characteristic must be an integer, got {arg!r}") from None
        return virtual_with_euler(group, chi)
    if name == "file":
        try:
            data = json.loads(Path(arg).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read space {arg}: {exc}") from None
        return space_from_json(data, group)
    raise SpecError(f"unknown space spec {spec!r}")


def _split_plus(spec: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(spec):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            parts.append(spec[start:i].strip())
            start = i + 1
    parts.append(spec[start:].strip())
    return parts


def space_from_json(data: dict, group: FiniteGroup | None = None) -> Space:
    """``{group, cells: [{dim, stabilizer, mult}]}`` or ``{group, size, action}``.

    Stabilizers are listed by element indices and closed under generation.
    """
    if group is None:
        if "group" not in data:
            raise SpecError("space JSON needs a group")
        group = build_group(data["group"])
    try:
        if "cells" in data:
            cells = []
            for c in data["cells"]:
                stab = generated_subgroup(group, c.get("stabilizer", []))
                cells.append(Cell(int(c.get("dim", 0)), stab, int(c.get("mult", 1))))
            return VirtualGSpace(group, tuple(cells))
        size = int(data["size"])
        action = np.asarray(data["action"], dtype=np.intp).reshape(group.order, size)
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed space JSON: {exc}") from None
    return FiniteGSet(group, action)


def space_to_json(x: Space, group_spec: str | None = None) -> dict:
    out: dict = {} if group_spec is None else {"group": group_spec}
    if isinstance(x, FiniteGSet):
        out.update(size=x.size, action=x.action.reshape(-1).tolist())
    else:
        out["cells"] = [{"dim": c.dim, "stabilizer": list(c.stabilizer.elements), "mult": c.mult}
                        for c in x.cells]
    return out


def product_sets(x: FiniteGSet, y: FiniteGSet) -> FiniteGSet:
    """X x Y over G1 x G2; point ``(p, q)`` has index ``p*|Y| + q``."""
    from .groups import direct_product

    g = direct_product(x.group, y.group)
    action = (x.action[:, None, :, None] * y.size + y.action[None, :, None, :])
    return FiniteGSet(g, action.reshape(g.order, x.size * y.size), validate=False)
