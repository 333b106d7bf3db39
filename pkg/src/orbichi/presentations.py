"""Finitely generated groups given by presentations, and Hom(A, G).

Words are tuples of signed 1-based generator indices: ``+i`` is the i-th
generator, ``-i`` its inverse.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from ._parsing import parse_int, split_call
from .errors import BudgetExceeded, SpecError, ValidationError
from .groups import FiniteGroup, Subgroup, generated_subgroup

#: default cap on relator evaluations for one enumeration
DEFAULT_BUDGET = 10**8

Word = tuple[int, ...]


def commutator(i: int, j: int) -> Word:
    return (i, j, -i, -j)


@dataclass(frozen=True)
class FgPresentation:
    generator_count: int
    relators: tuple[Word, ...] = ()
    label: str = ""
    # ("free-abelian", rank) | ("cyclic", m) | ("product", left, right) | None
    structure_hint: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.generator_count < 1:
            raise ValidationError("a presentation needs at least one generator")
        rels = tuple(tuple(int(c) for c in w) for w in self.relators)
        for w in rels:
            for c in w:
                if c == 0 or abs(c) > self.generator_count:
                    raise ValidationError(f"relator {w} references a missing generator")
        object.__setattr__(self, "relators", rels)

    def __str__(self):
        return self.label or f"<{self.generator_count} gens | {len(self.relators)} rels>"

    @property
    def free_abelian_rank(self) -> int | None:
        if self.structure_hint and self.structure_hint[0] == "free-abelian":
            return self.structure_hint[1]
        return None

    @property
    def factors(self) -> tuple["FgPresentation", "FgPresentation"] | None:
        if self.structure_hint and self.structure_hint[0] == "product":
            return self.structure_hint[1], self.structure_hint[2]
        return None

    def has_z_factor(self) -> bool:
        """True when the presentation is hinted as Z x (something) or Z^r."""
        rank = self.free_abelian_rank
        if rank is not None:
            return rank >= 1
        f = self.factors
        return f is not None and (f[0].has_z_factor() or f[1].has_z_factor())

    def split_z(self) -> "FgPresentation | None":
        """If hinted as ``Z x B`` (Z as the leading factor), return B."""
        f = self.factors
        if f is not None and f[0].free_abelian_rank == 1:
            return f[1]
        rank = self.free_abelian_rank
        if rank is not None and rank >= 2:
            return free_abelian(rank - 1)
        return None


def free_abelian(rank: int) -> FgPresentation:
    if rank < 1:
        raise SpecError("free abelian rank must be at least 1")
    rels = tuple(commutator(i, j) for i in range(1, rank + 1) for j in range(i + 1, rank + 1))
    return FgPresentation(rank, rels, label=f"free-abelian:{rank}", structure_hint=("free-abelian", rank))


def cyclic(m: int) -> FgPresentation:
    if m < 1:
        raise SpecError("cyclic order must be positive")
    return FgPresentation(1, ((1,) * m,), label=f"cyclic:{m}", structure_hint=("cyclic", m))


def trivial() -> FgPresentation:
    return cyclic(1)


def _shift(word: Word, by: int) -> Word:
    return tuple(c + by if c > 0 else c - by for c in word)


def product(a1: FgPresentation, a2: FgPresentation) -> FgPresentation:
    """``A1 x A2``: generators concatenated, relators united, cross commutators added."""
    n1 = a1.generator_count
    rels = list(a1.relators) + [_shift(w, n1) for w in a2.relators]
    rels += [commutator(i, n1 + j) for i in range(1, n1 + 1) for j in range(1, a2.generator_count + 1)]
    return FgPresentation(n1 + a2.generator_count, tuple(rels),
                          label=f"product({a1},{a2})", structure_hint=("product", a1, a2))


def presentation_from_json(data: dict, label: str = "file") -> FgPresentation:
    try:
        return FgPresentation(int(data["generators"]), tuple(tuple(w) for w in data["relators"]),
                              label=data.get("label", label))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed presentation: {exc}") from None


def parse_presentation(spec: str) -> FgPresentation:
    """Parse ``free-abelian:k | cyclic:m | product(a,b) | file:path``."""
    spec = spec.strip()
    if spec == "trivial":
        return trivial()
    args = split_call(spec, "product")
    if args is not None:
        if len(args) != 2:
            raise SpecError(f"product takes two arguments: {spec!r}")
        return product(parse_presentation(args[0]), parse_presentation(args[1]))
    name, sep, arg = spec.partition(":")
    if name == "free-abelian" and sep:
        return free_abelian(parse_int(arg, "rank", minimum=1))
    if name == "cyclic" and sep:
        return cyclic(parse_int(arg, "cyclic order", minimum=1))
    if name == "file" and sep:
        try:
            data = json.loads(Path(arg).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read presentation {arg}: {exc}") from None
        return presentation_from_json(data, label=spec)
    raise SpecError(f"unknown presentation spec {spec!r}")


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    target: FiniteGroup
    images: tuple[int, ...]

    def image(self) -> Subgroup:
        return generated_subgroup(self.target, self.images)


def evaluate_word(g: FiniteGroup, word: Word, images: Sequence[int]) -> int:
    acc = g.identity
    for c in word:
        x = images[c - 1] if c > 0 else g.inv(images[-c - 1])
        acc = g.mul(acc, x)
    return acc


def is_homomorphism(a: FgPresentation, g: FiniteGroup, images: Sequence[int]) -> bool:
    return all(evaluate_word(g, w, images) == g.identity for w in a.relators)


def _eval_words_vectorized(g: FiniteGroup, word: Word, cand: np.ndarray) -> np.ndarray:
    t, inv = g.table, g.inverse
    acc = np.full(len(cand), g.identity, dtype=np.intp)
    for c in word:
        col = cand[:, c - 1] if c > 0 else inv[cand[:, -c - 1]]
        acc = t[acc, col]
    return acc


def hom_image_array(a: FgPresentation, g: FiniteGroup, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All homomorphisms as an array of image tuples, lexicographically sorted.

    Generators are assigned one at a time; a relator is checked as soon as all
    generators it mentions have images, so dead prefixes are pruned early.
    """
    n = g.order
    by_level: dict[int, list[Word]] = {}
    for w in a.relators:
        by_level.setdefault(max(abs(c) for c in w), []).append(w)
    cand = np.zeros((1, 0), dtype=np.intp)
    spent = 0
    for level in range(1, a.generator_count + 1):
        rels = by_level.get(level, [])
        size = len(cand) * n
        spent += size * max(len(rels), 1)
        if spent > budget:
            raise BudgetExceeded(
                f"enumerating Hom({a}, {g.label}) needs more than {budget} relator evaluations")
        cand = np.hstack([np.repeat(cand, n, axis=0), np.tile(np.arange(n, dtype=np.intp), len(cand))[:, None]])
        for w in rels:
            cand = cand[_eval_words_vectorized(g, w, cand) == g.identity]
    return cand


def enumerate_homs(a: FgPresentation, g: FiniteGroup, budget: int = DEFAULT_BUDGET) -> list[Homomorphism]:
    return [Homomorphism(g, tuple(int(x) for x in row)) for row in hom_image_array(a, g, budget)]


def count_homs_scan(a: FgPresentation, g: FiniteGroup, budget: int = DEFAULT_BUDGET) -> int:
    """Reference count: test every tuple against every relator."""
    total = g.order ** a.generator_count * max(len(a.relators), 1)
    if total > budget:
        raise BudgetExceeded(f"full scan of Hom({a}, {g.label}) exceeds budget {budget}")
    return sum(1 for images in itertools.product(g.elements, repeat=a.generator_count)
               if is_homomorphism(a, g, images))


def count_commuting_tuples(g: FiniteGroup, rank: int) -> int:
    """|Hom(Z^rank, G)| by recursing into centralizers."""
    comm = g.commute_matrix

    def rec(mask: np.ndarray, r: int) -> int:
        if r == 0:
            return 1
        if r == 1:
            return int(mask.sum())
        return sum(rec(mask & comm[x], r - 1) for x in np.flatnonzero(mask))

    return rec(np.ones(g.order, dtype=bool), rank)


def count_homs(a: FgPresentation, g: FiniteGroup, budget: int = DEFAULT_BUDGET, method: str = "auto") -> int:
    """|Hom(A, G)|.

    ``method`` is ``"backtrack"`` (pruned enumeration), ``"scan"`` (every
    tuple), ``"commuting"`` (centralizer recursion, free abelian A only) or
    ``"auto"``.
    """
    if method == "auto":
        method = "commuting" if a.free_abelian_rank is not None else "backtrack"
    if method == "commuting":
        rank = a.free_abelian_rank
        if rank is None:
            raise ValueError("commuting-tuple count needs a free-abelian presentation")
        return count_commuting_tuples(g, rank)
    if method == "scan":
        return count_homs_scan(a, g, budget)
    if method == "backtrack":
        return len(hom_image_array(a, g, budget))
    raise ValueError(f"unknown method {method!r}")


def hom_orbits(a: FgPresentation, g: FiniteGroup, budget: int = DEFAULT_BUDGET) -> list[tuple[Homomorphism, int]]:
    """Orbits of Hom(A, G) under conjugation, as (minimal representative, size)."""
    homs = hom_image_array(a, g, budget)
    t, inv = g.table, g.inverse
    seen: set[tuple] = set()
    out = []
    for row in homs:
        key = tuple(int(x) for x in row)
        if key in seen:
            continue
        # conjugate by every h at once: rows of h x h^-1
        conj = t[t[:, row], inv[:, None]]
        orbit = {tuple(int(x) for x in r) for r in conj}
        seen |= orbit
        out.append((Homomorphism(g, min(orbit)), len(orbit)))
    out.sort(key=lambda p: p[0].images)
    return out
