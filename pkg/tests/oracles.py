"""Slow reference computations used as independent checks."""

import itertools
from fractions import Fraction

from orbichi.groups import generated_subgroup
from orbichi.gspace import FiniteGSet


def brute_homs(a, g):
    """Independent oracle: every tuple, relators evaluated straight off the table."""
    t = g.table.tolist()
    inv = {x: next(y for y in g.elements if t[x][y] == g.identity) for x in g.elements}
    out = []
    for images in itertools.product(g.elements, repeat=a.generator_count):
        ok = True
        for w in a.relators:
            acc = g.identity
            for c in w:
                acc = t[acc][images[c - 1] if c > 0 else inv[images[-c - 1]]]
            ok = ok and acc == g.identity
        if ok:
            out.append(images)
    return out


def cosets_by_hand(g, k):
    """Left cosets as frozensets, found by multiplying out."""
    return {frozenset(g.mul(x, y) for y in k.elements) for x in g.elements}


def fixed_euler_oracle(x, gens):
    """Count fixed points cell by cell on explicit coset sets."""
    g = x.group
    if isinstance(x, FiniteGSet):
        return sum(1 for p in range(x.size) if all(x.action[h, p] == p for h in gens))
    total = 0
    for c in x.cells:
        fixed = sum(1 for coset in cosets_by_hand(g, c.stabilizer)
                    if all(frozenset(g.mul(h, y) for y in coset) == coset for h in gens))
        total += c.mult * c.sign * fixed
    return total


def all_subgroups(g):
    return sorted({generated_subgroup(g, [x, y]) for x in g.elements for y in g.elements},
                  key=lambda h: h.elements)


def chi_A_oracle(x, a):
    """Average of fixed-set Euler characteristics over brute-force homomorphisms."""
    g = x.group
    return Fraction(sum(fixed_euler_oracle(x, list(h)) for h in brute_homs(a, g)), g.order)
