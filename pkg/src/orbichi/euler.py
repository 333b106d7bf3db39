"""A-Euler characteristics and their generating series.

Two independent engines produce the series 1 + sum chi^(A)(X^n, G_n) t^n:

* ``zeta_direct`` works in the explicit wreath group, summing fixed-point
  Euler characteristics of X^n over Hom(A, G_n);
* ``zeta_cellwise`` multiplies one-point series of the cell stabilizers,
  raised to the signed cell multiplicities.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded
from .groups import FiniteGroup
from .gspace import FiniteGSet, Space, VirtualGSpace, cartesian_power_set, restrict_to_fixed
from .presentations import DEFAULT_BUDGET, FgPresentation, count_homs, hom_image_array, hom_orbits
from .series import RationalSeries, mul, pow_int
from .wreath import (WreathElement, chi_k_point_wreath, conjugacy_classes_by_type,
                     cyclic_extension, representative_of_type, wreath_group, wreath_mul)

EulerValue = Fraction


def chi_A(x: Space, a: FgPresentation, budget: int = DEFAULT_BUDGET) -> Fraction:
    """(1/|G|) * sum over Hom(A, G) of chi(X^{<phi(A)>})."""
    g = x.group
    try:
        homs = hom_image_array(a, g, budget)
    except BudgetExceeded as exc:
        hint = []
        if a.free_abelian_rank is not None:
            hint.append("chi_k_recursive")
        if a.factors is not None:
            hint.append("reduce_product")
        if hint:
            raise BudgetExceeded(f"{exc}; try {' or '.join(hint)}") from None
        raise
    return Fraction(int(x.fixed_euler_many(homs).sum()), g.order)


def chi_k_recursive(x: Space, k: int) -> Fraction:
    """chi^(k) via the class recursion; chi^(0) is the Euler characteristic of X/G."""
    if k < 0:
        raise ValueError("k must be non-negative")
    g = x.group
    if k == 0:
        total = x.fixed_euler_many(np.arange(g.order, dtype=np.intp)[:, None]).sum()
        return Fraction(int(total), g.order)
    return sum((chi_k_recursive(restrict_to_fixed(x, c.representative), k - 1)
                for c in g.conjugacy_classes), Fraction(0))


def chi_orb(x: Space) -> Fraction:
    return chi_k_recursive(x, 1)


def reduce_product(x: Space, a1: FgPresentation, a2: FgPresentation,
                   budget: int = DEFAULT_BUDGET) -> Fraction:
    """chi^(A1 x A2)(X, G) as a sum over conjugation orbits of Hom(A1, G)."""
    total = Fraction(0)
    for phi, _ in hom_orbits(a1, x.group, budget):
        total += chi_A(restrict_to_fixed(x, phi.images), a2, budget)
    return total


# -- Cartesian powers of virtual spaces ---------------------------------------

def _wreath_inverse(base: FiniteGroup, a: WreathElement) -> WreathElement:
    # (g, s)^-1 = ((g_{s(j)}^-1)_j, s^-1)
    return WreathElement(tuple(base.inv(a.g[a.perm[j]]) for j in range(a.n)), a.perm_inverse())


def power_fixed_euler(x: VirtualGSpace, base: FiniteGroup, gens: list[WreathElement]) -> int:
    """chi((X^n)^H) for H = <gens> in G_n.

    The fixed set is a product over the orbits of H on coordinates; the factor
    for an orbit with base point i is X fixed by the i-th components of the
    stabilizer of i (generated by Schreier generators).
    """
    n = gens[0].n if gens else 0
    ident = WreathElement((base.identity,) * n, tuple(range(n)))
    seen = [False] * n
    result = 1
    for i in range(n):
        if seen[i]:
            continue
        transversal = {i: ident}
        queue = [i]
        stab = set()
        while queue:
            j = queue.pop()
            for s in gens:
                u = wreath_mul(base, s, transversal[j])
                dest = s.perm[j]
                if dest not in transversal:
                    transversal[dest] = u
                    queue.append(dest)
                else:
                    sg = wreath_mul(base, _wreath_inverse(base, transversal[dest]), u)
                    stab.add(sg.g[i])
        for j in transversal:
            seen[j] = True
        stab.discard(base.identity)
        result *= x.fixed_euler_gens(sorted(stab))
        if result == 0:
            return 0
    return result


def chi_A_power(x: Space, n: int, a: FgPresentation, budget: int = DEFAULT_BUDGET) -> Fraction:
    """chi^(A)(X^n, G_n) for a virtual space, through the orbit factorization."""
    x = x.as_virtual()
    g = x.group
    if n == 0:
        return Fraction(1)
    if a.free_abelian_rank == 1:
        # Hom(Z, G_n) = G_n; fixed Euler characteristics are class functions.
        total = Fraction(0)
        order = g.order ** n
        for k in range(2, n + 1):
            order *= k
        for t, size in conjugacy_classes_by_type(g, n):
            total += size * power_fixed_euler(x, g, [representative_of_type(g, t)])
        return total / order
    w = wreath_group(g, n)
    homs = hom_image_array(a, w, budget)
    total = 0
    for row in homs:
        total += power_fixed_euler(x, g, [w.element(int(v)) for v in row])
    return Fraction(total, w.order)


# -- series engines -------------------------------------------------------------

def zeta_direct(x: Space, a: FgPresentation, N: int, budget: int = DEFAULT_BUDGET) -> RationalSeries:
    """1 + sum_{n<=N} chi^(A)(X^n, G_n) t^n, computed in the explicit wreath groups.

    Finite G-sets are raised to literal Cartesian powers; virtual spaces use
    the orbit factorization of fixed sets in X^n.
    """
    coeffs = [Fraction(1)]
    for n in range(1, N + 1):
        if isinstance(x, FiniteGSet):
            w = wreath_group(x.group, n)
            coeffs.append(chi_A(cartesian_power_set(x, n, w), a, budget))
        else:
            coeffs.append(chi_A_power(x, n, a, budget))
    return RationalSeries(tuple(coeffs))


def point_coefficient(k: FiniteGroup, n: int, a: FgPresentation, budget: int = DEFAULT_BUDGET) -> Fraction:
    """chi^(A)(pt, K_n) = |Hom(A, K_n)| / |K_n|.

    Free abelian A goes through the class recursion over wreath types; for
    A = Z x B the leading Z is summed over classes of K_n by type, splitting
    centralizers into wreath factors; anything else is enumerated in K_n.
    """
    return _point_coefficient(k, n, a, budget)


@lru_cache(maxsize=None)
def _point_coefficient(k: FiniteGroup, n: int, a: FgPresentation, budget: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    rank = a.free_abelian_rank
    if rank is not None:
        return chi_k_point_wreath(k, n, rank - 1)
    rest = a.split_z()
    if rest is not None:
        total = Fraction(0)
        for t, _ in conjugacy_classes_by_type(k, n):
            term = Fraction(1)
            for (r, c), m in t.counts:
                term *= _point_coefficient(cyclic_extension(k, c, r), m, rest, budget)
            total += term
        return total
    w = wreath_group(k, n)
    return Fraction(count_homs(a, w, budget), w.order)


def point_zeta(k: FiniteGroup, a: FgPresentation, N: int, budget: int = DEFAULT_BUDGET) -> RationalSeries:
    """zeta^(A) of the one-point K-space, to order N."""
    return RationalSeries(tuple(point_coefficient(k, n, a, budget) for n in range(N + 1)))


def zeta_cellwise(x: Space, a: FgPresentation, N: int, budget: int = DEFAULT_BUDGET) -> RationalSeries:
    """prod over cells (q, K, m) of zeta^(A)_(pt, K)^(m (-1)^q)."""
    out = RationalSeries.one(N)
    for cell in x.as_virtual().cells:
        base = point_zeta(cell.stabilizer.as_group, a, N, budget)
        out = mul(out, pow_int(base, cell.mult * cell.sign))
    return out


def zeta(x: Space, a: FgPresentation, N: int, engine: str = "cellwise",
         budget: int = DEFAULT_BUDGET) -> RationalSeries:
    if engine == "direct":
        return zeta_direct(x, a, N, budget)
    if engine == "cellwise":
        return zeta_cellwise(x, a, N, budget)
    raise ValueError(f"unknown engine {engine!r}")
