"""Exact orbifold Euler characteristics of finite group actions.

The package computes chi^(A)(X, G) for finitely presented A, the series
zeta^(A)_(X,G)(t) built from wreath-product powers, and checks the known
product formulas for these series coefficient by coefficient.
"""

from .errors import BudgetExceeded, OrbichiError, SpecError, ValidationError
from .euler import (chi_A, chi_A_power, chi_k_recursive, chi_orb, point_coefficient, point_zeta,
                    reduce_product, zeta_cellwise, zeta_direct)
from .groups import (ConjugacyClass, FiniteGroup, Subgroup, build_group, centralizer, conjugacy_classes,
                     cyclic_group, dihedral_group, direct_product, generated_subgroup, parse_group_spec,
                     symmetric_group, trivial_group)
from .gspace import (Cell, FiniteGSet, VirtualGSpace, cartesian_power_set, disjoint_union, fixed_euler,
                     induce, parse_space, restrict_to_fixed)
from .presentations import (FgPresentation, Homomorphism, count_homs, enumerate_homs, free_abelian,
                            hom_orbits, parse_presentation)
from .series import RationalSeries, pow_rational, tamanoi_product
from .wreath import (WreathElement, WreathType, centralizer_order_by_type, conjugacy_classes_by_type,
                     cycle_product, type_of, wreath_group)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Cell",
    "ConjugacyClass",
    "FgPresentation",
    "FiniteGSet",
    "FiniteGroup",
    "Homomorphism",
    "OrbichiError",
    "RationalSeries",
    "SpecError",
    "Subgroup",
    "ValidationError",
    "VirtualGSpace",
    "WreathElement",
    "WreathType",
    "build_group",
    "cartesian_power_set",
    "centralizer",
    "centralizer_order_by_type",
    "chi_A",
    "chi_A_power",
    "chi_k_recursive",
    "chi_orb",
    "conjugacy_classes",
    "conjugacy_classes_by_type",
    "count_homs",
    "cycle_product",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
    "disjoint_union",
    "enumerate_homs",
    "fixed_euler",
    "free_abelian",
    "generated_subgroup",
    "hom_orbits",
    "induce",
    "parse_group_spec",
    "parse_presentation",
    "parse_space",
    "point_coefficient",
    "point_zeta",
    "pow_rational",
    "reduce_product",
    "restrict_to_fixed",
    "symmetric_group",
    "tamanoi_product",
    "trivial_group",
    "type_of",
    "wreath_group",
    "zeta_cellwise",
    "zeta_direct",
]
