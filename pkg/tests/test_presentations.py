import json

import pytest
from hypothesis import given, settings, strategies as st

from catalog import catalog_groups
from orbichi.errors import BudgetExceeded, SpecError, ValidationError
from orbichi.groups import cyclic_group, direct_product, symmetric_group
from oracles import brute_homs
from orbichi.presentations import (FgPresentation, count_homs, cyclic, enumerate_homs, free_abelian,
                                   hom_image_array, hom_orbits, is_homomorphism, parse_presentation,
                                   product, trivial)

GROUPS = catalog_groups()


PRESENTATIONS = {
    "Z": free_abelian(1), "Z^2": free_abelian(2), "Z^3": free_abelian(3),
    "Z2": cyclic(2), "Z3": cyclic(3), "trivial": trivial(),
    "ZxZ2": product(free_abelian(1), cyclic(2)), "Z2xZ2": product(cyclic(2), cyclic(2)),
    "free2": FgPresentation(2, (), label="free:2"),
    "S3": FgPresentation(2, ((1, 1), (2, 2, 2), (1, 2, 1, 2)), label="s3"),
}


@pytest.mark.parametrize("gname", ["trivial", "Z2", "Z3", "Z2xZ2", "S3", "D4"])
@pytest.mark.parametrize("aname", list(PRESENTATIONS))
def test_enumeration_matches_brute_force(aname, gname):
    a, g = PRESENTATIONS[aname], GROUPS[gname]
    expected = brute_homs(a, g)
    got = [h.images for h in enumerate_homs(a, g)]
    assert got == expected  # same lexicographic order
    assert count_homs(a, g, method="scan") == len(expected)
    assert count_homs(a, g, method="backtrack") == len(expected)
    if a.free_abelian_rank is not None:
        assert count_homs(a, g, method="commuting") == len(expected)


def test_known_counts():
    s3 = symmetric_group(3)
    assert count_homs(free_abelian(1), s3) == 6
    assert count_homs(free_abelian(2), s3) == 18      # |G| * number of classes
    assert count_homs(cyclic(2), s3) == 4
    assert count_homs(PRESENTATIONS["ZxZ2"], cyclic_group(2)) == 4
    assert count_homs(PRESENTATIONS["S3"], s3) == 1 + 3 * 2 + 3 * 1  # trivial, onto (6 autos), onto Z2 (3)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["Z", "Z^2", "Z2", "ZxZ2", "Z2xZ2"]),
       st.sampled_from(list(GROUPS)), st.sampled_from(list(GROUPS)))
def test_hom_count_multiplicative_in_target(aname, g1, g2):
    a = PRESENTATIONS[aname]
    p = direct_product(GROUPS[g1], GROUPS[g2])
    assert count_homs(a, p) == count_homs(a, GROUPS[g1]) * count_homs(a, GROUPS[g2])


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(list(GROUPS)), st.integers(1, 3))
def test_free_abelian_count_divisible_by_order(gname, rank):
    g = GROUPS[gname]
    assert count_homs(free_abelian(rank), g) % g.order == 0


@pytest.mark.parametrize("gname", list(GROUPS))
@pytest.mark.parametrize("aname", ["Z", "Z^2", "Z2", "ZxZ2"])
def test_orbits_partition_homs(aname, gname):
    a, g = PRESENTATIONS[aname], GROUPS[gname]
    orbits = hom_orbits(a, g)
    assert sum(size for _, size in orbits) == count_homs(a, g)
    for phi, size in orbits:
        assert g.order % size == 0
        assert is_homomorphism(a, g, phi.images)
    reps = [phi.images for phi, _ in orbits]
    assert reps == sorted(reps)


@pytest.mark.parametrize("gname", list(GROUPS))
def test_orbits_of_z_are_conjugacy_classes(gname):
    g = GROUPS[gname]
    orbits = hom_orbits(free_abelian(1), g)
    assert [(phi.images[0], size) for phi, size in orbits] == \
        sorted((c.representative, c.size) for c in g.conjugacy_classes)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        hom_image_array(free_abelian(3), symmetric_group(4), budget=100)
    with pytest.raises(BudgetExceeded):
        count_homs(cyclic(2), symmetric_group(3), budget=2, method="scan")


def test_relator_validation():
    with pytest.raises(ValidationError):
        FgPresentation(1, ((1, 2),))
    with pytest.raises(ValidationError):
        FgPresentation(0)


@pytest.mark.parametrize("spec,gens,rels", [
    ("free-abelian:1", 1, 0), ("free-abelian:3", 3, 3), ("cyclic:4", 1, 1), ("trivial", 1, 1),
    ("product(free-abelian:1,cyclic:2)", 2, 2),
    ("product(product(cyclic:2,cyclic:2),free-abelian:1)", 3, 5),
])
def test_parse_presentation(spec, gens, rels):
    a = parse_presentation(spec)
    assert (a.generator_count, len(a.relators)) == (gens, rels)


@pytest.mark.parametrize("spec", ["free-abelian:0", "cyclic:-1", "nonsense", "product(cyclic:2)", "file:/nope"])
def test_parse_presentation_errors(spec):
    with pytest.raises(SpecError):
        parse_presentation(spec)


def test_presentation_file(tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"generators": 2, "relators": [[1, 1], [2, 2], [1, 2, -1, -2]]}))
    a = parse_presentation(f"file:{path}")
    assert count_homs(a, symmetric_group(3)) == count_homs(product(cyclic(2), cyclic(2)), symmetric_group(3))


def test_structure_hints():
    assert free_abelian(3).split_z() == free_abelian(2)
    assert PRESENTATIONS["ZxZ2"].split_z() == cyclic(2)
    assert cyclic(2).split_z() is None
    assert PRESENTATIONS["ZxZ2"].has_z_factor() and not cyclic(3).has_z_factor()
