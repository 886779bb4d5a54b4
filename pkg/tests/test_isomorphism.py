from __future__ import annotations

import random

import pytest

from gwa.action import conjugation_gwa, trivial_gwa
from gwa.errors import LengthMismatch, MixedUnderlyingGroups
from gwa.groups import catalog, cyclic
from gwa.ideals import all_ideals, quotient_gwa
from gwa.isomorphism import (
    fingerprint,
    is_gwa_morphism,
    is_isomorphic_gwa,
    iso_families,
    transport,
)
from gwa.structure import center, condition1, nilpotency_class

from util import S3_LABELS, S3_PRINTED, brute_gwa_isomorphic, brute_iso_partition, gwa_from_printed, s3_binding


# --- morphism check -------------------------------------------------------------


def test_identity_map_is_morphism(s3_objects):
    for A in s3_objects:
        assert is_gwa_morphism(A, A, tuple(range(6)))


def test_group_hom_between_trivial_actions_is_morphism(s3):
    A = trivial_gwa(s3)
    B = trivial_gwa(cyclic(2))
    t = next(g for g in range(6) if s3.orders[g] == 2)
    mapping = tuple(0 if s3.orders[g] == 3 or g == 0 else 1 for g in range(6))
    # any group homomorphism works when both actions are trivial
    assert is_gwa_morphism(A, B, mapping)


def test_quotient_projections_are_morphisms(s3_objects):
    for A in s3_objects:
        for ideal in all_ideals(A):
            Q, proj = quotient_gwa(A, ideal)
            assert is_gwa_morphism(A, Q, proj.mapping)


def test_morphism_length_check(s3_objects):
    with pytest.raises(LengthMismatch):
        is_gwa_morphism(s3_objects[0], s3_objects[0], (0, 1, 2))


def test_non_morphism_detected(s3, s3_objects):
    session = gwa_from_printed(s3, S3_LABELS, S3_PRINTED, s3_binding(s3))
    trivial = trivial_gwa(s3)
    # the identity является a group isomorphism but not action-compatible
    assert not is_gwa_morphism(session, trivial, tuple(range(6)))


# --- isomorphism ------------------------------------------------------------------


def test_reflexive(s3_objects):
    for A in s3_objects[:4]:
        assert is_isomorphic_gwa(A, A)


def test_session_object_not_isomorphic_to_its_ideal_style_mate(s3, s3_objects):
    session = gwa_from_printed(s3, S3_LABELS, S3_PRINTED, s3_binding(s3))
    assert not is_isomorphic_gwa(session, trivial_gwa(s3))
    assert not is_isomorphic_gwa(session, conjugation_gwa(s3))


def test_trivial_vs_conjugation_s3(s3):
    assert not is_isomorphic_gwa(trivial_gwa(s3), conjugation_gwa(s3))


def test_isomorphism_across_equal_groups_built_twice(s3):
    # same tables arising from different Group instances still compare
    other = catalog(6, 1)
    assert is_isomorphic_gwa(trivial_gwa(s3), trivial_gwa(other))


def test_transport_yields_isomorphic_object(s3, s3_objects):
    from gwa.groups import automorphisms

    alpha = automorphisms(s3)[3]
    for A in s3_objects[:5]:
        moved = transport(A, alpha)
        assert is_isomorphic_gwa(A, moved)


def test_isomorphism_agrees_with_brute_force_pairwise(klein_objects):
    for i, A in enumerate(klein_objects):
        for B in klein_objects[i:]:
            assert is_isomorphic_gwa(A, B) == brute_gwa_isomorphic(A, B)


# --- fingerprint ------------------------------------------------------------------


def test_fingerprint_kernel_of_trivial(s3):
    assert fingerprint(trivial_gwa(s3))[0] == 6


def test_fingerprint_separates_trivial_from_conjugation(s3):
    fa = fingerprint(trivial_gwa(s3))
    fb = fingerprint(conjugation_gwa(s3))
    assert fa != fb
    # kernel of the actor map: whole group vs the (trivial) group center
    assert fa[0] == 6 and fb[0] == 1
    assert fa[1] == 1 and fb[1] == 6  # image sizes


def test_fingerprint_invariant_under_transport(s3, s3_objects):
    from gwa.groups import automorphisms

    for A in s3_objects:
        for alpha in automorphisms(s3)[:3]:
            assert fingerprint(A) == fingerprint(transport(A, alpha))


# --- family partition --------------------------------------------------------------


def test_s3_families(s3_objects):
    part = iso_families(s3_objects)
    assert len(part.families) == 5
    assert sorted(part.sizes) == [1, 1, 2, 3, 3]
    assert sum(part.sizes) == 10


def test_klein_families(klein_objects):
    part = iso_families(klein_objects)
    assert len(part.families) == 3
    assert sorted(part.sizes) == [1, 3, 6]


def test_q8_families(q8_objects):
    part = iso_families(q8_objects)
    assert len(part.families) == 10
    assert sum(part.sizes) == 52


def test_singleton_input(s3_objects):
    part = iso_families([s3_objects[0]])
    assert part.families == ((0,),)


def test_partition_covers_everything_once(q8_objects):
    part = iso_families(q8_objects)
    seen = sorted(i for fam in part.families for i in fam)
    assert seen == list(range(52))


def test_partition_independent_of_member_order(s3_objects):
    part = iso_families(s3_objects)
    canonical = {frozenset(s3_objects[i].action for i in fam) for fam in part.families}
    rng = random.Random(7)
    for _ in range(3):
        shuffled = list(s3_objects)
        rng.shuffle(shuffled)
        part2 = iso_families(shuffled)
        got = {frozenset(shuffled[i].action for i in fam) for fam in part2.families}
        assert got == canonical


def test_mixed_groups_rejected(s3_objects, klein_objects):
    with pytest.raises(MixedUnderlyingGroups):
        iso_families([s3_objects[0], klein_objects[0]])


def test_partition_json_shape(s3_objects):
    data = iso_families(s3_objects).to_dict()
    assert set(data) == {"families", "sizes"}
    assert sorted(data["sizes"]) == [1, 1, 2, 3, 3]


def test_family_attributes_constant(s3_objects, klein_objects):
    for objects in (s3_objects, klein_objects):
        part = iso_families(list(objects))
        for fam in part.families:
            records = {
                (
                    len(all_ideals(objects[i])),
                    condition1(objects[i]),
                    nilpotency_class(objects[i]).class_value,
                    len(center(objects[i])),
                )
                for i in fam
            }
            assert len(records) == 1


def test_orbit_partition_matches_brute_force(klein_objects, s3_objects):
    for objects in (list(klein_objects), list(s3_objects)):
        orbit = iso_families(objects)
        brute = brute_iso_partition(objects)
        assert sorted(map(tuple, brute)) == sorted(orbit.families)
