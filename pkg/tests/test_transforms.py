import pytest

from nearnormal.catalog import shipped_quad
from nearnormal.families import ConstraintViolation, SequenceQuad, is_near_normal, quad_sums
from nearnormal.search import enumerate_oracle, Family
from nearnormal.seq_core import BinarySequence, reverse
from nearnormal.transforms import (
    GENERATORS,
    NN_GROUP,
    apply,
    apply_unchecked,
    canonical,
    from_raw,
    orbit,
)

Q = SequenceQuad.from_text
SMALL = Q("++", "+-", "+", "+")


def nn_members(n):
    return [from_raw(r) for r in enumerate_oracle(Family.NN, n)]


def test_alt_on_shipped_quad_gives_starred_sums():
    out = apply("ALT", shipped_quad("nn32"))
    assert is_near_normal(out)
    assert quad_sums(out).plain == (7, -7, -4, 4)


def test_negc_is_an_involution_and_swapcd_example():
    q = Q("++", "+-", "+", "-")
    assert apply("SWAPCD", q).texts() == ("++", "+-", "-", "+")
    assert apply(["NEGC", "NEGC"], SMALL) == SMALL


def test_apply_rejects_non_members_and_unknown_generators():
    with pytest.raises(ConstraintViolation):
        apply("ALT", Q("++", "++", "+", "+"))
    with pytest.raises(ValueError, match="unknown generator"):
        apply("REVA", SMALL)


def test_every_generator_is_sound_on_small_families():
    for n in (1, 2, 4, 6):
        for q in nn_members(n):
            for g in GENERATORS:
                assert is_near_normal(apply_unchecked(g, q)), (g, q.texts())


def test_orbit_of_smallest_quad():
    orb = orbit(SMALL)
    assert all(is_near_normal(x) for x in orb)
    assert 128 % len(orb) == 0
    sums = {sum(v * v for v in quad_sums(x).plain) for x in orb}
    assert sums == {2 * (2 * 1 + 1)}


def test_orbit_is_invariant_under_generators():
    for q in nn_members(2):
        base = orbit(q)
        for g in GENERATORS:
            assert orbit(apply(g, q)) == base


def test_canonical_idempotent_and_constant_on_orbits():
    for q in nn_members(4)[:40]:
        c = canonical(q)
        assert canonical(c) == c
        for g in GENERATORS:
            assert canonical(apply(g, q)) == c


def test_negd_related_members_share_canonical_form():
    members = nn_members(4)
    q = members[0]
    partner = apply("NEGD", q)
    assert partner in members
    assert canonical(q) == canonical(partner)


def test_orbits_partition_the_family():
    for n in (2, 4, 6):
        members = set(nn_members(n))
        reps = {canonical(q) for q in members}
        covered = set()
        for r in reps:
            orb = orbit(r)
            assert not (orb & covered)
            covered |= orb
        assert covered == members


def test_reversing_a_and_b_is_not_a_symmetry():
    # counterexample showing why reversal of A and B is left out of the group
    broken = []
    for q in nn_members(2) + nn_members(4):
        flipped = SequenceQuad(reverse(q.a), reverse(q.b), q.c, q.d)
        if not is_near_normal(flipped):
            broken.append(q)
    assert broken
    q = broken[0]
    assert is_near_normal(q)
    assert not is_near_normal(SequenceQuad(reverse(q.a), reverse(q.b), q.c, q.d))


def test_group_names():
    assert set(NN_GROUP) == {"ALT", "NEGAB", "NEGC", "NEGD", "SWAPCD", "REVC", "REVD"}
