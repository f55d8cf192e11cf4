import pytest

from nearnormal.catalog import shipped_quad
from nearnormal.families import (
    ConstraintViolation,
    QuadSums,
    SequenceQuad,
    TernaryQuad,
    check_base,
    check_t_sequences,
    golay_to_normal,
    is_base,
    is_near_normal,
    is_normal,
    is_t_sequences,
    quad_sums,
)
from nearnormal.seq_core import BinarySequence, InvalidInputError, TernarySequence
from nearnormal.transforms import GENERATORS, to_raw, from_raw
import oracle

Q = SequenceQuad.from_text


def tq(*texts):
    return TernaryQuad(*(TernarySequence.from_text(t) for t in texts))


def test_is_base_examples():
    assert is_base(Q("+", "+", "+", "+"))
    assert not is_base(Q("++", "++", "+", "+"))
    report = check_base(Q("++", "++", "+", "+"))
    assert report.lag == 1 and "2" in report.detail


def test_shipped_quads_are_base_and_near_normal():
    for name in ("nn32", "nn34"):
        q = shipped_quad(name)
        assert is_base(q)
        assert is_near_normal(q)
        assert oracle.is_base(*(list(x) for x in q.parts))
    assert not is_normal(shipped_quad("nn32"))


def test_small_normal_and_near_normal():
    q = Q("++", "+-", "+", "+")
    assert is_normal(q)
    assert is_near_normal(q)


def test_length_mismatch_rejected():
    with pytest.raises(InvalidInputError):
        Q("++", "+", "+", "+")
    assert not is_near_normal(Q("+++", "+-+", "+", "+"))


def test_t_sequence_examples():
    assert is_t_sequences(tq("+00", "0+0", "00+", "000"))
    report = check_t_sequences(tq("+0", "+0", "0+", "00"))
    assert not report and report.position == 1
    with pytest.raises(InvalidInputError):
        tq("+0", "+", "0+", "00")


def test_quad_sums_match_table_rows():
    assert quad_sums(shipped_quad("nn32")) == QuadSums(-5, 5, 8, 4, 7, -7, -4, 4)
    assert quad_sums(shipped_quad("nn34")) == QuadSums(7, 7, -2, 6, 9, 5, 4, -4)
    assert quad_sums(Q("+", "+", "+", "+")) == QuadSums(1, 1, 1, 1, 1, 1, 1, 1)


def test_sum_of_squares_identity_holds_for_searched_quads():
    for family, n in (("ns", 3), ("nn", 4)):
        for a, b, c, d in oracle.all_family(family, n):
            s = quad_sums(SequenceQuad(*(BinarySequence(x) for x in (a, b, c, d))))
            m = n + 1
            assert sum(v * v for v in s.plain) == 2 * (m + n)
            assert sum(v * v for v in s.starred) == 2 * (m + n)


def test_golay_embedding():
    q = golay_to_normal(BinarySequence.from_text("++"), BinarySequence.from_text("+-"))
    assert q.texts() == ("+++", "++-", "+-", "+-")
    assert is_normal(q)
    assert golay_to_normal(BinarySequence.from_text("+"), BinarySequence.from_text("+")).texts() == ("++", "+-", "+", "+")
    with pytest.raises(ConstraintViolation, match="shift 1"):
        golay_to_normal(BinarySequence.from_text("++"), BinarySequence.from_text("++"))


def test_alternated_near_normal_quad_stays_near_normal():
    q = shipped_quad("nn32")
    assert is_near_normal(from_raw(GENERATORS["ALT"](to_raw(q))))


def test_no_near_normal_quads_for_small_odd_n():
    assert oracle.all_family("nn", 3) == []
    assert oracle.all_family("nn", 5) == []


def test_predicates_agree_with_oracle_on_random_quads():
    import random

    rng = random.Random(7)
    for _ in range(300):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        parts = [tuple(rng.choice((1, -1)) for _ in range(k)) for k in (m, m, n, n)]
        q = SequenceQuad(*(BinarySequence(p) for p in parts))
        assert is_base(q) == oracle.is_base(*parts)
