import itertools

import pytest
from hypothesis import given, strategies as st

from nearnormal.seq_core import (
    BinarySequence,
    InvalidInputError,
    TernarySequence,
    alternate,
    concat,
    naf,
    negate,
    reverse,
    seq_sum,
)
from oracle import naf as naf_oracle

B = BinarySequence.from_text


def all_binary(max_len):
    for n in range(1, max_len + 1):
        for entries in itertools.product((1, -1), repeat=n):
            yield BinarySequence(entries)


def test_naf_examples():
    assert naf(B("++")) == (2, 1)
    assert naf(B("++-")) == (3, 0, -1)
    assert naf(TernarySequence.from_text("+0-")) == (2, 0, -1)


def test_naf_rejects_empty():
    with pytest.raises(InvalidInputError):
        BinarySequence(())
    with pytest.raises(InvalidInputError):
        naf([])


def test_binary_rejects_zero_and_ternary_accepts_it():
    with pytest.raises(InvalidInputError):
        BinarySequence((1, 0))
    assert TernarySequence((1, 0, -1)).text() == "+0-"


def test_negate_alternate_reverse_examples():
    assert negate(B("+-")) == B("-+")
    assert alternate(B("++++")) == B("+-+-")
    assert reverse(B("+--")) == B("--+")
    assert reverse(B("+")) == B("+")
    assert naf(B("--+")) == (3, 0, -1)


def test_alternation_sign_rule_on_example():
    x = B("++-")
    assert naf(alternate(x)) == tuple((-1) ** i * v for i, v in enumerate(naf(x)))
    assert naf(alternate(x)) == (3, 0, -1)


def test_concat():
    assert concat(B("+"), B("-")) == B("+-")
    assert concat(B("++"), B("-")) == B("++-")
    with pytest.raises(InvalidInputError):
        concat(B("+"), TernarySequence.from_text("0"))


def test_seq_sum():
    assert seq_sum(B("+-")) == 0
    assert seq_sum(B("+-+-+---+-----++-++--++-+--+-+--+")) == -5
    assert seq_sum(alternate(B("+-+-+---+-----++-++--++-+--+-+--+"))) == 7


def test_naf_identities_exhaustive_up_to_length_8():
    for x in all_binary(8):
        n = len(x)
        prof = naf(x)
        assert list(prof) == naf_oracle(list(x))
        assert prof[0] == n
        for i, v in enumerate(prof):
            assert (v - (n - i)) % 2 == 0
            assert abs(v) <= n - i
        assert naf(negate(x)) == prof
        assert naf(reverse(x)) == prof
        assert naf(alternate(x)) == tuple((-1) ** i * v for i, v in enumerate(prof))
        assert seq_sum(x) ** 2 == prof[0] + 2 * sum(prof[1:])


def test_involutions():
    for x in all_binary(6):
        assert negate(negate(x)) == x
        assert alternate(alternate(x)) == x
        assert reverse(reverse(x)) == x


@given(st.lists(st.sampled_from([1, -1]), min_size=1, max_size=40))
def test_naf_matches_oracle_on_longer_sequences(entries):
    assert list(naf(BinarySequence(tuple(entries)))) == naf_oracle(entries)


@given(st.lists(st.sampled_from([0, 1, -1]), min_size=1, max_size=30))
def test_ternary_naf_matches_oracle(entries):
    assert list(naf(TernarySequence(tuple(entries)))) == naf_oracle(entries)


def test_text_round_trip_and_bad_symbol():
    assert B("+-+").text() == "+-+"
    with pytest.raises(InvalidInputError):
        B("+x")


def test_values_are_hashable_and_immutable():
    x = B("+-")
    assert {x, B("+-")} == {x}
    with pytest.raises(AttributeError):
        x.entries = (1,)
