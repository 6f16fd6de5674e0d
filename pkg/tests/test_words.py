"""Tests for word parsing, printing and cyclic operations."""

import logging

import pytest
from hypothesis import given, strategies as st

from src.core.errors import WordParseError
from src.core.words import (
    build_word, canonical_key, concat, cyclic_shift, enumerate_words, eq_shift, format_factors,
    format_word, parse_word, sub_word, transpose_word,
)
from src.data.models import Marker

logger = logging.getLogger(__name__)


def markers(w):
    return [f.marker for f in w.factors]


def test_parse_plain_and_transpose_suffixes():
    w = parse_word("A B^T C'")
    assert [info.name for info in w.vars] == ["A", "B", "C"]
    assert markers(w) == [Marker.PLAIN, Marker.TRANSPOSE, Marker.TRANSPOSE]


def test_parse_accepts_star_separators():
    assert parse_word("A*B * A^T") == parse_word("A B A^T")


def test_sym_header_marks_variables():
    w = parse_word("sym: X\nA X A^T")
    assert markers(w) == [Marker.PLAIN, Marker.SYM, Marker.TRANSPOSE]
    assert w.vars[w.var_id("X")].symmetric


def test_transpose_on_symmetric_variable_is_absorbed_with_warning():
    w = parse_word("X^T Y", sym_names=["X"])
    assert markers(w) == [Marker.SYM, Marker.PLAIN]
    assert w.warnings


@pytest.mark.parametrize("text", ["", "   ", "A ^T", "1A", "A-B", "sym: 2X\nA"])
def test_malformed_words_raise(text):
    with pytest.raises(WordParseError):
        parse_word(text)


def test_format_word_prints_sym_header():
    assert format_word(parse_word("A X", ["X"])) == "sym: X\nA X"
    assert format_word(parse_word("A B'")) == "A B^T"


def test_format_word_parses_back():
    w = parse_word("sym: X, Y\nA X Y A^T B")
    assert parse_word(format_word(w)) == w


def test_empty_subword_prints_identity():
    w = parse_word("A B")
    assert format_factors(sub_word(w, 0, 0)) == "I"


def test_canonical_key_is_rotation_invariant():
    assert canonical_key(parse_word("A B C^T")) == canonical_key(parse_word("C^T A B"))
    assert canonical_key(parse_word("A B")) != canonical_key(parse_word("A B^T"))


def test_eq_shift_returns_least_shift():
    assert eq_shift(parse_word("A B C"), parse_word("B C A")) == 1
    w = parse_word("A B A B")
    assert eq_shift(w, cyclic_shift(w, 2)) == 0
    assert eq_shift(parse_word("A B"), parse_word("A B^T")) is None
    assert eq_shift(parse_word("A B"), parse_word("A B C")) is None


def test_concat_merges_tables_by_name():
    w = concat(parse_word("A B"), parse_word("B^T C"))
    assert format_factors(w) == "A B B^T C"
    assert [info.name for info in w.vars] == ["A", "B", "C"]


def test_concat_propagates_symmetry():
    w = concat(parse_word("A X"), parse_word("X", ["X"]))
    assert markers(w) == [Marker.PLAIN, Marker.SYM, Marker.SYM]


def test_enumerate_words_degree_one():
    keys = {canonical_key(w) for w in enumerate_words(1, 2)}
    assert len(keys) == 6


def test_enumerate_words_rejects_bad_variable_count():
    with pytest.raises(ValueError):
        list(enumerate_words(2, 0))


@st.composite
def words(draw, max_size=8):
    sym = draw(st.sets(st.sampled_from("XY"), max_size=2))
    names = draw(st.lists(st.sampled_from("ABXY"), min_size=1, max_size=max_size))
    tokens = []
    for name in names:
        if name in sym:
            tokens.append((name, Marker.SYM))
        else:
            tokens.append((name, draw(st.sampled_from([Marker.PLAIN, Marker.TRANSPOSE]))))
    return build_word(tokens, sym)


@given(words(), st.integers(min_value=0, max_value=20))
def test_transpose_reverses_shift(w, j):
    assert transpose_word(cyclic_shift(w, j)) == cyclic_shift(transpose_word(w), -j)


@given(words())
def test_transpose_is_an_involution(w):
    assert transpose_word(transpose_word(w)) == w


@given(words(), st.integers(min_value=0, max_value=20), st.integers(min_value=0, max_value=20))
def test_shifts_compose(w, i, j):
    assert cyclic_shift(cyclic_shift(w, i), j) == cyclic_shift(w, i + j)


@given(words(), st.integers(min_value=0, max_value=20))
def test_eq_shift_finds_a_valid_shift(w, j):
    shifted = cyclic_shift(w, j)
    found = eq_shift(w, shifted)
    assert found is not None
    assert found <= j % w.degree
    assert cyclic_shift(w, found) == shifted
