"""Tests for rotations and reflections of edge-colored oriented cycles."""

import itertools

import pytest
from hypothesis import given, strategies as st

from src.core.decider import (
    check_reflection_hypothesis, check_rotation_hypothesis, classify, find_reflections, find_rotations,
    is_two_periodic, symmetric_shifts,
)
from src.core.words import parse_word, to_colored_cycle
from src.data.models import ColoredCycle, Verdict

COLORS = [(orientation, color) for orientation in (-1, 0, 1) for color in (0, 1)]


def all_cycles(max_n):
    for n in range(1, max_n + 1):
        for edges in itertools.product(COLORS, repeat=n):
            yield ColoredCycle(n, edges)


def rotation_conclusion(c: ColoredCycle, i: int, j: int) -> bool:
    rotations = find_rotations(c)
    if (j - i) % c.n in rotations:
        return True
    return 2 in rotations and all(orientation == 0 for orientation, _ in c.edges)


def test_colored_cycle_validates():
    with pytest.raises(ValueError):
        ColoredCycle(2, ((1, 0),))
    with pytest.raises(ValueError):
        ColoredCycle(1, ((2, 0),))


def test_rotations_of_alternating_word():
    assert find_rotations(to_colored_cycle(parse_word("A B A B"))) == {2, 4}


def test_reflection_of_a_a_transpose():
    assert find_reflections(to_colored_cycle(parse_word("A A^T"))) == {0}


def test_two_periodic():
    assert is_two_periodic(to_colored_cycle(parse_word("A B A B")))
    assert not is_two_periodic(to_colored_cycle(parse_word("A B A B^T")))
    assert is_two_periodic(to_colored_cycle(parse_word("A A A")))
    assert not is_two_periodic(to_colored_cycle(parse_word("A A B")))


def test_rotation_hypothesis_needs_distinct_positions():
    c = to_colored_cycle(parse_word("A B A B"))
    assert not check_rotation_hypothesis(c, 1, 1)
    assert not check_rotation_hypothesis(c, 0, 4)


def test_rotation_exhaustive_small():
    for c in all_cycles(5):
        for i, j in itertools.product(range(c.n), repeat=2):
            if check_rotation_hypothesis(c, i, j):
                assert rotation_conclusion(c, i, j), (c, i, j)


def test_reflection_exhaustive_small():
    for c in all_cycles(5):
        if is_two_periodic(c):
            continue
        for i in range(c.n):
            if check_reflection_hypothesis(c, i):
                assert i in find_reflections(c), (c, i)


cycles = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.lists(st.sampled_from(COLORS), min_size=n, max_size=n).map(
        lambda edges: ColoredCycle(len(edges), tuple(edges))
    )
)


@given(cycles, st.integers(min_value=0, max_value=7), st.integers(min_value=0, max_value=7))
def test_rotation_hypothesis_implies_symmetry(c, i, j):
    if check_rotation_hypothesis(c, i, j):
        assert rotation_conclusion(c, i, j)


@given(cycles, st.integers(min_value=0, max_value=7))
def test_reflection_hypothesis_implies_reflection(c, i):
    i %= c.n
    if check_reflection_hypothesis(c, i) and not is_two_periodic(c):
        assert i in find_reflections(c)


@given(cycles)
def test_rotations_imply_rotation_hypothesis(c):
    for t in find_rotations(c):
        if t % c.n:
            assert check_rotation_hypothesis(c, 0, t)


@pytest.mark.parametrize("text", ["A A^T", "A B B^T A^T", "B^T C C^T B A A^T", "A^T A B B^T"])
def test_symmetric_shift_gives_reflection_axis(text):
    w = parse_word(text)
    assert classify(w).verdict is Verdict.SYMMETRIC
    reflections = find_reflections(to_colored_cycle(w))
    for j in symmetric_shifts(w):
        assert (2 * j) % w.degree in reflections
