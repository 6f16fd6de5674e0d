"""Tests for structured, scalar and random witnesses."""

import numpy as np
import pytest

from src.core.errors import PreconditionError
from src.core.witness import (
    draw_assignment, find_witness, inspect_assignment, psd_scalar_witness, random_witness_search,
    structured_witness, verify_witness,
)
from src.core.words import parse_word
from src.data.models import DenseMatrix, WitnessKind, WitnessReport


@pytest.mark.parametrize("text", ["A", "A A", "A A A", "A^T A^T A^T A^T"])
def test_rotation_witness_for_powers(text):
    w = parse_word(text)
    report = structured_witness(w)
    assert report.kind is WitnessKind.ROTATION
    assert verify_witness(w, report).passed


def test_single_power_reaches_imaginary_unit():
    w = parse_word("A A A")
    report = structured_witness(w)
    assert abs(report.offending_eigenvalue - 1j) < 1e-10


@pytest.mark.parametrize("k", [2, 4, 6])
def test_alternating_symmetric_pair(k):
    w = parse_word(" ".join(["X", "Y"] * (k // 2)), ["X", "Y"])
    report = structured_witness(w)
    assert report.kind is WitnessKind.SYM_PAIR
    assert abs(report.offending_eigenvalue.imag) > 0.1
    assert abs(abs(report.offending_eigenvalue.imag) - np.sqrt(0.5)) < 1e-10
    assert verify_witness(w, report).passed


def test_no_template_for_mixed_words():
    assert structured_witness(parse_word("A B")) is None


@pytest.mark.parametrize("text,sym", [("X", ["X"]), ("A A^T X", ["X"]), ("X Y X", ["X", "Y"])])
def test_scalar_witness_makes_product_negative(text, sym):
    w = parse_word(text, sym)
    report = psd_scalar_witness(w)
    assert report.kind is WitnessKind.SCALAR
    assert report.claim == "not_psd"
    assert report.offending_eigenvalue == -1
    assert report.dimension == 1
    assert verify_witness(w, report).passed


def test_scalar_witness_preconditions():
    assert psd_scalar_witness(parse_word("A A^T")) is None
    with pytest.raises(PreconditionError):
        psd_scalar_witness(parse_word("A B"))


def test_random_search_is_seeded():
    w = parse_word("A B")
    first = random_witness_search(w, dims=[2], trials=200, seed=7)
    second = random_witness_search(w, dims=[2], trials=200, seed=7)
    assert first is not None
    assert first.kind is WitnessKind.RANDOM
    assert first.trials_used == second.trials_used
    assert first.assignment == second.assignment
    assert verify_witness(w, first).passed


def test_random_search_ignores_worker_count():
    w = parse_word("A B^T A B")
    serial = random_witness_search(w, dims=[2, 3], trials=300, seed=11, workers=1)
    parallel = random_witness_search(w, dims=[2, 3], trials=300, seed=11, workers=3)
    assert serial is not None
    assert serial.trials_used == parallel.trials_used
    assert serial.assignment == parallel.assignment


def test_random_search_with_no_trials():
    assert random_witness_search(parse_word("A B"), dims=[2], trials=0, seed=0) is None


def test_symmetric_words_have_no_witness():
    with pytest.raises(PreconditionError):
        find_witness(parse_word("A B B^T A^T"))
    with pytest.raises(PreconditionError):
        random_witness_search(parse_word("A A^T"), dims=[2], trials=5)


def test_find_witness_prefers_cheap_certificates():
    assert find_witness(parse_word("X Y", ["X", "Y"])).kind is WitnessKind.SYM_PAIR
    assert find_witness(parse_word("A A^T X", ["X"])).kind is WitnessKind.SCALAR
    assert find_witness(parse_word("A A")).kind is WitnessKind.ROTATION


def test_draw_assignment_symmetrizes_symmetric_variables():
    w = parse_word("A X", ["X"])
    assignment = draw_assignment(w, 3, np.random.default_rng(0))
    x = assignment[w.var_id("X")].entries
    assert np.array_equal(x, x.T)
    assert np.all(np.abs(assignment[w.var_id("A")].entries) <= 1.0)


def test_wrong_claim_fails_verification():
    w = parse_word("A B")
    identity = DenseMatrix(np.eye(2))
    report = WitnessReport({0: identity, 1: identity}, 1 + 0j, WitnessKind.RANDOM, trials_used=0, seed=None)
    assert verify_witness(w, report).passed is False


def test_inspection_reports_flags_without_claim():
    w = parse_word("A A^T")
    record = inspect_assignment(w, {0: DenseMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]))})
    assert record.claim is None
    assert record.passed is None
    assert record.is_real and record.is_psd
