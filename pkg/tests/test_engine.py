"""Tests for the WordCertifier service."""

import pytest

from src.core.cache import certificate_cache, witness_cache
from src.core.config import Settings
from src.core.engine import WordCertifier
from src.core.errors import SymmetryError, WordParseError
from src.data.database import CertificateStore
from src.data.initial_data import EXAMPLE_WORDS, get_example, initialize_example_certificates
from src.data.models import Verdict, WitnessKind

ROTATION = "matrix A\n2\n0 -1\n1 0\n"


@pytest.fixture(autouse=True)
def clear_caches():
    certificate_cache.clear()
    witness_cache.clear()
    yield
    certificate_cache.clear()
    witness_cache.clear()


@pytest.fixture
def store():
    s = CertificateStore(":memory:")
    yield s
    s.close()


@pytest.fixture
def certifier(store):
    return WordCertifier(store, Settings(default_trials=2000))


def test_decide_persists_certificate(certifier, store):
    cert = certifier.decide("A B B^T A^T")
    assert cert.verdict is Verdict.SYMMETRIC
    assert store.get_certificate(certifier.parse("B^T A^T A B"))["verdict"] == "Symmetric"


def test_decisions_are_cached(certifier):
    certifier.decide("A B")
    certifier.decide("A B")
    stats = certificate_cache.stats()
    assert stats["hits"] == 1
    assert stats["size"] == 1


def test_sym_annotations_change_the_cache_key(certifier):
    assert certifier.decide("X Y").verdict is Verdict.NOT_REAL
    assert certifier.decide("X", ["X"]).verdict is Verdict.SYM_TIMES_PSD
    assert certifier.decide("X").verdict is Verdict.NOT_REAL


def test_parse_errors_surface(certifier):
    with pytest.raises(WordParseError):
        certifier.decide("A ^T")


def test_structured_witness_is_stored(certifier, store):
    report = certifier.find_witness("A")
    assert report.kind is WitnessKind.ROTATION
    assert len(store.get_witnesses(certifier.parse("A"))) == 1


def test_random_witness_search(certifier):
    report = certifier.find_witness("A B", dims=[2], seed=3)
    assert report is not None
    assert report.kind is WitnessKind.RANDOM
    assert report.seed == 3
    assert abs(report.offending_eigenvalue.imag) > 0


def test_exhausted_search_is_not_cached(certifier):
    assert certifier.find_witness("A B^T A B", dims=[2], trials=0) is None
    assert witness_cache.size() == 0


def test_verify_with_and_without_claim(certifier):
    checked = certifier.verify("A", (), ROTATION, claim="not_real")
    assert checked.passed is True
    inspected = certifier.verify("A", (), ROTATION)
    assert inspected.passed is None
    assert not inspected.is_real


def test_verify_psd_claim_on_gram_word_fails(certifier):
    text = "matrix A\n2\n1 2\n3 4\n"
    record = certifier.verify("A A^T", (), text, claim="not_psd")
    assert record.is_psd
    assert record.passed is False


def test_verify_rejects_asymmetric_sym_matrix(certifier):
    with pytest.raises(SymmetryError):
        certifier.verify("X", ["X"], "matrix X\n2\n0 1\n2 0\n")


def test_examples_carry_their_verdicts(certifier):
    examples = certifier.list_examples()
    assert len(examples) == len(EXAMPLE_WORDS) == 10
    for e in examples:
        assert certifier.decide(e["word"], e["sym"]).verdict.value == e["verdict"], e["name"]


def test_initialize_example_certificates(certifier, store):
    assert initialize_example_certificates(store, certifier) == 10
    status = certifier.get_status()
    assert status["store"]["certificates"] == 10
    assert status["store"]["SymTimesPsd"] == 2


def test_initialize_saves_each_certificate_once(certifier, store, monkeypatch):
    saves = []
    original = store.save_certificate

    def counting_save(w, cert):
        saves.append(w)
        return original(w, cert)

    monkeypatch.setattr(store, "save_certificate", counting_save)
    assert initialize_example_certificates(store, certifier) == len(EXAMPLE_WORDS)
    assert len(saves) == len(EXAMPLE_WORDS)


def test_initialize_into_a_separate_store(store):
    other = CertificateStore(":memory:")
    try:
        assert initialize_example_certificates(other, WordCertifier(store)) == len(EXAMPLE_WORDS)
        assert other.get_status()["certificates"] == len(EXAMPLE_WORDS)
    finally:
        other.close()


def test_get_example():
    assert get_example("gram-pair").text == "A B B^T A^T"
    with pytest.raises(KeyError):
        get_example("missing")
