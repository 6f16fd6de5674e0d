"""End-to-end check of the certifier: examples in, certificates and verified witnesses out."""

import logging

import numpy as np

from src.core.cache import certificate_cache, witness_cache
from src.core.config import Settings
from src.core.engine import WordCertifier
from src.core.witness import draw_assignment, inspect_assignment, verify_witness
from src.data.database import CertificateStore
from src.data.initial_data import EXAMPLE_WORDS, initialize_example_certificates
from src.data.models import Verdict

logger = logging.getLogger(__name__)


def test_system(tmp_path):
    certificate_cache.clear()
    witness_cache.clear()
    store = CertificateStore(str(tmp_path / "certificates.db"))
    certifier = WordCertifier(store, Settings(default_trials=2000))

    try:
        assert initialize_example_certificates(store, certifier) == len(EXAMPLE_WORDS)

        for example in EXAMPLE_WORDS:
            w = certifier.parse(example.text, example.sym)
            cert = certifier.decide_word(w)
            assert cert.verdict is example.verdict, example.name
            logger.info(f"{example.name}: {cert.label}")

            if cert.verdict is Verdict.SYMMETRIC:
                rng = np.random.default_rng(0)
                for _ in range(5):
                    record = inspect_assignment(w, draw_assignment(w, 2, rng))
                    assert record.is_psd, example.name
                continue

            report = certifier.find_witness_word(w, dims=[2, 3], seed=0)
            assert report is not None, example.name
            assert verify_witness(w, report).passed, example.name
            assert store.get_witnesses(w), example.name

        status = certifier.get_status()["store"]
        assert status["certificates"] == len(EXAMPLE_WORDS)
        assert status["witnesses"] == sum(e.verdict is not Verdict.SYMMETRIC for e in EXAMPLE_WORDS)
    finally:
        store.close()
