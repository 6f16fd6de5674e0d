"""Service façade combining parsing, decision, witness search and verification."""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Union

from ..data.database import CertificateStore
from ..data.formats import parse_assignment
from ..data.models import (
    Certificate,
    DenseMatrix,
    VerificationRecord,
    WitnessKind,
    WitnessReport,
    Word,
)
from .cache import cache_result, certificate_cache, witness_cache, word_key_func
from .config import Settings, get_settings
from .decider import classify
from .witness import find_witness, inspect_assignment, verify_witness
from .words import format_word, parse_word

logger = logging.getLogger(__name__)


class WordCertifier:
    """Main service class: words in, certificates and witnesses out.

    Results are memoized per printed word; when a store is attached every
    decision and every witness found is also written to it.
    """

    def __init__(self, store: Optional[CertificateStore] = None, settings: Optional[Settings] = None):
        self.store = store
        self.settings = settings or get_settings()

    def parse(self, text: str, sym: Iterable[str] = ()) -> Word:
        return parse_word(text, sym)

    @cache_result(certificate_cache, key_func=word_key_func("decide"))
    def _classify(self, w: Word) -> Certificate:
        return classify(w)

    def decide_word(self, w: Word) -> Certificate:
        cert = self._classify(w)
        logger.info(f"{format_word(w)!r}: {cert.label}")
        if self.store is not None:
            self.store.save_certificate(w, cert)
        return cert

    def decide(self, text: str, sym: Iterable[str] = ()) -> Certificate:
        return self.decide_word(self.parse(text, sym))

    @cache_result(witness_cache, key_func=word_key_func("witness"))
    def _search(self, w: Word, dims, trials, seed, imag_tol) -> Optional[WitnessReport]:
        return find_witness(w, dims=dims, trials=trials, seed=seed, imag_tol=imag_tol, workers=self.settings.workers)

    def find_witness_word(
        self,
        w: Word,
        dims: Optional[Sequence[int]] = None,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        imag_tol: Optional[float] = None,
    ) -> Optional[WitnessReport]:
        """Structured template, scalar PSD witness or seeded random search; None when the search runs dry."""
        dims = list(dims or self.settings.default_dims)
        trials = self.settings.default_trials if trials is None else trials
        seed = self.settings.default_seed if seed is None else seed
        report = self._search(w, dims, trials, seed, imag_tol)
        if report is None:
            logger.warning(f"No witness for {format_word(w)!r} within {trials} trials per dimension")
        elif self.store is not None:
            self.store.save_witness(w, report)
        return report

    def find_witness(
        self,
        text: str,
        sym: Iterable[str] = (),
        dims: Optional[Sequence[int]] = None,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        imag_tol: Optional[float] = None,
    ) -> Optional[WitnessReport]:
        return self.find_witness_word(self.parse(text, sym), dims, trials, seed, imag_tol)

    def verify(
        self,
        text: str,
        sym: Iterable[str] = (),
        assignment: Union[str, Dict[int, DenseMatrix]] = "",
        imag_tol: Optional[float] = None,
        psd_tol: Optional[float] = None,
        claim: Optional[str] = None,
    ) -> VerificationRecord:
        """Spectrum of the evaluated word; with a claim, also whether the claim holds."""
        w = self.parse(text, sym)
        if isinstance(assignment, str):
            assignment = parse_assignment(assignment, w)
        if claim is None:
            return inspect_assignment(w, assignment, imag_tol, psd_tol)
        kind = WitnessKind.SCALAR if claim == "not_psd" else WitnessKind.RANDOM
        report = WitnessReport(assignment, 0j, kind=kind, trials_used=0, seed=None, claim=claim)
        return verify_witness(w, report, imag_tol, psd_tol)

    def get_status(self) -> Dict:
        status = {
            "certificate_cache": certificate_cache.stats(),
            "witness_cache": witness_cache.stats(),
        }
        if self.store is not None:
            status["store"] = self.store.get_status()
        return status

    def list_examples(self) -> List[Dict]:
        from ..data.initial_data import EXAMPLE_WORDS

        return [
            {"name": e.name, "word": e.text, "sym": list(e.sym), "verdict": e.verdict.value, "note": e.note}
            for e in EXAMPLE_WORDS
        ]
