"""Curated example words with their known verdicts."""

from dataclasses import dataclass
from typing import Tuple

from .models import Verdict


@dataclass(frozen=True)
class ExampleWord:
    name: str
    text: str
    sym: Tuple[str, ...]
    verdict: Verdict
    note: str = ""


EXAMPLE_WORDS = [
    ExampleWord("gram-pair", "A B B^T A^T", (), Verdict.SYMMETRIC, "L = A B"),
    ExampleWord("gram-triple", "B^T C C^T B A A^T", (), Verdict.SYMMETRIC,
                "least shift 2 gives L = C^T B A; shift 5 gives A^T B^T C"),
    ExampleWord("gram", "A^T A", (), Verdict.SYMMETRIC),
    ExampleWord("single", "A", (), Verdict.NOT_REAL, "rotation by pi/4"),
    ExampleWord("fourth-power", "A A A A", (), Verdict.NOT_REAL, "rotation by pi/8 has eigenvalue i"),
    ExampleWord("plain-pair", "A B", (), Verdict.NOT_REAL),
    ExampleWord("sym-product", "X1 X2", ("X1", "X2"), Verdict.NOT_REAL, "product of two symmetric matrices"),
    ExampleWord("sym-alternating", "X Y X Y", ("X", "Y"), Verdict.NOT_REAL, "symmetric pair template"),
    ExampleWord("sym-single", "X", ("X",), Verdict.SYM_TIMES_PSD),
    ExampleWord("gram-times-sym", "A A^T X", ("X",), Verdict.SYM_TIMES_PSD, "L = A, tail X"),
]


def get_example(name: str) -> ExampleWord:
    for example in EXAMPLE_WORDS:
        if example.name == name:
            return example
    raise KeyError(name)


def initialize_example_certificates(store, certifier) -> int:
    """Decide every curated example and persist its certificate; returns how many were stored."""
    stored = 0
    for example in EXAMPLE_WORDS:
        w = certifier.parse(example.text, example.sym)
        cert = certifier.decide_word(w)
        if certifier.store is store:
            saved = store.get_certificate(w) is not None
        else:
            saved = store.save_certificate(w, cert)
        stored += saved
    return stored
