"""Classification of words as symmetric, sym-times-PSD or not real-eigenvalued.

Every shift j is tested by comparing the shifted word against its mirror
image.  Comparisons are counted with early-exit semantics (first mismatch
ends the test of a shift) so the reported count matches a sequential scan,
while the actual comparison runs vectorized over numpy slices.
"""

import logging
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from ..data.models import Certificate, ColoredCycle, Marker, Verdict, Word
from .errors import PreconditionError
from .words import bar, format_factors, sub_word

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
_MARKER_CODE = {Marker.PLAIN: 0, Marker.TRANSPOSE: 1, Marker.SYM: 2}
_CONJUGATE_CODE = {Marker.PLAIN: 1, Marker.TRANSPOSE: 0, Marker.SYM: 2}


class _ShiftScanner:
    """Mirror comparisons of all cyclic shifts of one word."""

    def __init__(self, w: Word):
        k = w.degree
        codes = np.array([3 * f.var + _MARKER_CODE[f.marker] for f in w.factors], dtype=np.int64)
        conj = np.array([3 * f.var + _CONJUGATE_CODE[f.marker] for f in w.factors], dtype=np.int64)
        self.k = k
        self.doubled = np.concatenate([codes, codes])
        # reversed[m] is the conjugate of doubled[2k - 1 - m]
        self.reversed = np.concatenate([conj, conj])[::-1]
        self.is_sym = np.concatenate([codes % 3 == 2, codes % 3 == 2])
        self.comparisons = 0

    def mirror_matches(self, j: int, h: int) -> bool:
        """Whether factors j+h .. j+2h-1 are the conjugate mirror of j .. j+h-1."""
        if h == 0:
            return True
        k = self.k
        left = self.doubled[j + h:j + 2 * h]
        right = self.reversed[2 * k - j - h:2 * k - j]
        mismatches = np.flatnonzero(left != right)
        if mismatches.size:
            self.comparisons += int(mismatches[0]) + 1
            return False
        self.comparisons += h
        return True

    def first_symmetric_shift(self) -> Optional[int]:
        if self.k % 2:
            return None
        h = self.k // 2
        for j in range(self.k):
            if self.mirror_matches(j, h):
                return j
        return None

    def symmetric_shifts(self) -> List[int]:
        if self.k % 2:
            return []
        h = self.k // 2
        return [j for j in range(self.k) if self.mirror_matches(j, h)]

    def first_sym_plus_shift(self) -> Optional[int]:
        if self.k % 2 == 0:
            return None
        h = (self.k - 1) // 2
        for j in range(self.k):
            self.comparisons += 1
            if not self.is_sym[j + self.k - 1]:
                continue
            if self.mirror_matches(j, h):
                return j
        return None


def is_symmetric(w: Word) -> Optional[Tuple[int, Word]]:
    """Least shift j and half L with cyclic_shift(w, j) = L·Lᵀ, or None."""
    scanner = _ShiftScanner(w)
    j = scanner.first_symmetric_shift()
    if j is None:
        return None
    return j, sub_word(w, j, w.degree // 2)


def symmetric_shifts(w: Word) -> List[int]:
    """Every shift at which w reads as L·Lᵀ (ascending)."""
    return _ShiftScanner(w).symmetric_shifts()


def is_sym_plus(w: Word) -> Optional[Tuple[int, Word, int]]:
    """Least shift j with cyclic_shift(w, j) = L·Lᵀ·X^sym, as (j, L, X), or None."""
    scanner = _ShiftScanner(w)
    j = scanner.first_sym_plus_shift()
    if j is None:
        return None
    k = w.degree
    return j, sub_word(w, j, (k - 1) // 2), w.factors[(j + k - 1) % k].var


def classify(w: Word) -> Certificate:
    """Decide w in O(k²) factor comparisons."""
    if w.degree == 0:
        raise PreconditionError("Cannot classify the empty word")
    scanner = _ShiftScanner(w)
    k = w.degree

    j = scanner.first_symmetric_shift()
    if j is not None:
        cert = Certificate(Verdict.SYMMETRIC, k, scanner.comparisons, shift=j, half=sub_word(w, j, k // 2))
    else:
        j = scanner.first_sym_plus_shift()
        if j is not None:
            cert = Certificate(
                Verdict.SYM_TIMES_PSD, k, scanner.comparisons,
                shift=j, half=sub_word(w, j, (k - 1) // 2), sym_var=w.factors[(j + k - 1) % k].var,
            )
        else:
            cert = Certificate(Verdict.NOT_REAL, k, scanner.comparisons)

    logger.debug(f"Classified degree-{k} word as {cert.verdict.value} after {cert.comparisons} comparisons")
    return cert


def classify_adjoint(w: Word) -> Certificate:
    """Self-adjointness decision for words read with conjugate transposes."""
    if any(f.marker is Marker.SYM for f in w.factors):
        raise PreconditionError("Adjoint classification does not accept symmetric variables")
    if w.degree == 0:
        raise PreconditionError("Cannot classify the empty word")
    scanner = _ShiftScanner(w)
    j = scanner.first_symmetric_shift()
    if j is None:
        return Certificate(Verdict.NOT_REAL, w.degree, scanner.comparisons, mode="adjoint")
    return Certificate(
        Verdict.SYMMETRIC, w.degree, scanner.comparisons,
        shift=j, half=sub_word(w, j, w.degree // 2), mode="adjoint",
    )


def check_certificate(w: Word, cert: Certificate) -> bool:
    """Re-verify the factor identity a certificate states."""
    k = w.degree
    if cert.degree != k:
        return False
    if cert.verdict is Verdict.NOT_REAL:
        return is_symmetric(w) is None and (cert.mode == "adjoint" or is_sym_plus(w) is None)

    shifted = sub_word(w, cert.shift, k).factors
    half = cert.half.factors
    mirror = tuple(f.conjugate() for f in reversed(half))
    if cert.verdict is Verdict.SYMMETRIC:
        return k % 2 == 0 and shifted == half + mirror
    tail = shifted[-1]
    return k % 2 == 1 and tail.var == cert.sym_var and tail.marker is Marker.SYM and shifted[:-1] == half + mirror


def certificate_record(w: Word, cert: Certificate) -> Dict:
    """Versioned JSON-style record of a certificate."""
    return {
        "schema": SCHEMA_VERSION,
        "verdict": cert.verdict.value,
        "label": cert.label,
        "shift": cert.shift,
        "half": format_factors(cert.half) if cert.half is not None else None,
        "sym_var": w.name(cert.sym_var) if cert.sym_var is not None else None,
        "psd": cert.psd,
        "degree": cert.degree,
        "comparisons": cert.comparisons,
    }


def find_rotations(c: ColoredCycle) -> Set[int]:
    """All t in 1..n with c(e_{x+t}) = c(e_x) for every x."""
    n = c.n
    return {t for t in range(1, n + 1) if all(c.color(x + t) == c.color(x) for x in range(n))}


def find_reflections(c: ColoredCycle) -> Set[int]:
    """All axes i for which v_x -> v_{i-x} is color respecting."""
    n = c.n
    return {i for i in range(n) if all(c.color(x) == bar(c.color(i - x - 1)) for x in range(n))}


def check_rotation_hypothesis(c: ColoredCycle, i: int, j: int) -> bool:
    """Local neighbour condition under which positions i and j look alike."""
    if (i - j) % c.n == 0:
        return False
    for s in range(c.n):
        same = c.color(i + s - 1) == c.color(j + s - 1) and c.color(i + s) == c.color(j + s)
        crossed = c.color(i + s - 1) == bar(c.color(j + s)) and c.color(i + s) == bar(c.color(j + s - 1))
        if not (same or crossed):
            return False
    return True


def check_reflection_hypothesis(c: ColoredCycle, i: int) -> bool:
    for s in range(c.n):
        same = c.color(s - 1) == c.color(i - s - 1) and c.color(s) == c.color(i - s)
        crossed = c.color(s - 1) == bar(c.color(i - s)) and c.color(s) == bar(c.color(i - s - 1))
        if not (same or crossed):
            return False
    return True


def is_two_periodic(c: ColoredCycle) -> bool:
    """Whether even and odd edges each carry a single directed color."""
    if c.n % 2:
        return all(c.color(x) == c.color(0) for x in range(c.n))
    return all(c.color(x) == c.color(x % 2) for x in range(c.n))
