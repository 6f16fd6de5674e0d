"""Matrix assignments that refute real-eigenvaluedness or PSD-ness of a word."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from ..data.models import (
    Certificate, DenseMatrix, Marker, Verdict, VerificationRecord, WitnessKind, WitnessReport, Word,
)
from .config import get_settings, imag_tolerance
from .decider import classify
from .errors import ConvergenceError, PreconditionError
from .linalg import Assignment, default_tolerances, evaluate, rotation_matrix, spectrum

logger = logging.getLogger(__name__)

BATCH_PER_WORKER = 8


def _require(w: Word, verdict: Verdict, cert: Optional[Certificate] = None) -> Certificate:
    cert = cert or classify(w)
    if cert.verdict is not verdict:
        raise PreconditionError(f"Word is {cert.verdict.value}, expected {verdict.value}")
    return cert


def _most_imaginary(eigenvalues: np.ndarray) -> complex:
    i = max(range(len(eigenvalues)), key=lambda t: (abs(eigenvalues[t].imag), eigenvalues[t].imag))
    return complex(eigenvalues[i])


def _used_vars(w: Word) -> List[int]:
    return sorted({f.var for f in w.factors})


def _single_power_var(w: Word) -> Optional[int]:
    first = w.factors[0]
    if first.marker is Marker.SYM:
        return None
    if all(f == first for f in w.factors):
        return first.var
    return None


def _alternating_sym_pair(w: Word) -> Optional[tuple]:
    k = w.degree
    if k % 2 or any(f.marker is not Marker.SYM for f in w.factors):
        return None
    x1, x2 = w.factors[0].var, w.factors[1].var
    if x1 == x2:
        return None
    if all(w.factors[i].var == (x1 if i % 2 == 0 else x2) for i in range(k)):
        return x1, x2
    return None


def _report(w: Word, assignment: Assignment, kind: WitnessKind, note: Optional[str] = None) -> WitnessReport:
    s = spectrum(evaluate(w, assignment))
    return WitnessReport(
        assignment=assignment,
        offending_eigenvalue=_most_imaginary(s.eigenvalues),
        kind=kind,
        trials_used=0,
        seed=None,
        note=note,
    )


def structured_witness(w: Word, cert: Optional[Certificate] = None) -> Optional[WitnessReport]:
    """Explicit rotation or symmetric-pair assignments for recognised word shapes."""
    _require(w, Verdict.NOT_REAL, cert)
    k = w.degree

    if k == 1:
        return _report(w, {w.factors[0].var: rotation_matrix(np.pi / 4)}, WitnessKind.ROTATION)

    var = _single_power_var(w)
    if var is not None:
        return _report(w, {var: rotation_matrix(np.pi / (2 * k))}, WitnessKind.ROTATION)

    pair = _alternating_sym_pair(w)
    if pair is not None:
        theta = np.pi / (2 * k)
        a = DenseMatrix(np.diag([1.0, -1.0]))
        b = DenseMatrix(np.array([[np.cos(theta), np.sin(theta)], [np.sin(theta), -np.cos(theta)]]))
        report = _report(w, {pair[0]: a, pair[1]: b}, WitnessKind.SYM_PAIR)
        report.note = f"computed eigenvalue {report.offending_eigenvalue:.12g} for theta = pi/{2 * k}"
        return report

    return None


def psd_scalar_witness(w: Word, cert: Optional[Certificate] = None) -> Optional[WitnessReport]:
    """1×1 assignment making the product (−1): the sym factor gets (−1), the rest (1)."""
    cert = cert or classify(w)
    if cert.verdict is not Verdict.SYM_TIMES_PSD:
        if cert.verdict is Verdict.SYMMETRIC:
            return None
        raise PreconditionError(f"Word is {cert.verdict.value}, expected {Verdict.SYM_TIMES_PSD.value}")
    assignment = {
        v: DenseMatrix(np.array([[-1.0 if v == cert.sym_var else 1.0]]))
        for v in _used_vars(w)
    }
    product = evaluate(w, assignment).entries[0, 0]
    return WitnessReport(
        assignment=assignment,
        offending_eigenvalue=complex(product),
        kind=WitnessKind.SCALAR,
        trials_used=0,
        seed=None,
        claim="not_psd",
    )


def draw_assignment(w: Word, dim: int, rng: np.random.Generator) -> Assignment:
    """Uniform [−1, 1] entries; symmetric variables get (R + Rᵀ)/2."""
    assignment = {}
    for v in _used_vars(w):
        r = rng.uniform(-1.0, 1.0, size=(dim, dim))
        if w.vars[v].symmetric:
            r = (r + r.T) / 2
        assignment[v] = DenseMatrix(r)
    return assignment


def _try_trial(w: Word, dim: int, seed: int, dim_index: int, trial: int, imag_tol: Optional[float]):
    rng = np.random.default_rng([seed, dim_index, trial])
    assignment = draw_assignment(w, dim, rng)
    product = evaluate(w, assignment)
    try:
        s = spectrum(product)
    except ConvergenceError as e:
        logger.debug(f"Trial {trial} at dim {dim} skipped: {e}")
        return None
    tol = imag_tolerance(float(np.linalg.norm(product.entries, 2))) if imag_tol is None else imag_tol
    if s.max_imag > tol:
        return assignment, _most_imaginary(s.eigenvalues)
    return None


def random_witness_search(
    w: Word,
    dims: Optional[Sequence[int]] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    imag_tol: Optional[float] = None,
    workers: Optional[int] = None,
    cert: Optional[Certificate] = None,
) -> Optional[WitnessReport]:
    """Seeded random search; identical results for any worker count."""
    _require(w, Verdict.NOT_REAL, cert)
    settings = get_settings()
    dims = list(dims or settings.default_dims)
    trials = settings.default_trials if trials is None else trials
    seed = settings.default_seed if seed is None else seed
    workers = workers or settings.workers

    used = 0
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for dim_index, dim in enumerate(dims):
            batch = BATCH_PER_WORKER * workers
            for start in range(0, trials, batch):
                indices = range(start, min(start + batch, trials))
                if executor is None:
                    outcomes = (_try_trial(w, dim, seed, dim_index, t, imag_tol) for t in indices)
                else:
                    outcomes = executor.map(lambda t: _try_trial(w, dim, seed, dim_index, t, imag_tol), indices)
                for trial, outcome in zip(indices, outcomes):
                    if outcome is not None:
                        assignment, eigenvalue = outcome
                        logger.info(f"Random witness found at dim {dim}, trial {trial}")
                        return WitnessReport(
                            assignment=assignment,
                            offending_eigenvalue=eigenvalue,
                            kind=WitnessKind.RANDOM,
                            trials_used=used + trial + 1,
                            seed=seed,
                            note=f"dim={dim} trial={trial}",
                        )
            used += trials
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    logger.warning(f"Random witness search exhausted {used} trials over dims {dims}")
    return None


def find_witness(
    w: Word,
    dims: Optional[Sequence[int]] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    imag_tol: Optional[float] = None,
    workers: Optional[int] = None,
) -> Optional[WitnessReport]:
    """Cheapest certificate first: template, scalar, then random search.

    A template whose offending eigenvalue is within imag_tol of the real
    axis does not count, and the search moves on to random draws.
    """
    cert = classify(w)
    if cert.verdict is Verdict.SYMMETRIC:
        raise PreconditionError("Symmetric words are PSD; no witness exists")
    if cert.verdict is Verdict.SYM_TIMES_PSD:
        return psd_scalar_witness(w, cert)
    report = structured_witness(w, cert)
    if report is not None and (imag_tol is None or abs(report.offending_eigenvalue.imag) > imag_tol):
        return report
    if report is not None:
        logger.info(f"{report.kind.value} template is real within {imag_tol:.3e}; trying random draws")
    return random_witness_search(w, dims, trials, seed, imag_tol=imag_tol, workers=workers, cert=cert)


def inspect_assignment(
    w: Word, assignment: Assignment, imag_tol: Optional[float] = None, psd_tol: Optional[float] = None
) -> VerificationRecord:
    """Evaluate, compute the spectrum and report real/PSD flags."""
    product = evaluate(w, assignment)
    default_imag, default_psd = default_tolerances(product)
    imag_tol = default_imag if imag_tol is None else imag_tol
    psd_tol = default_psd if psd_tol is None else psd_tol
    s = spectrum(product)
    is_real = s.max_imag <= imag_tol
    return VerificationRecord(
        claim=None,
        max_imag=s.max_imag,
        min_real=s.min_real,
        eigenvalues=[complex(lam) for lam in s.eigenvalues],
        imag_tol=imag_tol,
        psd_tol=psd_tol,
        is_real=is_real,
        is_psd=is_real and s.min_real >= -psd_tol,
    )


def verify_witness(
    w: Word, r: WitnessReport, imag_tol: Optional[float] = None, psd_tol: Optional[float] = None
) -> VerificationRecord:
    """Recompute the product and check the report's claim."""
    record = inspect_assignment(w, r.assignment, imag_tol, psd_tol)
    record.claim = r.claim
    record.passed = not record.is_real if r.claim == "not_real" else not record.is_psd
    if not record.passed:
        logger.warning(f"{r.kind.value} witness failed verification (max |Im| = {record.max_imag:.3e})")
    return record
