"""Word evaluation and spectra of small dense matrices."""

import logging
from typing import Dict, Optional

import numpy as np

from ..data.models import DenseMatrix, Marker, Spectrum, Word
from .config import Settings, get_settings, imag_tolerance, psd_tolerance
from .errors import ConvergenceError, DimensionError, PreconditionError, SymmetryError

logger = logging.getLogger(__name__)

Assignment = Dict[int, DenseMatrix]


def _check_assignment(w: Word, assignment: Assignment) -> int:
    used = sorted({f.var for f in w.factors})
    missing = [w.name(v) for v in used if v not in assignment]
    if missing:
        raise PreconditionError(f"No matrix bound to variable(s): {', '.join(missing)}")
    dims = {assignment[v].n for v in used}
    if len(dims) != 1:
        raise DimensionError(f"Matrices have mixed dimensions: {sorted(dims)}")
    return dims.pop()


def evaluate(w: Word, assignment: Assignment, sym_tol: Optional[float] = None) -> DenseMatrix:
    """Left-to-right product with transposes substituted."""
    n = _check_assignment(w, assignment)
    sym_tol = get_settings().sym_tol if sym_tol is None else sym_tol
    for v in {f.var for f in w.factors if f.marker is Marker.SYM}:
        m = assignment[v].entries
        if np.max(np.abs(m - m.T)) > sym_tol:
            raise SymmetryError(f"Matrix bound to symmetric variable {w.name(v)} is not symmetric")

    product = np.eye(n, dtype=np.result_type(*(assignment[f.var].entries for f in w.factors)))
    for f in w.factors:
        m = assignment[f.var].entries
        product = product @ (m.T if f.marker is Marker.TRANSPOSE else m)
    return DenseMatrix(product)


def evaluate_complex(w: Word, assignment: Assignment) -> DenseMatrix:
    """Product where Transpose markers mean conjugate transposition."""
    if any(f.marker is Marker.SYM for f in w.factors):
        raise PreconditionError("Complex evaluation does not accept symmetric variables")
    n = _check_assignment(w, assignment)
    product = np.eye(n, dtype=complex)
    for f in w.factors:
        m = assignment[f.var].entries.astype(complex)
        product = product @ (m.conj().T if f.marker is Marker.TRANSPOSE else m)
    return DenseMatrix(product)


def spectrum(m: DenseMatrix, tol: Optional[float] = None) -> Spectrum:
    """Eigenvalues with a singular-value backward-error check.

    Raises ConvergenceError when some eigenvalue's residual exceeds
    tol·max(1, ‖m‖).
    """
    tol = get_settings().spectrum_tol if tol is None else tol
    a = m.entries
    if not np.all(np.isfinite(a)):
        raise ConvergenceError("Matrix has non-finite entries")
    try:
        eigenvalues = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError(f"Eigenvalue iteration failed: {e}") from e

    identity = np.eye(m.n)
    residual = 0.0
    for lam in eigenvalues:
        sigma = np.linalg.svd(a - lam * identity, compute_uv=False)
        residual = max(residual, float(sigma[-1]))

    scale = max(1.0, float(np.linalg.norm(a, 2)))
    if residual > tol * scale:
        raise ConvergenceError(f"Spectrum residual {residual:.3e} exceeds {tol * scale:.3e}")
    return Spectrum(eigenvalues, residual)


def rotation_matrix(theta: float) -> DenseMatrix:
    c, s = np.cos(theta), np.sin(theta)
    return DenseMatrix(np.array([[c, -s], [s, c]]))


def is_real_spectrum(s: Spectrum, imag_tol: float) -> bool:
    return s.max_imag <= imag_tol


def is_psd_spectrum(s: Spectrum, tol: float) -> bool:
    return is_real_spectrum(s, tol) and s.min_real >= -tol


def default_tolerances(m: DenseMatrix, settings: Optional[Settings] = None) -> tuple:
    """(imag_tol, psd_tol) scaled by the operator norm of m."""
    norm = float(np.linalg.norm(m.entries, 2))
    return imag_tolerance(norm, settings), psd_tolerance(norm, settings)


def spectra_match(s1: Spectrum, s2: Spectrum, tol: float = 1e-8) -> bool:
    """Multiset equality of two spectra by greedy nearest matching."""
    a = list(s1.eigenvalues)
    b = list(s2.eigenvalues)
    if len(a) != len(b):
        return False
    for lam in a:
        distances = [abs(lam - mu) for mu in b]
        best = int(np.argmin(distances))
        if distances[best] > tol:
            return False
        b.pop(best)
    return True


def symmetrize_matrix(m: np.ndarray) -> np.ndarray:
    return (m + m.T) / 2


def is_psd_matrix(m: DenseMatrix, tol: float = 1e-8) -> bool:
    """PSD test for a symmetric matrix via its smallest eigenvalue."""
    a = m.entries
    if not np.allclose(a, a.conj().T, atol=tol):
        return False
    return bool(np.linalg.eigvalsh(a).min() >= -tol * (1 + np.linalg.norm(a, 2)))
