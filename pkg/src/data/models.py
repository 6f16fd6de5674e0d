"""Data models for symbolic matrix words, certificates and witnesses."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

MAX_DIMENSION = 16


class Marker(str, Enum):
    """How a variable occurs in a word."""
    PLAIN = "plain"
    TRANSPOSE = "transpose"
    SYM = "sym"


ORIENTATION = {Marker.PLAIN: 1, Marker.TRANSPOSE: -1, Marker.SYM: 0}


@dataclass(frozen=True)
class Factor:
    """One factor of a word: a variable id and its marker."""
    var: int
    marker: Marker

    def conjugate(self) -> "Factor":
        if self.marker is Marker.PLAIN:
            return Factor(self.var, Marker.TRANSPOSE)
        if self.marker is Marker.TRANSPOSE:
            return Factor(self.var, Marker.PLAIN)
        return self


@dataclass(frozen=True)
class VarInfo:
    """Entry of a word's variable table."""
    name: str
    symmetric: bool = False


@dataclass(frozen=True)
class Word:
    """An ordered product of factors over a variable table.

    The empty word is allowed internally (the half-word of a degree-1
    certificate); parsing never produces it.
    """
    factors: Tuple[Factor, ...]
    vars: Tuple[VarInfo, ...]
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for f in self.factors:
            if not 0 <= f.var < len(self.vars):
                raise ValueError(f"Factor references unknown variable id {f.var}")

    @property
    def degree(self) -> int:
        return len(self.factors)

    def name(self, var: int) -> str:
        return self.vars[var].name

    def key(self, i: int) -> Tuple[str, Marker]:
        """Name-based identity of factor i, comparable across tables."""
        f = self.factors[i]
        return self.vars[f.var].name, f.marker

    def var_id(self, name: str) -> int:
        for i, info in enumerate(self.vars):
            if info.name == name:
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class ColoredCycle:
    """Edge-colored oriented cycle; edge i is (orientation, color)."""
    n: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.n != len(self.edges):
            raise ValueError(f"Cycle order {self.n} does not match {len(self.edges)} edges")
        for orientation, _ in self.edges:
            if orientation not in (-1, 0, 1):
                raise ValueError(f"Invalid orientation: {orientation}")

    def color(self, i: int) -> Tuple[int, int]:
        return self.edges[i % self.n]


class Verdict(str, Enum):
    SYMMETRIC = "Symmetric"
    SYM_TIMES_PSD = "SymTimesPsd"
    NOT_REAL = "NotRealEigenvalued"


@dataclass(frozen=True)
class Certificate:
    """Decider output for one word."""
    verdict: Verdict
    degree: int
    comparisons: int
    shift: Optional[int] = None
    half: Optional[Word] = None
    sym_var: Optional[int] = None
    mode: str = "real"

    def __post_init__(self):
        if self.verdict is Verdict.NOT_REAL:
            if self.shift is not None or self.half is not None:
                raise ValueError("NotRealEigenvalued certificates carry no shift or half-word")
        elif self.shift is None or self.half is None:
            raise ValueError(f"{self.verdict.value} certificate needs a shift and a half-word")
        if (self.verdict is Verdict.SYM_TIMES_PSD) != (self.sym_var is not None):
            raise ValueError("sym_var is present exactly for SymTimesPsd certificates")
        if self.mode not in ("real", "adjoint"):
            raise ValueError(f"Unknown certificate mode: {self.mode}")

    @property
    def psd(self) -> bool:
        return self.verdict is Verdict.SYMMETRIC

    @property
    def label(self) -> str:
        if self.mode == "adjoint":
            return "self-adjoint" if self.verdict is Verdict.SYMMETRIC else "not self-adjoint"
        return self.verdict.value


@dataclass(frozen=True)
class DenseMatrix:
    """Small square real or complex matrix."""
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"Matrix must be square, got shape {entries.shape}")
        if not 1 <= entries.shape[0] <= MAX_DIMENSION:
            raise ValueError(f"Matrix dimension {entries.shape[0]} outside 1..{MAX_DIMENSION}")
        object.__setattr__(self, "entries", entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.array_equal(self.entries, other.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.entries)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with their worst backward-error estimate."""
    eigenvalues: np.ndarray
    residual: float

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(self.eigenvalues.imag))) if len(self.eigenvalues) else 0.0

    @property
    def min_real(self) -> float:
        return float(np.min(self.eigenvalues.real)) if len(self.eigenvalues) else 0.0


class WitnessKind(str, Enum):
    ROTATION = "Rotation"
    SYM_PAIR = "SymPair"
    SCALAR = "Scalar"
    RANDOM = "Random"


@dataclass
class WitnessReport:
    """Matrix assignment refuting real-eigenvaluedness or PSD-ness of a word."""
    assignment: Dict[int, DenseMatrix]
    offending_eigenvalue: complex
    kind: WitnessKind
    trials_used: int
    seed: Optional[int]
    claim: str = "not_real"
    note: Optional[str] = None

    def __post_init__(self):
        if self.claim not in ("not_real", "not_psd"):
            raise ValueError(f"Unknown witness claim: {self.claim}")

    @property
    def dimension(self) -> int:
        return next(iter(self.assignment.values())).n if self.assignment else 0


@dataclass
class VerificationRecord:
    """Outcome of re-evaluating a word under an assignment.

    passed is None when no claim was checked (plain inspection).
    """
    claim: Optional[str]
    max_imag: float
    min_real: float
    eigenvalues: List[complex]
    imag_tol: float
    psd_tol: float
    is_real: bool
    is_psd: bool
    passed: Optional[bool] = None
