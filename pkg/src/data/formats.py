"""Text formats for matrices, assignments and graphs, and JSON report records.

Matrix text is a dimension line followed by that many rows; complex entries
are written `a+bi`. An assignment file holds one `matrix NAME` block per
variable. Graph edge lists start with an `n m` header, list `u v [w]` lines
and may end with `root a b`; counterexample targets append a manifest block.
"""

import json
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import DimensionError, PreconditionError
from .models import DenseMatrix, MAX_DIMENSION, VerificationRecord, WitnessReport, Word

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MATRIX_HEADER = "matrix"
ROOT_HEADER = "root"
MANIFEST_HEADER = "manifest"


def _content_lines(text: str) -> List[str]:
    lines = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def format_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (complex, np.complexfloating)):
        sign = "-" if x.imag < 0 else "+"
        return f"{float(x.real)!r}{sign}{abs(float(x.imag))!r}i"
    return repr(float(x))


def parse_number(token: str, exact: bool = False):
    try:
        if token.endswith("i"):
            return complex(token[:-1] + "j")
        if exact:
            return Fraction(token)
        return float(token)
    except ValueError as e:
        raise PreconditionError(f"Malformed number: {token!r}") from e


def format_matrix(m: DenseMatrix) -> str:
    rows = [" ".join(format_number(x) for x in row) for row in m.entries]
    return "\n".join([str(m.n)] + rows)


def _read_matrix(lines: List[str], start: int) -> Tuple[DenseMatrix, int]:
    try:
        n = int(lines[start])
    except (IndexError, ValueError) as e:
        raise PreconditionError(f"Expected a matrix dimension at line {start + 1}") from e
    if not 1 <= n <= MAX_DIMENSION:
        raise DimensionError(f"Matrix dimension {n} outside 1..{MAX_DIMENSION}")
    rows = lines[start + 1:start + 1 + n]
    if len(rows) != n:
        raise PreconditionError(f"Matrix declares {n} rows but {len(rows)} follow")
    values = [[parse_number(token) for token in row.split()] for row in rows]
    if any(len(row) != n for row in values):
        raise DimensionError(f"Matrix rows must have {n} entries")
    dtype = complex if any(isinstance(x, complex) for row in values for x in row) else float
    return DenseMatrix(np.array(values, dtype=dtype)), start + 1 + n


def parse_matrix(text: str) -> DenseMatrix:
    lines = _content_lines(text)
    m, end = _read_matrix(lines, 0)
    if end != len(lines):
        raise PreconditionError(f"Trailing content after matrix: {lines[end]!r}")
    return m


def format_assignment(w: Word, assignment: Dict[int, DenseMatrix]) -> str:
    blocks = [f"{MATRIX_HEADER} {w.name(v)}\n{format_matrix(assignment[v])}" for v in sorted(assignment)]
    return "\n".join(blocks) + "\n"


def parse_assignment(text: str, w: Word) -> Dict[int, DenseMatrix]:
    """Matrices keyed by the word's variable ids; blocks for unknown names are skipped."""
    lines = _content_lines(text)
    assignment: Dict[int, DenseMatrix] = {}
    i = 0
    while i < len(lines):
        parts = lines[i].split()
        if len(parts) != 2 or parts[0] != MATRIX_HEADER:
            raise PreconditionError(f"Expected 'matrix NAME', got {lines[i]!r}")
        m, i = _read_matrix(lines, i + 1)
        try:
            assignment[w.var_id(parts[1])] = m
        except KeyError:
            logger.warning(f"Assignment names {parts[1]}, which does not occur in the word")
    return assignment


def format_graph(g, root: Optional[Tuple[int, int]] = None) -> str:
    lines = [f"{g.n} {g.edge_count}"] + [f"{u} {v}" for u, v in g.edges]
    if root is not None:
        lines.append(f"{ROOT_HEADER} {root[0]} {root[1]}")
    return "\n".join(lines) + "\n"


def _weighted_edges(h) -> List[Tuple[int, int, object]]:
    n = h.n
    out = []
    for i in range(n):
        for j in (range(n) if h.directed else range(i, n)):
            if h.matrix[i, j] != 0:
                out.append((i, j, h.matrix[i, j]))
    return out


def format_weighted_graph(h) -> str:
    edges = _weighted_edges(h)
    lines = [f"{h.n} {len(edges)}"] + [f"{u} {v} {format_number(w)}" for u, v, w in edges]
    return "\n".join(lines) + "\n"


def _parse_edge_list(text: str, weighted: bool, exact: bool):
    lines = _content_lines(text)
    if not lines:
        raise PreconditionError("Empty graph file")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError as e:
        raise PreconditionError(f"Expected an 'n m' header, got {lines[0]!r}") from e
    edges = []
    root = None
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == MANIFEST_HEADER:
            break
        if parts[0] == ROOT_HEADER:
            root = (int(parts[1]), int(parts[2]))
            continue
        if weighted:
            weight = parse_number(parts[2], exact) if len(parts) > 2 else (Fraction(1) if exact else 1.0)
            edges.append((int(parts[0]), int(parts[1]), weight))
        else:
            edges.append((int(parts[0]), int(parts[1])))
    if len(edges) != m:
        raise PreconditionError(f"Header declares {m} edges but {len(edges)} follow")
    return n, edges, root


def parse_graph(text: str):
    """(Graph, root or None) from an unweighted edge list."""
    from ..graphs.graph import Graph

    n, edges, root = _parse_edge_list(text, weighted=False, exact=False)
    return Graph(n, edges), root


def parse_weighted_graph(text: str, exact: bool = True, directed: bool = False):
    from ..graphs.graph import WeightedGraph

    n, edges, _ = _parse_edge_list(text, weighted=True, exact=exact)
    return WeightedGraph.from_edges(n, edges, directed=directed, exact=exact)


def format_counterexample(target) -> str:
    """Weighted edge list of H followed by its manifest."""
    lines = [format_weighted_graph(target.h).rstrip("\n"), MANIFEST_HEADER]
    lines.append(f"epsilon {format_number(target.epsilon)}")
    lines.append(f"placement {target.placement.value}")
    lines.append(f"k {target.k}")
    lines.append(f"ell {target.ell}")
    lines.append(f"designated_edge {target.designated_edge}")
    lines.append("m " + " ".join(format_number(x) for x in np.asarray(target.m).ravel()))
    lines.append(f"block {format_graph(target.f.graph, target.f.root).strip().replace(chr(10), '; ')}")
    for (x, y), image in sorted(target.copies.items()):
        lines.append(f"copy {x} {y} " + " ".join(str(v) for v in image))
    for (x, y), path in sorted(target.paths.items()):
        lines.append(f"path {x} {y} " + " ".join(str(v) for v in path))
    return "\n".join(lines) + "\n"


def _complex_pair(z) -> List[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (complex, np.complexfloating)):
        return _complex_pair(x)
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(f"Not JSON serializable: {type(x).__name__}")


def witness_record(w: Word, r: WitnessReport) -> Dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": r.kind.value,
        "claim": r.claim,
        "offending_eigenvalue": _complex_pair(r.offending_eigenvalue),
        "trials_used": r.trials_used,
        "seed": r.seed,
        "dimension": r.dimension,
        "note": r.note,
        "assignment": {w.name(v): [[_jsonable(x) for x in row] for row in m.entries.tolist()]
                       for v, m in sorted(r.assignment.items())},
    }


def verification_record(rec: VerificationRecord) -> Dict:
    return {
        "schema": SCHEMA_VERSION,
        "claim": rec.claim,
        "passed": rec.passed,
        "is_real": rec.is_real,
        "is_psd": rec.is_psd,
        "max_imag": rec.max_imag,
        "min_real": rec.min_real,
        "imag_tol": rec.imag_tol,
        "psd_tol": rec.psd_tol,
        "eigenvalues": [_complex_pair(lam) for lam in rec.eigenvalues],
    }


def to_json(record: Dict) -> str:
    """Stable JSON text: sorted keys, Fractions as strings."""
    return json.dumps(record, sort_keys=True, indent=2, default=_jsonable)
