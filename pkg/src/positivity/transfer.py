"""Transfer matrices of edge-rooted blocks and homomorphism counts of glued cycles."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence

import numpy as np

from ..core.config import get_settings
from ..core.errors import SizeGuardError
from ..data.models import Marker, Word
from ..graphs.graph import EdgeRootedGraph, Graph, WeightedGraph, symmetrize
from ..graphs.homs import weighted_homomorphisms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransferMatrix:
    """S(x, y) = Σ of w_φ over homs with φ(a) = x and φ(b) = y."""
    entries: np.ndarray
    exact: bool

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def T(self) -> "TransferMatrix":
        return TransferMatrix(self.entries.T.copy(), self.exact)

    def is_symmetric(self) -> bool:
        return bool(np.all(self.entries == self.entries.T))


def as_exact(h: WeightedGraph) -> WeightedGraph:
    if h.exact:
        return h
    matrix = np.array([[Fraction(float(x)) for x in row] for row in h.matrix], dtype=object)
    return WeightedGraph(matrix, h.directed)


def as_float(h: WeightedGraph) -> WeightedGraph:
    if not h.exact:
        return h
    return WeightedGraph(h.matrix.astype(float), h.directed)


def _without_root_edge(f: EdgeRootedGraph) -> Graph:
    root = set(f.root)
    return Graph(f.n, (e for e in f.graph.edges if set(e) != root))


def transfer_matrix(
    f: EdgeRootedGraph, h: WeightedGraph, exact: bool = True, drop_root_edge: bool = False
) -> TransferMatrix:
    """Root-pinned weighted hom counts of F into H, binned by the images of the roots."""
    guard = get_settings().transfer_guard
    if f.n > guard:
        raise SizeGuardError("transfer_block", guard, f.n)
    h = as_exact(h) if exact else as_float(h)
    a, b = f.root
    source = _without_root_edge(f) if drop_root_edge else f.graph
    entries = np.full((h.n, h.n), h.zero(), dtype=object if exact else float)
    for image, weight in weighted_homomorphisms(source, h, pins=None):
        entries[image[a], image[b]] += weight
    return TransferMatrix(entries, exact)


def chain_product(mats: Sequence[TransferMatrix]) -> np.ndarray:
    product = mats[0].entries
    for m in mats[1:]:
        product = product @ m.entries
    return product


def glued_hom_via_transfer(fs: Sequence[EdgeRootedGraph], h: WeightedGraph, exact: bool = True):
    """hom(glue_cycle(fs), H) as the trace of the blocks' transfer matrices in cycle order.

    With two blocks both root edges land on the same vertex pair, so the
    second block is counted without its root edge.
    """
    if len(fs) < 2:
        raise ValueError(f"Gluing along a cycle needs at least 2 blocks, got {len(fs)}")
    mats = [
        transfer_matrix(f, h, exact, drop_root_edge=(len(fs) == 2 and i == 1))
        for i, f in enumerate(fs)
    ]
    return np.trace(chain_product(mats))


def word_transfer(w: Word, family: Dict[int, EdgeRootedGraph], h: WeightedGraph, exact: bool = True) -> np.ndarray:
    """U = ordered product of S, Sᵀ or S^sym over the factors of w."""
    plain: Dict[int, TransferMatrix] = {}
    sym: Dict[int, TransferMatrix] = {}
    mats: List[TransferMatrix] = []
    for factor in w.factors:
        if factor.var not in family:
            raise KeyError(f"No block assigned to variable {w.name(factor.var)}")
        f = family[factor.var]
        if factor.marker is Marker.SYM:
            if factor.var not in sym:
                sym[factor.var] = transfer_matrix(symmetrize(f), h, exact)
            mats.append(sym[factor.var])
            continue
        if factor.var not in plain:
            plain[factor.var] = transfer_matrix(f, h, exact)
        s = plain[factor.var]
        mats.append(s.T if factor.marker is Marker.TRANSPOSE else s)
    return chain_product(mats)


def t_gsquare(w: Word, family: Dict[int, EdgeRootedGraph], h: WeightedGraph, exact: bool = True):
    """trace(U²) for the word's block product U; hom(G², H) for degree ≥ 2."""
    u = word_transfer(w, family, h, exact)
    value = np.trace(u @ u)
    logger.debug(f"t_gsquare over a {h.n}-vertex target: {value}")
    return value


def trace_power(m: np.ndarray, power: int):
    result = np.identity(m.shape[0], dtype=m.dtype)
    if m.dtype == object:
        result = np.array([[Fraction(int(i == j)) for j in range(m.shape[0])] for i in range(m.shape[0])], dtype=object)
    base = m
    while power:
        if power & 1:
            result = result @ base
        base = base @ base
        power >>= 1
    return np.trace(result)


def directed_cycle_hom(k: int, h: WeightedGraph):
    """trace(A^k): weighted closed walks of length k in H."""
    return trace_power(h.matrix, k)
