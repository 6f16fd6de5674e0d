"""Homomorphism enumeration and weighted homomorphism counts."""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.config import get_settings
from ..core.errors import SizeGuardError
from .graph import EdgeRootedGraph, Graph, WeightedGraph, cut_vertices, edges_in_triangles, symmetrize

logger = logging.getLogger(__name__)

ELIMINATION_TABLE_GUARD = 4_000_000

Target = Union[Graph, WeightedGraph]


def _as_weighted(h: Target, exact: bool = True) -> WeightedGraph:
    return WeightedGraph.from_graph(h, exact=exact) if isinstance(h, Graph) else h


def search_order(g: Graph, first: Sequence[int] = ()) -> List[int]:
    """Pinned vertices first, then BFS from the highest-degree vertex of each component."""
    order = list(first)
    seen = set(order)
    queue = deque(order)
    while len(order) < g.n:
        if not queue:
            start = max((v for v in range(g.n) if v not in seen), key=lambda v: (g.degree(v), -v))
            seen.add(start)
            order.append(start)
            queue.append(start)
        u = queue.popleft()
        for v in sorted(g.neighbors(u), key=lambda v: -g.degree(v)):
            if v not in seen:
                seen.add(v)
                order.append(v)
                queue.append(v)
    return order


def _back_edges(f: Graph, order: Sequence[int]) -> List[List[Tuple[int, bool]]]:
    """For the i-th vertex of `order`, its earlier neighbours and whether the edge points at it."""
    position = {v: i for i, v in enumerate(order)}
    back: List[List[Tuple[int, bool]]] = [[] for _ in order]
    for u, v in f.edges:
        pu, pv = position[u], position[v]
        if pu < pv:
            back[pv].append((pu, True))
        else:
            back[pu].append((pv, False))
    return back


def weighted_homomorphisms(
    f: Graph,
    h: Target,
    directed: bool = False,
    pins: Optional[Dict[int, int]] = None,
) -> Iterator[Tuple[Tuple[int, ...], object]]:
    """Yield (image, weight) for every map of f into h with non-zero weight.

    image[v] is the target vertex of source vertex v. With directed=True
    each source edge (u, v) reads the weight h[φ(u), φ(v)].
    """
    h = _as_weighted(h)
    pins = pins or {}
    order = search_order(f, list(pins))
    back = _back_edges(f, order)
    full = (1 << h.n) - 1
    matrix = h.matrix
    image = [0] * len(order)
    one = h.one()

    def extend(i: int, weight) -> Iterator[Tuple[Tuple[int, ...], object]]:
        if i == len(order):
            result = [0] * f.n
            for pos, v in enumerate(order):
                result[v] = image[pos]
            yield tuple(result), weight
            return
        v = order[i]
        candidates = (1 << pins[v]) if v in pins else full
        for pos, points_here in back[i]:
            x = image[pos]
            if points_here or not directed:
                candidates &= h.out_support[x]
            else:
                candidates &= h.in_support[x]
        while candidates:
            low = candidates & -candidates
            y = low.bit_length() - 1
            candidates ^= low
            w = weight
            for pos, points_here in back[i]:
                x = image[pos]
                w = w * (matrix[x, y] if points_here or not directed else matrix[y, x])
            image[i] = y
            yield from extend(i + 1, w)

    yield from extend(0, one)


def homomorphisms(f: Graph, g: Graph, pins: Optional[Dict[int, int]] = None) -> Iterator[Tuple[int, ...]]:
    """Every homomorphism of simple graph f into simple graph g."""
    yield from _maps(f, g, pins=pins)


def _maps(
    f: Graph, g: Graph, pins: Optional[Dict[int, int]] = None, injective: bool = False, limit: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """Backtracking over bitset candidates with forward checking on unplaced neighbours."""
    pins = pins or {}
    order = search_order(f, list(pins))
    position = {v: i for i, v in enumerate(order)}
    back = _back_edges(f, order)
    ahead = [[position[u] for u in f.neighbors(v) if position[u] > i] for i, v in enumerate(order)]
    full = (1 << g.n) - 1
    image = [0] * len(order)
    found = 0

    def domain(i: int, used: int) -> int:
        v = order[i]
        candidates = (1 << pins[v]) if v in pins else full
        for pos, _ in back[i]:
            candidates &= g.adj[image[pos]]
        return candidates & ~used if injective else candidates

    def extend(i: int, used: int) -> Iterator[Tuple[int, ...]]:
        nonlocal found
        if i == len(order):
            result = [0] * f.n
            for pos, v in enumerate(order):
                result[v] = image[pos]
            found += 1
            yield tuple(result)
            return
        candidates = domain(i, used)
        while candidates:
            low = candidates & -candidates
            y = low.bit_length() - 1
            candidates ^= low
            image[i] = y
            # every later neighbour placed so far must still have somewhere to go
            if any(not (g.adj[y] & _partial_domain(j, i)) for j in ahead[i]):
                continue
            yield from extend(i + 1, used | low)
            if limit is not None and found >= limit:
                return

    def _partial_domain(j: int, upto: int) -> int:
        candidates = (1 << pins[order[j]]) if order[j] in pins else full
        for pos, _ in back[j]:
            if pos < upto:
                candidates &= g.adj[image[pos]]
        return candidates

    yield from extend(0, 0)


def _guard(name: str, limit: int, actual: int) -> None:
    if actual > limit:
        raise SizeGuardError(name, limit, actual)


def endomorphisms(g: Graph, limit: Optional[int] = None, guard: Optional[int] = None) -> List[Tuple[int, ...]]:
    _guard("rigidity", guard or get_settings().rigidity_guard, g.n)
    return list(_maps(g, g, limit=limit))


def automorphisms(g: Graph) -> List[Tuple[int, ...]]:
    _guard("rigidity", get_settings().rigidity_guard, g.n)
    return list(_maps(g, g, injective=True))


def is_rigid(g: Graph) -> bool:
    """True iff the identity is the only endomorphism; stops at the second one found."""
    return len(endomorphisms(g, limit=2)) == 1


def pinned_endomorphism_counts(f: EdgeRootedGraph) -> Tuple[int, int]:
    """Endomorphisms fixing (a, b), and those sending (a, b) to (b, a)."""
    a, b = f.root
    _guard("rigidity", get_settings().rigidity_guard, f.n)
    forward = sum(1 for _ in _maps(f.graph, f.graph, pins={a: a, b: b}))
    swapped = sum(1 for _ in _maps(f.graph, f.graph, pins={a: b, b: a}))
    return forward, swapped


def hom_sym_check(f: EdgeRootedGraph) -> bool:
    """Whether F^sym has exactly the identity and one root-swapping endomorphism."""
    fs = symmetrize(f)
    ends = endomorphisms(fs.graph, limit=3, guard=2 * get_settings().rigidity_guard - 2)
    if len(ends) != 2:
        return False
    a, b = fs.root
    identity = tuple(range(fs.n))
    other = ends[0] if ends[1] == identity else ends[1]
    return other[a] == b and other[b] == a and len(set(other)) == fs.n


def hom_count(
    f: Graph,
    h: Target,
    directed: bool = False,
    method: str = "auto",
    exact: bool = True,
):
    """Weighted homomorphism count Σ_φ Π_{uv ∈ E(f)} β(φ(u), φ(v)).

    method is "backtrack", "eliminate" or "auto" (backtracking within the
    vertex guard, elimination above it). Both read each edge (u, v) of f as
    β(φ(u), φ(v)), so a directed target needs directed=True.
    """
    h = _as_weighted(h, exact)
    if h.directed and not directed:
        raise ValueError("A directed target has no undirected homomorphism count; pass directed=True")
    guard = get_settings().hom_vertex_guard
    if method == "auto":
        method = "backtrack" if f.n <= guard else "eliminate"
    if method == "backtrack":
        _guard("hom_vertices", guard, f.n)
        total = h.zero()
        for _, weight in weighted_homomorphisms(f, h, directed):
            total += weight
        return total
    if method == "eliminate":
        return eliminate(f, h)
    raise ValueError(f"Unknown hom_count method: {method}")


def _expand(scope_vars: Sequence[int], table: np.ndarray, scope: Sequence[int]) -> np.ndarray:
    """View of a factor table with axes in `scope` order and size-1 axes for absent vertices."""
    order = sorted(range(len(scope_vars)), key=lambda i: scope.index(scope_vars[i]))
    table = np.transpose(table, order)
    present = [scope_vars[i] for i in order]
    shape = [table.shape[present.index(v)] if v in present else 1 for v in scope]
    return table.reshape(shape)


def _min_degree_vertex(remaining: set, factors: List[Tuple[Tuple[int, ...], np.ndarray]]) -> int:
    def width(v: int) -> Tuple[int, int]:
        scope = set()
        for vars_, _ in factors:
            if v in vars_:
                scope.update(vars_)
        return len(scope), v

    return min(remaining, key=width)


def eliminate(f: Graph, h: WeightedGraph):
    """Sum-product variable elimination; edge orientation follows f's edge list."""
    n = h.n
    factors: List[Tuple[Tuple[int, ...], np.ndarray]] = [((u, v), h.matrix) for u, v in f.edges]
    ones = np.full(n, h.one(), dtype=h.matrix.dtype)
    factors.extend(((v,), ones) for v in range(f.n))
    remaining = set(range(f.n))
    scalar = h.one()

    while remaining:
        v = _min_degree_vertex(remaining, factors)
        touching = [fac for fac in factors if v in fac[0]]
        factors = [fac for fac in factors if v not in fac[0]]
        scope: List[int] = []
        for vars_, _ in touching:
            scope.extend(u for u in vars_ if u not in scope)
        _guard("elimination_table", ELIMINATION_TABLE_GUARD, n ** len(scope))
        product = None
        for vars_, table in touching:
            expanded = _expand(vars_, table, scope)
            product = expanded if product is None else product * expanded
        summed = product.sum(axis=scope.index(v))
        rest = tuple(u for u in scope if u != v)
        if rest:
            factors.append((rest, np.asarray(summed)))
        else:
            scalar = scalar * summed
        remaining.discard(v)

    logger.debug(f"Eliminated {f.n} vertices into a {n}-vertex target")
    return scalar


def hom_density(f: Graph, h: Target, exact: bool = True, directed: bool = False):
    """hom(f, h) / |V(h)|^{|V(f)|}."""
    h = _as_weighted(h, exact)
    return hom_count(f, h, directed=directed, exact=exact) / (h.n ** f.n)


@dataclass
class LemmaReport:
    """Structural conditions on a block F for the sun-graph construction."""
    connected: bool
    no_cut_vertex: bool
    edges_in_triangles: bool
    rigid: bool
    root_swap_only: bool
    forward_maps: int = 0
    swap_maps: int = 0
    failed: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed


def lemma_hypotheses(f: EdgeRootedGraph) -> LemmaReport:
    g = f.graph
    connected = g.is_connected()
    no_cut = connected and not cut_vertices(g)
    triangles = edges_in_triangles(g)
    ends = endomorphisms(g, limit=3)
    rigid = len(ends) == 1
    root_swap_only = False
    if len(ends) == 2:
        a, b = f.root
        other = ends[0] if ends[1] == tuple(range(g.n)) else ends[1]
        root_swap_only = other[a] == b and other[b] == a and len(set(other)) == g.n
    forward, swapped = pinned_endomorphism_counts(f)

    failed = [
        name for name, ok in (
            ("connected", connected),
            ("no_cut_vertex", no_cut),
            ("edges_in_triangles", triangles),
            ("endomorphisms", rigid or root_swap_only),
        ) if not ok
    ]
    return LemmaReport(connected, no_cut, triangles, rigid, root_swap_only, forward, swapped, failed)
