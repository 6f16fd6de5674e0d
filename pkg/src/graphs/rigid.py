"""Random rigid edge-rooted graphs and the property checks they are sampled against.

Per-graph items: rigidity, triangles in every common neighbourhood, private
neighbours of both roots, root degree order and a high-degree vertex set S
whose traces identify every other vertex. Family items: degree separation
between consecutive graphs and disjointness of the degree-sum sets.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from ..core.config import get_settings
from ..core.errors import SizeGuardError
from .graph import EdgeRootedGraph, Graph
from .homs import is_rigid

logger = logging.getLogger(__name__)

GRAPH_ITEMS = (
    "rigid",
    "common_neighbourhood_triangles",
    "root_private_neighbours",
    "root_degree_order",
    "high_degree_set",
)
FAMILY_ITEMS = ("degree_separation", "degree_sums_disjoint", "degree_sums_avoid_degrees")
DEFAULT_REQUIRED = frozenset({"rigid", "root_private_neighbours", "root_degree_order", "high_degree_set"})


def random_graph(n: int, p: float = 0.5, seed: Optional[int] = None) -> Graph:
    """G(n, p) drawn through networkx."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be between 0 and 1, got {p}")
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def sample_seed(seed: int, *path: int) -> int:
    """Independent integer seed for one sample, derived from the run seed."""
    return int(np.random.SeedSequence([seed, *path]).generate_state(1)[0])


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass
class RootChoice:
    a: int
    b: int
    high_set: List[int]


def degree_ranking(g: Graph) -> List[int]:
    degrees = g.degrees()
    return sorted(range(g.n), key=lambda v: (-degrees[v], v))


def _distinguishing(g: Graph, high: int, outside: Sequence[int]) -> bool:
    traces = [g.adj[u] & high for u in outside]
    return len(set(traces)) == len(traces)


def choose_roots(g: Graph) -> Optional[RootChoice]:
    """Smallest high-degree set S (top r vertices) that works, b the next vertex, a its lowest-degree outside neighbour.

    S works when the top r+2 degrees are strictly decreasing and every
    vertex outside S has its own trace N(u) ∩ S. Falls back to S = ∅ and
    b of maximum degree.
    """
    degrees = g.degrees()
    ranked = degree_ranking(g)
    for r in range(1, g.n - 1):
        top = [degrees[v] for v in ranked[:r + 2]]
        if any(top[i] <= top[i + 1] for i in range(len(top) - 1)):
            break
        high = _mask(ranked[:r])
        if not _distinguishing(g, high, ranked[r:]):
            continue
        b = ranked[r]
        options = [u for u in g.neighbors(b) if not high >> u & 1]
        if options:
            a = min(options, key=lambda u: (degrees[u], u))
            return RootChoice(a, b, ranked[:r])
    if not g.n:
        return None
    b = ranked[0]
    options = g.neighbors(b)
    if not options:
        return None
    return RootChoice(min(options, key=lambda u: (degrees[u], u)), b, [])


def has_triangle_in(g: Graph, mask: int) -> bool:
    for x in _bits(mask):
        rest = g.adj[x] & mask
        for y in _bits(rest):
            if y > x and g.adj[y] & rest:
                return True
    return False


def common_neighbourhood_triangles(g: Graph) -> bool:
    return all(
        has_triangle_in(g, g.adj[u] & g.adj[v]) for u in range(g.n) for v in range(u + 1, g.n)
    )


def root_private_neighbours(g: Graph, a: int, b: int) -> bool:
    closed_a = g.adj[a] | 1 << a
    closed_b = g.adj[b] | 1 << b
    return bool(g.adj[a] & ~closed_b) and bool(g.adj[b] & ~closed_a)


def high_degree_set_ok(g: Graph, high_set: Sequence[int], a: int, b: int) -> bool:
    if not high_set or a in high_set or b in high_set:
        return False
    degrees = g.degrees()
    inside = [degrees[v] for v in high_set]
    outside_vertices = [v for v in range(g.n) if v not in high_set]
    outside = [degrees[v] for v in outside_vertices]
    if len(set(inside)) != len(inside):
        return False
    if outside and min(inside) <= max(outside):
        return False
    return _distinguishing(g, _mask(high_set), outside_vertices)


def graph_items(g: Graph, roots: RootChoice) -> Dict[str, bool]:
    a, b = roots.a, roots.b
    return {
        "rigid": is_rigid(g),
        "common_neighbourhood_triangles": common_neighbourhood_triangles(g),
        "root_private_neighbours": root_private_neighbours(g, a, b),
        "root_degree_order": g.degree(a) < g.degree(b),
        "high_degree_set": high_degree_set_ok(g, roots.high_set, a, b),
    }


def _pair_sums(degrees: List[int]) -> Set[int]:
    return {degrees[i] + degrees[j] for i in range(len(degrees)) for j in range(i + 1, len(degrees))}


def degree_sum_sets(graphs: Sequence[Graph]) -> Dict[Tuple[int, int], Set[int]]:
    """For each ordered index pair (i, j): the degree sums of two+two, two+one and one+one vertices."""
    singles = [set(g.degrees()) for g in graphs]
    pairs = [_pair_sums(g.degrees()) for g in graphs]
    out = {}
    for i in range(len(graphs)):
        for j in range(len(graphs)):
            sums = {p + q for p in pairs[i] for q in pairs[j]}
            sums |= {p + d for p in pairs[i] for d in singles[j]}
            sums |= {d + e for d in singles[i] for e in singles[j]}
            out[(i, j)] = sums
    return out


def family_items(graphs: Sequence[Graph]) -> Dict[str, bool]:
    separated = all(
        max(graphs[i].degrees()) < min(graphs[j].degrees())
        for i in range(len(graphs)) for j in range(i + 1, len(graphs))
    )
    sums = degree_sum_sets(graphs)
    keys = list(sums)
    disjoint = all(
        not (sums[p] & sums[q])
        for x, p in enumerate(keys) for q in keys[x + 1:]
        if set(p) != set(q)
    )
    all_degrees = set().union(*(set(g.degrees()) for g in graphs)) if graphs else set()
    avoid = not (set().union(*sums.values()) & all_degrees) if sums else True
    return {"degree_separation": separated, "degree_sums_disjoint": disjoint, "degree_sums_avoid_degrees": avoid}


@dataclass
class FamilyReport:
    """Outcome of generate_rigid_family."""
    family: List[EdgeRootedGraph] = field(default_factory=list)
    graph_reports: List[Dict[str, bool]] = field(default_factory=list)
    family_report: Dict[str, bool] = field(default_factory=dict)
    sizes: List[int] = field(default_factory=list)
    samples_used: List[int] = field(default_factory=list)
    seed: int = 0
    required: List[str] = field(default_factory=list)
    failed: List[str] = field(default_factory=list)
    rejections: Dict[str, int] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not self.failed


def generate_rigid_family(
    ell: int,
    n0: int,
    budget: int = 200,
    seed: int = 0,
    p: float = 0.5,
    size_step: int = 4,
    required: Optional[Iterable[str]] = None,
) -> FamilyReport:
    """Sample G(n_i, p) with n_i = n0 + size_step·i until each graph passes its required items.

    Items not in `required` are reported but do not gate acceptance. A
    required family item gates every graph after the first against the
    graphs already accepted.
    """
    if ell < 1:
        raise ValueError(f"Family size must be at least 1, got {ell}")
    required = set(DEFAULT_REQUIRED if required is None else required)
    unknown = required - set(GRAPH_ITEMS) - set(FAMILY_ITEMS)
    if unknown:
        raise ValueError(f"Unknown property items: {sorted(unknown)}")
    guard = get_settings().rigidity_guard
    sizes = [n0 + size_step * i for i in range(ell)]
    if max(sizes) > guard:
        raise SizeGuardError("rigidity", guard, max(sizes))

    report = FamilyReport(sizes=sizes, seed=seed, required=sorted(required))
    graphs: List[Graph] = []
    for i, n in enumerate(sizes):
        accepted = None
        rejections: Counter = Counter()
        for t in range(budget):
            g = random_graph(n, p, seed=sample_seed(seed, i, t))
            roots = choose_roots(g)
            if roots is None:
                rejections["roots"] += 1
                continue
            items = graph_items(g, roots)
            missing = [name for name in GRAPH_ITEMS if name in required and not items[name]]
            if not missing and graphs:
                missing = [
                    name for name, ok in family_items(graphs + [g]).items() if name in required and not ok
                ]
            if missing:
                rejections.update(missing)
                continue
            accepted = (g, roots, items, t + 1)
            break
        if accepted is None:
            report.rejections = dict(rejections)
            logger.warning(
                f"Budget of {budget} samples exhausted for graph {i} (n={n}); rejected by {dict(rejections)}"
            )
            report.failed.append(f"graph_{i}")
            report.failed.extend(sorted(rejections))
            break
        g, roots, items, used = accepted
        logger.info(f"Accepted graph {i} (n={n}) after {used} samples, roots ({roots.a}, {roots.b})")
        graphs.append(g)
        report.family.append(EdgeRootedGraph(g, (roots.a, roots.b)))
        report.graph_reports.append(items)
        report.samples_used.append(used)

    if graphs:
        report.family_report = family_items(graphs)
        report.failed.extend(
            name for name, ok in report.family_report.items() if name in required and not ok
        )
    return report


def sample_rigid(n: int, samples: int, seed: int = 0, p: float = 0.5) -> List[Tuple[int, Graph]]:
    """All rigid graphs among `samples` draws of G(n, p), with their sample index."""
    guard = get_settings().rigidity_guard
    if n > guard:
        raise SizeGuardError("rigidity", guard, n)
    found = []
    for t in range(samples):
        g = random_graph(n, p, seed=sample_seed(seed, t))
        if g.is_connected() and is_rigid(g):
            found.append((t, g))
    logger.info(f"{len(found)} of {samples} samples of G({n}, {p}) are rigid")
    return found
