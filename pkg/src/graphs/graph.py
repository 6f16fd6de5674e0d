"""Graphs, weighted targets, edge-rooted graphs and gluing constructions.

Vertices are 0..n-1 and adjacency is kept as one int bitset per vertex.
Edges keep the orientation they were given in, which only matters when a
graph is read as a directed source for homomorphism counting.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class Graph:
    """Simple graph with bitset adjacency."""

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError(f"Vertex count must be non-negative, got {n}")
        self.n = n
        self.adj: List[int] = [0] * n
        self.edges: List[Edge] = []
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> bool:
        """Add {u, v}; returns False if it was already present."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"Edge ({u}, {v}) outside vertex range 0..{self.n - 1}")
        if u == v:
            raise ValueError(f"Loops are not allowed in simple graphs: ({u}, {v})")
        if self.adj[u] >> v & 1:
            return False
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u
        self.edges.append((u, v))
        return True

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        mask = self.adj[v]
        return [u for u in range(self.n) if mask >> u & 1]

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def degrees(self) -> List[int]:
        return [self.degree(v) for v in range(self.n)]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        index = {v: i for i, v in enumerate(sorted(g.nodes()))}
        return cls(len(index), ((index[u], index[v]) for u, v in g.edges() if u != v))

    def disjoint_union(self, other: "Graph") -> "Graph":
        edges = list(self.edges) + [(u + self.n, v + self.n) for u, v in other.edges]
        return Graph(self.n + other.n, edges)

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.to_networkx())

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


class WeightedGraph:
    """Edge-weighted target; absent edges weigh 0 and loops are allowed.

    Weights live in an n×n numpy array, of dtype object when exact
    Fraction arithmetic is wanted.
    """

    def __init__(self, matrix, directed: bool = False):
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"Weight matrix must be square, got shape {matrix.shape}")
        if not directed and not all(
            matrix[i, j] == matrix[j, i] for i in range(matrix.shape[0]) for j in range(i)
        ):
            raise ValueError("Undirected weighted graphs need a symmetric weight matrix")
        self.matrix = matrix
        self.directed = directed
        n = matrix.shape[0]
        self.out_support = [sum(1 << j for j in range(n) if matrix[i, j] != 0) for i in range(n)]
        self.in_support = [sum(1 << i for i in range(n) if matrix[i, j] != 0) for j in range(n)]

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def exact(self) -> bool:
        return self.matrix.dtype == object

    def weight(self, x: int, y: int):
        return self.matrix[x, y]

    def one(self):
        return Fraction(1) if self.exact else 1.0

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    @classmethod
    def from_graph(cls, g: Graph, exact: bool = True) -> "WeightedGraph":
        one = Fraction(1) if exact else 1.0
        zero = Fraction(0) if exact else 0.0
        matrix = np.full((g.n, g.n), zero, dtype=object if exact else float)
        for u, v in g.edges:
            matrix[u, v] = one
            matrix[v, u] = one
        return cls(matrix)

    @classmethod
    def from_edges(
        cls, n: int, weighted_edges: Iterable[Tuple[int, int, object]], directed: bool = False, exact: bool = True
    ) -> "WeightedGraph":
        zero = Fraction(0) if exact else 0.0
        matrix = np.full((n, n), zero, dtype=object if exact else float)
        for u, v, w in weighted_edges:
            w = Fraction(w) if exact else float(w)
            matrix[u, v] = w
            if not directed:
                matrix[v, u] = w
        return cls(matrix, directed)

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"WeightedGraph(n={self.n}, {kind}, exact={self.exact})"


@dataclass(frozen=True)
class EdgeRootedGraph:
    """A graph with an ordered root edge (a, b)."""
    graph: Graph
    root: Edge

    def __post_init__(self):
        a, b = self.root
        if a == b or not self.graph.has_edge(a, b):
            raise ValueError(f"Root {self.root} is not an edge of the graph")

    def transpose(self) -> "EdgeRootedGraph":
        a, b = self.root
        return EdgeRootedGraph(self.graph, (b, a))

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass
class GluedCycle:
    """Blocks glued along a cycle, with the position of every block vertex."""
    graph: Graph
    blocks: List[EdgeRootedGraph]
    cycle: List[int]
    vertex_maps: List[List[int]] = field(default_factory=list)


def single_edge() -> EdgeRootedGraph:
    return EdgeRootedGraph(Graph(2, [(0, 1)]), (0, 1))


def complete(k: int) -> Graph:
    return Graph(k, [(u, v) for u in range(k) for v in range(u + 1, k)])


def cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError(f"Simple cycles need at least 3 vertices, got {k}")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def directed_cycle(k: int) -> Graph:
    """C_k with edges oriented i -> i+1; read it with directed=True."""
    if k < 3:
        raise ValueError(f"Directed cycles need at least 3 vertices, got {k}")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def path(length: int) -> Graph:
    return Graph(length + 1, [(i, i + 1) for i in range(length)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def symmetrize(f: EdgeRootedGraph) -> EdgeRootedGraph:
    """Two copies of F glued crosswise at the roots (a1 = b2, b1 = a2)."""
    a, b = f.root
    n = f.n
    second = {a: b, b: a}
    fresh = n
    for v in range(n):
        if v not in second:
            second[v] = fresh
            fresh += 1
    g = Graph(2 * n - 2, f.graph.edges)
    for u, v in f.graph.edges:
        g.add_edge(second[u], second[v])
    return EdgeRootedGraph(g, (a, b))


def symmetrization_swap(f: EdgeRootedGraph) -> List[int]:
    """The root-swapping automorphism of symmetrize(f), as an image list."""
    a, b = f.root
    n = f.n
    sigma = list(range(2 * n - 2))
    fresh = n
    for v in range(n):
        if v in (a, b):
            continue
        sigma[v], sigma[fresh] = fresh, v
        fresh += 1
    sigma[a], sigma[b] = b, a
    return sigma


def glue_cycle_layout(fs: Sequence[EdgeRootedGraph]) -> GluedCycle:
    """Glue blocks along a cycle identifying b_{i-1}, a_i and cycle vertex i."""
    t = len(fs)
    if t < 2:
        raise ValueError(f"Gluing along a cycle needs at least 2 blocks, got {t}")
    g = Graph(t)
    cycle_vertices = list(range(t))
    maps = []
    for i, f in enumerate(fs):
        a, b = f.root
        image = [-1] * f.n
        image[a] = i
        image[b] = (i + 1) % t
        for v in range(f.n):
            if image[v] < 0:
                image[v] = g.n
                g.n += 1
                g.adj.append(0)
        for u, v in f.graph.edges:
            g.add_edge(image[u], image[v])
        maps.append(image)
    return GluedCycle(g, list(fs), cycle_vertices, maps)


def glue_cycle(fs: Sequence[EdgeRootedGraph]) -> Graph:
    return glue_cycle_layout(fs).graph


def g_square(fs: Sequence[EdgeRootedGraph]) -> Graph:
    """The block list followed by disjoint copies of itself."""
    return glue_cycle(list(fs) + list(fs))


def sun_blocks(f: EdgeRootedGraph, two_k: int, ell: int) -> List[EdgeRootedGraph]:
    if two_k < 4 or two_k % 2:
        raise ValueError(f"Sun graphs need an even number of at least 4 blocks, got {two_k}")
    if ell < 0:
        raise ValueError(f"Path length must be non-negative, got {ell}")
    return ([f] + [single_edge()] * ell) * two_k


def sun_graph(f: EdgeRootedGraph, two_k: int, ell: int) -> Graph:
    """Cycle of length two_k·(ell+1) carrying two_k copies of F at regular intervals."""
    return glue_cycle(sun_blocks(f, two_k, ell))


def word_blocks(w, family: Dict[int, EdgeRootedGraph]) -> List[EdgeRootedGraph]:
    """Block list of a word: Fᵀ for transposed and F^sym for symmetric factors."""
    from ..data.models import Marker

    blocks = []
    for factor in w.factors:
        f = family[factor.var]
        if factor.marker is Marker.TRANSPOSE:
            f = f.transpose()
        elif factor.marker is Marker.SYM:
            f = symmetrize(f)
        blocks.append(f)
    return blocks


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex i is g's vertex order[i]."""
    position = {v: i for i, v in enumerate(order)}
    return Graph(g.n, ((position[u], position[v]) for u, v in g.edges))


def edges_in_triangles(g: Graph) -> bool:
    return all(g.adj[u] & g.adj[v] for u, v in g.edges)


def cut_vertices(g: Graph) -> List[int]:
    return sorted(nx.articulation_points(g.to_networkx()))


def max_abs_row_sum(m) -> object:
    """‖M‖∞ for a small numpy matrix of numbers or Fractions."""
    return max(sum(abs(x) for x in row) for row in m)


def rooted(g: Graph, root: Optional[Edge]) -> Optional[EdgeRootedGraph]:
    return EdgeRootedGraph(g, root) if root is not None else None
