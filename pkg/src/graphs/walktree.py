"""Walk-trees and the walk-tree partition of a graph."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WalkTree:
    """Tree of walks from a root vertex, truncated at `depth`."""
    label: int
    children: Tuple["WalkTree", ...]
    depth: int

    def canonical(self) -> tuple:
        return tuple(sorted(child.canonical() for child in self.children))

    def size(self) -> int:
        return 1 + sum(child.size() for child in self.children)


def walk_tree_truncated(g: Graph, v: int, depth: int) -> WalkTree:
    """Explicit tree; its size grows like Δ^depth, so keep depth small."""
    if depth < 0:
        raise ValueError(f"Depth must be non-negative, got {depth}")
    if depth == 0:
        return WalkTree(v, (), 0)
    return WalkTree(v, tuple(walk_tree_truncated(g, u, depth - 1) for u in g.neighbors(v)), depth)


def walk_tree_classes(g: Graph, depth: int) -> List[int]:
    """Class id per vertex such that equal ids mean isomorphic depth-truncated walk-trees."""
    ids = [0] * g.n
    for _ in range(depth):
        table: Dict[tuple, int] = {}
        ids = [
            table.setdefault(tuple(sorted(ids[u] for u in g.neighbors(v))), len(table))
            for v in range(g.n)
        ]
    return ids


def _classes_to_partition(colors: List[int]) -> List[List[int]]:
    groups: Dict[int, List[int]] = {}
    for v, c in enumerate(colors):
        groups.setdefault(c, []).append(v)
    return sorted(groups.values())


def refine_colors(g: Graph) -> List[int]:
    """Colour refinement run until the class count stops growing."""
    colors = [0] * g.n
    count = 1 if g.n else 0
    for rounds in range(1, g.n + 1):
        table: Dict[tuple, int] = {}
        colors = [
            table.setdefault((colors[v], tuple(sorted(colors[u] for u in g.neighbors(v)))), len(table))
            for v in range(g.n)
        ]
        if len(table) == count:
            logger.debug(f"Refinement stable after {rounds} rounds with {count} classes")
            break
        count = len(table)
    return colors


def walk_tree_partition(g: Graph) -> List[List[int]]:
    """Vertices grouped by walk-tree isomorphism type, sorted by least member."""
    return _classes_to_partition(refine_colors(g))


def walk_tree_oracle_partition(g: Graph) -> List[List[int]]:
    """Same partition from depth-2n walk-tree classes."""
    return _classes_to_partition(walk_tree_classes(g, 2 * g.n))


def neighborhood_degree_sequence(g: Graph, v: int) -> List[int]:
    return sorted(g.degree(u) for u in g.neighbors(v))


def neighbour_class_profile(g: Graph, partition: List[List[int]], v: int) -> List[int]:
    """Sorted class indices of v's neighbours."""
    class_of = {u: i for i, members in enumerate(partition) for u in members}
    return sorted(class_of[u] for u in g.neighbors(v))
