"""Tests for graphs, weighted targets and gluing constructions."""

from fractions import Fraction

import networkx as nx
import pytest

from src.core.words import parse_word
from src.graphs.graph import (
    EdgeRootedGraph, Graph, WeightedGraph, complete, cut_vertices, cycle, edges_in_triangles, g_square,
    glue_cycle, glue_cycle_layout, max_abs_row_sum, path, relabel, single_edge, star, sun_blocks, sun_graph,
    symmetrization_swap, symmetrize, word_blocks,
)


def triangle() -> EdgeRootedGraph:
    return EdgeRootedGraph(complete(3), (0, 1))


def is_automorphism(g: Graph, sigma) -> bool:
    return sorted(sigma) == list(range(g.n)) and all(g.has_edge(sigma[u], sigma[v]) for u, v in g.edges)


def test_add_edge_rules():
    g = Graph(3)
    assert g.add_edge(0, 1)
    assert not g.add_edge(1, 0)
    assert g.edge_count == 1
    with pytest.raises(ValueError):
        g.add_edge(2, 2)
    with pytest.raises(ValueError):
        g.add_edge(0, 3)


def test_degrees_and_neighbors():
    g = star(3)
    assert g.degrees() == [3, 1, 1, 1]
    assert g.neighbors(0) == [1, 2, 3]
    assert g.max_degree() == 3


def test_networkx_conversion_keeps_structure():
    g = cycle(5)
    assert nx.is_isomorphic(g.to_networkx(), nx.cycle_graph(5))
    assert Graph.from_networkx(g.to_networkx()) == g


def test_weighted_graph_needs_symmetric_matrix():
    with pytest.raises(ValueError):
        WeightedGraph([[0, 1], [2, 0]])
    directed = WeightedGraph([[0, 1], [2, 0]], directed=True)
    assert directed.in_support == [0b10, 0b01]


def test_weighted_graph_from_edges_is_exact():
    h = WeightedGraph.from_edges(3, [(0, 1, "1/3"), (1, 2, 2)])
    assert h.exact
    assert h.weight(1, 0) == Fraction(1, 3)
    assert max_abs_row_sum(h.matrix) == Fraction(7, 3)


def test_root_must_be_an_edge():
    with pytest.raises(ValueError):
        EdgeRootedGraph(path(2), (0, 2))
    assert triangle().transpose().root == (1, 0)


def test_symmetrize_sizes():
    f = EdgeRootedGraph(path(3), (1, 2))
    fs = symmetrize(f)
    assert fs.n == 2 * f.n - 2
    assert fs.graph.edge_count == 2 * f.graph.edge_count - 1
    assert fs.root == (1, 2)


def test_symmetrization_swap_is_root_swapping_automorphism():
    f = EdgeRootedGraph(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 1)]), (0, 1))
    fs = symmetrize(f)
    sigma = symmetrization_swap(f)
    assert is_automorphism(fs.graph, sigma)
    assert (sigma[0], sigma[1]) == (1, 0)


def test_single_edges_glue_to_a_cycle():
    g = glue_cycle([single_edge()] * 6)
    assert nx.is_isomorphic(g.to_networkx(), nx.cycle_graph(6))


def test_glue_needs_two_blocks():
    with pytest.raises(ValueError):
        glue_cycle_layout([triangle()])


def test_glue_layout_maps_roots_to_cycle():
    layout = glue_cycle_layout([triangle(), single_edge(), triangle().transpose()])
    assert layout.cycle == [0, 1, 2]
    for i, (block, image) in enumerate(zip(layout.blocks, layout.vertex_maps)):
        a, b = block.root
        assert (image[a], image[b]) == (i, (i + 1) % 3)
    assert layout.graph.n == 5


def test_sun_graph_counts():
    g = sun_graph(triangle(), 4, 1)
    assert g.n == 12
    assert g.edge_count == 16
    assert len(sun_blocks(triangle(), 4, 1)) == 8


@pytest.mark.parametrize("two_k,ell", [(2, 1), (5, 1), (4, -1)])
def test_sun_blocks_validation(two_k, ell):
    with pytest.raises(ValueError):
        sun_blocks(triangle(), two_k, ell)


def test_word_blocks_follow_markers():
    w = parse_word("A B^T X", ["X"])
    family = {0: triangle(), 1: triangle(), 2: triangle()}
    blocks = word_blocks(w, family)
    assert blocks[0].root == (0, 1)
    assert blocks[1].root == (1, 0)
    assert blocks[2].n == 4
    assert g_square(blocks).n == 2 * glue_cycle(blocks).n


def test_structure_helpers():
    assert edges_in_triangles(complete(4))
    assert not edges_in_triangles(cycle(4))
    assert cut_vertices(path(2)) == [1]
    assert cut_vertices(cycle(5)) == []


def test_relabel():
    g = relabel(path(2), [2, 1, 0])
    assert g.has_edge(0, 1) and g.has_edge(1, 2)
    assert not g.has_edge(0, 2)
