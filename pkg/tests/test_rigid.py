"""Tests for random rigid graphs and their property checks."""

import pytest

from src.core.errors import SizeGuardError
from src.graphs.graph import Graph, complete, cycle, path
from src.graphs.homs import automorphisms, endomorphisms
from src.graphs.rigid import (
    DEFAULT_REQUIRED, FAMILY_ITEMS, GRAPH_ITEMS, choose_roots, common_neighbourhood_triangles,
    degree_ranking, degree_sum_sets, family_items, generate_rigid_family, graph_items, has_triangle_in,
    high_degree_set_ok, random_graph, root_private_neighbours, sample_rigid, sample_seed,
)


def test_random_graph_is_seeded():
    assert random_graph(9, 0.5, seed=3) == random_graph(9, 0.5, seed=3)
    assert random_graph(5, 0.0, seed=1).edge_count == 0
    assert random_graph(5, 1.0, seed=1).edge_count == 10


@pytest.mark.parametrize("n,p", [(0, 0.5), (5, -0.1), (5, 1.5)])
def test_random_graph_validation(n, p):
    with pytest.raises(ValueError):
        random_graph(n, p)


def test_sample_seeds_are_stable_and_distinct():
    assert sample_seed(1, 2, 3) == sample_seed(1, 2, 3)
    assert len({sample_seed(0, i) for i in range(50)}) == 50


def test_degree_ranking_breaks_ties_by_index():
    assert degree_ranking(path(3)) == [1, 2, 0, 3]


@pytest.mark.parametrize("seed", range(8))
def test_choose_roots_returns_an_edge_outside_the_high_set(seed):
    g = random_graph(10, 0.5, seed=seed)
    roots = choose_roots(g)
    if roots is None:
        return
    assert g.has_edge(roots.a, roots.b)
    assert roots.a not in roots.high_set and roots.b not in roots.high_set
    assert g.degree(roots.a) <= g.degree(roots.b)


def test_choose_roots_without_edges():
    assert choose_roots(Graph(4)) is None
    assert choose_roots(Graph(0)) is None


def test_triangle_helpers():
    k5 = complete(5)
    assert has_triangle_in(k5, 0b11100)
    assert not has_triangle_in(cycle(5), 0b11111)
    assert common_neighbourhood_triangles(k5)
    assert not common_neighbourhood_triangles(complete(4))


def test_root_private_neighbours():
    g = path(3)
    assert root_private_neighbours(g, 1, 2)
    assert not root_private_neighbours(complete(3), 0, 1)


def test_high_degree_set_rejections():
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])
    assert high_degree_set_ok(g, [0], 3, 4) is False
    assert high_degree_set_ok(g, [], 1, 2) is False
    assert high_degree_set_ok(g, [0], 1, 2) is False


def test_graph_items_report_every_item():
    g = random_graph(8, 0.5, seed=2)
    roots = choose_roots(g)
    assert roots is not None
    assert set(graph_items(g, roots)) == set(GRAPH_ITEMS)


def test_family_items():
    small, large = cycle(5), complete(6)
    report = family_items([small, large])
    assert set(report) == set(FAMILY_ITEMS)
    assert report["degree_separation"]
    assert not family_items([large, small])["degree_separation"]
    sums = degree_sum_sets([small, large])
    assert sums[(0, 0)] == {4, 6, 8}


def test_generate_rigid_family_respects_size_guard():
    with pytest.raises(SizeGuardError):
        generate_rigid_family(ell=1, n0=20)
    with pytest.raises(SizeGuardError):
        generate_rigid_family(ell=3, n0=8, size_step=4)


def test_generate_rigid_family_rejects_unknown_items():
    with pytest.raises(ValueError):
        generate_rigid_family(ell=1, n0=8, required=["sparkle"])
    with pytest.raises(ValueError):
        generate_rigid_family(ell=0, n0=8)


def test_generate_rigid_family_without_requirements_takes_first_sample():
    report = generate_rigid_family(ell=2, n0=6, budget=5, seed=4, required=[])
    assert report.complete
    assert report.sizes == [6, 10]
    assert len(report.family) == 2
    assert report.samples_used[0] >= 1
    assert set(report.family_report) == set(FAMILY_ITEMS)


def test_generate_rigid_family_names_the_failing_items():
    # G(4, 1) is K4: roots exist but it is never rigid
    report = generate_rigid_family(ell=2, n0=4, budget=3, p=1.0, required=["rigid"])
    assert not report.complete
    assert report.failed == ["graph_0", "rigid"]
    assert report.rejections == {"rigid": 3}
    assert report.family == []


def test_generate_rigid_family_is_reproducible():
    first = generate_rigid_family(ell=1, n0=9, budget=40, seed=5)
    second = generate_rigid_family(ell=1, n0=9, budget=40, seed=5)
    assert first.failed == second.failed
    assert first.samples_used == second.samples_used
    assert [f.graph for f in first.family] == [f.graph for f in second.family]
    for f, items in zip(first.family, first.graph_reports):
        assert all(items[name] for name in DEFAULT_REQUIRED if name in GRAPH_ITEMS)
        assert len(endomorphisms(f.graph, limit=2)) == 1


@pytest.mark.slow
def test_sampling_finds_rigid_graphs():
    found = sample_rigid(10, 500, seed=1)
    assert found
    _, g = found[0]
    assert len(endomorphisms(g)) == 1
    assert len(automorphisms(g)) == 1


def test_sample_rigid_guard():
    with pytest.raises(SizeGuardError):
        sample_rigid(20, 1)
