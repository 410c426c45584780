import pytest

from knotforge.census import (
    CensusError, UnionFind, components, count_surfaces, census_report,
    enumerate_selections, selection_count,
)
from knotforge.construct import GrayGraph, build_graph


def test_union_find():
    uf = UnionFind("abcd")
    assert uf.union("a", "b")
    assert not uf.union("b", "a")
    uf.union("c", "d")
    assert uf.find("a") == uf.find("b") != uf.find("c")


@pytest.mark.parametrize("n", range(1, 13))
def test_graph_shape(n):
    comps = components(build_graph(n))
    assert len(comps) == 2 * n - 1
    assert all(c.shape == (2, 2) for c in comps)


def test_build_graph_5_sizes():
    g = build_graph(5)
    assert (len(components(g)), len(g.vertices), len(g.edges)) == (9, 18, 18)


def test_empty_graph():
    g = GrayGraph((), ())
    assert components(g) == []
    assert selection_count(g) == 1


def test_three_parallel_edges():
    g = GrayGraph(("u", "v"), (("u", "v"),) * 3)
    assert len(list(enumerate_selections(g))) == 3


def test_isolated_vertex_has_no_selection():
    g = GrayGraph(("u", "v", "w"), (("u", "v"),))
    with pytest.raises(CensusError):
        list(enumerate_selections(g))


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_is_duplicate_free(n):
    g = build_graph(n)
    sels = [s.choice for s in enumerate_selections(g)]
    assert len(sels) == len(set(sels)) == 2 ** (2 * n - 1)
    # each selection picks exactly one edge from every component
    comps = components(g)
    for choice in sels[:50]:
        assert all(sum(i in c.edges for i in choice) == 1 for c in comps)


def test_selection_labels():
    g = build_graph(1)
    labels = [s.labels(g) for s in enumerate_selections(g)]
    assert len(set(labels)) == 2


@pytest.mark.parametrize("n,count", [(1, 2), (3, 32), (8, 32768), (12, 2 ** 23)])
def test_count_surfaces(n, count):
    assert count_surfaces(n) == count


def test_fast_path_matches_enumeration():
    assert count_surfaces(6, enumerate_up_to=0) == count_surfaces(6)


def test_report():
    r = census_report(2)
    assert r == {"n": 2, "components": 3, "component_shapes": [(2, 2)],
                 "count": 8, "closed_form_ok": True}
