import pytest

from conftest import KINKED_TREFOIL_PD
from knotforge.construct import build_link
from knotforge.diagram import Diagram, DiagramError
from knotforge.invariants import (
    NotReducedError, crossing_sides, diagram_prime, genus, is_alternating, is_reduced,
    is_special, nugatory_crossings, seifert_circles, shared_edge_face_pairs, two_edge_cuts,
)


def test_trefoil(trefoil):
    s = seifert_circles(trefoil)
    assert s.s == 2 and s.chi == -1
    assert genus(trefoil) == 1
    assert is_alternating(trefoil) and is_special(trefoil)
    assert diagram_prime(trefoil)


def test_figure_eight(figure_eight):
    assert seifert_circles(figure_eight).s == 3
    assert genus(figure_eight) == 1
    assert is_alternating(figure_eight)
    assert not is_special(figure_eight)
    assert any(len(sides) == 2 for sides in crossing_sides(figure_eight).values())
    assert diagram_prime(figure_eight)


def test_unknot_kink(unknot_kink):
    assert seifert_circles(unknot_kink).s == 2
    assert genus(unknot_kink) == 0
    assert nugatory_crossings(unknot_kink) == [0]
    with pytest.raises(NotReducedError):
        diagram_prime(unknot_kink)


def test_kinked_trefoil_is_not_reduced():
    d = Diagram.from_pd(KINKED_TREFOIL_PD)
    assert not is_reduced(d)
    assert nugatory_crossings(d) == [3]
    assert not is_alternating(d)
    assert genus(d) == 1
    with pytest.raises(NotReducedError) as info:
        diagram_prime(d)
    assert info.value.crossings == [3]


def test_genus_needs_knot():
    link = Diagram.from_pd([(1, 4, 2, 3), (3, 2, 4, 1)])
    with pytest.raises(DiagramError):
        genus(link)


def _connected_sum(a_pd, b_pd):
    """Connected sum of two knot PD codes, cutting edge 1 of each."""
    shift = max(max(c) for c in a_pd)
    b = [tuple(e + shift for e in c) for c in b_pd]
    # reroute: a's edge 1 enters b where b's edge (1+shift) would, and vice versa
    fresh = 2 * shift + 1
    a = [tuple(fresh if (e == 1 and (x, s) == _head_slot(a_pd)) else e for s, e in enumerate(c))
         for x, c in enumerate(a_pd)]
    hx, hs = _head_slot(b_pd)
    b = [tuple(1 if (e == 1 + shift and (x, s) == (hx, hs)) else e for s, e in enumerate(c))
         for x, c in enumerate(b)]
    a = [tuple(1 + shift if e == fresh else e for e in c) for c in a]
    return a + b


def _head_slot(pd):
    d = Diagram.from_pd(pd)
    return d.head(1)


def test_connected_sum_has_two_edge_cut(trefoil):
    from conftest import FIGURE_EIGHT_PD, TREFOIL_PD

    s = Diagram.from_pd(_connected_sum(TREFOIL_PD, FIGURE_EIGHT_PD))
    assert s.validate().ok
    assert s.components()[0] == 1
    assert is_reduced(s)
    assert not diagram_prime(s)
    assert two_edge_cuts(s)
    assert shared_edge_face_pairs(s)


@pytest.mark.parametrize("n", range(1, 5))
def test_constructed_links(n):
    d, seifert = build_link(n)
    assert d.components()[0] == 1
    assert seifert.chi == 1 - 2 * n
    assert genus(d) == n
    assert is_alternating(d) and is_special(d)
    assert is_reduced(d)
    assert two_edge_cuts(d) == []


@pytest.mark.parametrize("n", range(1, 5))
def test_cut_search_agrees_with_face_pairs(n):
    d, _ = build_link(n)
    assert bool(two_edge_cuts(d)) == bool(shared_edge_face_pairs(d))


@pytest.mark.parametrize("pd_name", ["TREFOIL_PD", "FIGURE_EIGHT_PD"])
def test_cut_routes_agree_on_fixtures(pd_name):
    import conftest

    d = Diagram.from_pd(getattr(conftest, pd_name))
    assert two_edge_cuts(d) == []
    assert shared_edge_face_pairs(d) == []


def test_switched_crossing_breaks_alternation():
    from conftest import TREFOIL_PD

    d = Diagram.from_pd([(4, 1, 5, 2)] + TREFOIL_PD[1:])
    assert d.validate().ok
    assert d.signs() == [-1, 1, 1]
    assert not is_alternating(d)


def test_trefoil_sum_trefoil_not_prime():
    from conftest import TREFOIL_PD

    s = Diagram.from_pd(_connected_sum(TREFOIL_PD, TREFOIL_PD))
    assert s.crossing_count == 6
    assert two_edge_cuts(s) == [(1, 7)]
    assert not diagram_prime(s)
