import time

import pytest

from conftest import FIGURE_EIGHT_PD, KINKED_TREFOIL_PD, TREFOIL_PD
from knotforge.alexander import (
    alexander_matrix, alexander_poly, alexander_poly_dense, checkerboard, determinant,
    fox_row, goeritz_determinant, goeritz_matrix, int_bareiss_det, sparse_det, wirtinger,
)
from knotforge.construct import build_link
from knotforge.diagram import Diagram, DiagramError
from knotforge.laurent import ONE, T, LaurentPoly
from test_invariants import _connected_sum


def test_trefoil(trefoil):
    assert alexander_poly(trefoil) == 1 - T + T * T
    assert determinant(trefoil) == 3


def test_figure_eight(figure_eight):
    assert alexander_poly(figure_eight) == 1 - 3 * T + T * T
    assert determinant(figure_eight) == 5


def test_unknot_kink(unknot_kink):
    assert alexander_poly(unknot_kink) == ONE
    assert determinant(unknot_kink) == 1


def test_kink_does_not_change_invariants():
    d = Diagram.from_pd(KINKED_TREFOIL_PD)
    assert alexander_poly(d) == 1 - T + T * T
    assert goeritz_determinant(d) == 3


def test_mirror_invariance(trefoil):
    assert alexander_poly(trefoil.mirror()) == alexander_poly(trefoil)
    assert determinant(trefoil.mirror()) == 3


def test_connected_sum_multiplies():
    d = Diagram.from_pd(_connected_sum(TREFOIL_PD, FIGURE_EIGHT_PD))
    assert alexander_poly(d) == (1 - T + T * T) * (1 - 3 * T + T * T)
    assert determinant(d) == 15


def test_wirtinger_shape(figure_eight):
    w = wirtinger(figure_eight)
    assert len(w.arcs) == len(w.relations) == 4
    assert sorted(e for arc in w.arcs for e in arc) == list(range(1, 9))


def test_fox_row_of_relation():
    row = fox_row(((0, 1), (1, 1), (0, -1), (2, -1)), 3)
    assert row[0] == 1 - T
    assert row[1] == LaurentPoly.monomial(1, 1)
    assert row[2] == LaurentPoly.monomial(-1, 0)


def test_rows_sum_to_zero(figure_eight):
    # Fox derivatives of a Wirtinger relator at t sum to 0
    for row in alexander_matrix(wirtinger(figure_eight)):
        total = LaurentPoly()
        for p in row.values():
            total = total + p
        assert total.is_zero()


def test_sparse_det_up_to_unit():
    rows = [{0: 1 + T, 1: T}, {0: ONE, 1: 2 * ONE}]
    assert sparse_det(rows, [0, 1]).normalize() == 2 + T
    assert sparse_det([{0: ONE}, {0: T}], [0, 1]).is_zero()


def test_wirtinger_rejects_links():
    link = Diagram.from_pd([(1, 4, 2, 3), (3, 2, 4, 1)])
    with pytest.raises(DiagramError):
        alexander_poly(link)


def test_checkerboard_alternates(figure_eight):
    colour = checkerboard(figure_eight)
    cf = figure_eight.faces().corner_face
    for x in range(figure_eight.crossing_count):
        cs = [colour[cf[(x, s)]] for s in range(4)]
        assert cs[0] == cs[2] != cs[1] == cs[3]


def test_goeritz_rows_sum_to_zero(trefoil):
    g, shaded = goeritz_matrix(trefoil)
    assert all(sum(r) == 0 for r in g)
    assert len(shaded) in (2, 3)


def test_int_bareiss():
    assert int_bareiss_det([[2, 1], [1, 2]]) == 3
    assert int_bareiss_det([[0, 1], [1, 0]]) == -1
    assert int_bareiss_det([]) == 1


@pytest.mark.parametrize("n", range(1, 4))
def test_sparse_and_dense_routes_agree(n):
    d, _ = build_link(n)
    assert alexander_poly(d) == alexander_poly_dense(d)


def test_constructed_l1_and_l2():
    assert alexander_poly(build_link(1)[0]) == 6 - 11 * T + 6 * T * T
    assert alexander_poly(build_link(2)[0]).coeffs() == [120, -437, 635, -437, 120]


@pytest.mark.parametrize("n", range(1, 7))
def test_constructed_properties(n):
    d, _ = build_link(n)
    delta = alexander_poly(d)
    assert delta.span() == 2 * n
    assert delta(1) in (1, -1)
    assert delta.is_palindromic()
    assert goeritz_determinant(d) == abs(delta(-1))


def test_elimination_is_fast():
    d, _ = build_link(6)
    t0 = time.perf_counter()
    alexander_poly(d)
    assert time.perf_counter() - t0 < 10
