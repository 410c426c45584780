import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIGURE_EIGHT_PD, TREFOIL_PD, UNKNOT_KINK_PD
from knotforge.construct import build_link
from knotforge.diagram import Diagram, DiagramError, export, parse, validate


def test_trefoil_signs_and_faces(trefoil):
    assert trefoil.signs() == [1, 1, 1]
    assert trefoil.writhe() == 3
    assert len(trefoil.faces()) == 5
    assert trefoil.components()[0] == 1


def test_figure_eight_signs(figure_eight):
    assert figure_eight.signs() == [1, 1, -1, -1]
    assert figure_eight.writhe() == 0
    assert len(figure_eight.faces()) == 6


def test_unknot_kink_faces(unknot_kink):
    assert len(unknot_kink.faces()) == 3


@pytest.mark.parametrize("pd", [TREFOIL_PD, FIGURE_EIGHT_PD, UNKNOT_KINK_PD])
def test_fixtures_validate(pd):
    assert validate(Diagram.from_pd(pd)).ok


def test_empty_diagram_rejected():
    report = validate(Diagram([], []))
    assert not report.ok
    assert "empty diagram unsupported" in report.failures[0]


def test_edge_multiplicity_reported():
    report = validate(Diagram([(1, 2, 3, 4)], [1, 1, 1, 1]))
    assert any("edge multiplicity" in f for f in report.failures)


def test_slot_roles_checked(trefoil):
    flipped = Diagram(trefoil.pd, [-o for o in trefoil.orientation])
    assert not validate(flipped).ok


def test_disconnected_rejected():
    two_kinks = Diagram.from_pd([(1, 2, 2, 1), (3, 4, 4, 3)])
    report = validate(two_kinks)
    assert any("disconnected" in f for f in report.failures)
    with pytest.raises(DiagramError):
        two_kinks.faces()


def test_gauss_and_dt(trefoil, figure_eight):
    assert export(trefoil, "gauss") == "-1 3 -2 1 -3 2"
    assert export(trefoil, "dt") == "-4 -6 -2"
    assert export(figure_eight, "dt") == "4 6 8 2"


def test_dt_needs_knot():
    link = Diagram.from_pd([(1, 4, 2, 3), (3, 2, 4, 1)])
    assert link.components()[0] == 2
    with pytest.raises(DiagramError):
        export(link, "dt")
    assert " | " in export(link, "gauss")


@pytest.mark.parametrize("fmt", ["json", "pd"])
def test_round_trip(fmt, figure_eight):
    back = parse(export(figure_eight, fmt), fmt)
    assert back == figure_eight


def test_json_without_orientation_is_inferred(trefoil):
    back = Diagram.from_json(json.dumps({"crossings": [list(c) for c in TREFOIL_PD]}))
    assert back == trefoil


def test_bad_json():
    with pytest.raises(DiagramError):
        parse("{not json", "json")
    with pytest.raises(DiagramError):
        parse('{"orientation": []}', "json")


def test_mirror_flips_signs(trefoil):
    m = trefoil.mirror()
    assert validate(m).ok
    assert m.signs() == [-1, -1, -1]
    assert m.mirror().is_isomorphic(trefoil)
    assert not m.is_isomorphic(trefoil)


def _random_relabel(d: Diagram, seed: int) -> Diagram:
    rng = random.Random(seed)
    order = list(range(d.crossing_count))
    rng.shuffle(order)
    labels = list(range(1, d.edge_count + 1))
    rng.shuffle(labels)
    return d.relabel(order, dict(zip(range(1, d.edge_count + 1), labels)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([TREFOIL_PD, FIGURE_EIGHT_PD, UNKNOT_KINK_PD]))
def test_relabel_preserves_isomorphism_class(seed, pd):
    d = Diagram.from_pd(pd)
    r = _random_relabel(d, seed)
    assert validate(r).ok
    assert r.is_isomorphic(d)
    assert sorted(r.signs()) == sorted(d.signs())
    assert parse(export(r, "json"), "json").is_isomorphic(d)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_relabel_constructed_link(seed):
    d, _ = build_link(1)
    r = _random_relabel(d, seed)
    assert r.is_isomorphic(d)
    assert len(r.faces()) == len(d.faces()) == d.crossing_count + 2


def test_hopf_link():
    hopf = Diagram.from_pd([(1, 4, 2, 3), (3, 2, 4, 1)])
    assert hopf.components()[0] == 2
    assert len(hopf.faces()) == 4
