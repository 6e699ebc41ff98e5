from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from updraw.constructions import moment_curve_drawing
from updraw.graph import generate
from updraw.io import (GraphFormatError, drawing_from_json, drawing_to_json, export_obj,
                       graph_from_json, graph_to_json, parse_graph, queue_layout_from_json,
                       queue_layout_to_json, track_layout_from_json, track_layout_to_json)
from updraw.geometry import drawing_from_points
from updraw.subdivisions import rainbow_queue_layout, two_bend_drawing
from updraw.graph import topological_order

from _support import random_upward_track_layout


def test_edge_list_parsing():
    g = parse_graph("# comment\n0 1\n\n1 2  # trailing\n")
    assert g.n == 3 and g.arcs == ((0, 1), (1, 2))


def test_edge_list_errors_carry_line_numbers():
    with pytest.raises(GraphFormatError, match="line 2"):
        parse_graph("0 1\n1 x\n")
    with pytest.raises(GraphFormatError, match="line 1"):
        parse_graph("0 1 2\n")
    with pytest.raises(GraphFormatError, match="line 3"):
        parse_graph("0 1\n1 2\n2 2\n")


def test_json_parsing():
    g = parse_graph('{"n": 4, "arcs": [[0, 3]], "name": "x"}')
    assert g.n == 4 and g.m == 1
    with pytest.raises(GraphFormatError):
        parse_graph('{"n": 4}')
    with pytest.raises(GraphFormatError, match="line 1"):
        parse_graph('{"n": 4,')


def test_graph_roundtrip():
    g = generate("random_dag", n=12, m=20, seed=4)
    assert graph_from_json(json.loads(json.dumps(graph_to_json(g)))).arcs == g.arcs


def test_drawing_roundtrip_with_bends():
    g = generate("complete", n=6)
    d = two_bend_drawing(g, rainbow_queue_layout(g, topological_order(g)))
    obj = json.loads(json.dumps(drawing_to_json(d, upward=True)))
    back = drawing_from_json(obj)
    assert back.points == d.points and dict(back.bends) == dict(d.bends)
    assert obj["box"]["volume"] == obj["box"]["X"] * obj["box"]["Y"] * obj["box"]["Z"]


def test_drawing_bad_ids():
    with pytest.raises(GraphFormatError):
        drawing_from_json({"vertices": [{"id": 1, "x": 0, "y": 0, "z": 0}]})


def test_obj_export():
    g = generate("path", n=3)
    text = export_obj(g, drawing_from_points([(0, 0, 0), (1, 0, 1), (0, 0, 2)], {(0, 1): [(5, 5, 0)]}))
    lines = text.splitlines()
    assert sum(l.startswith("v ") for l in lines) == 4
    assert "l 1 4 2" in lines and "l 2 3" in lines


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 30), st.integers(1, 5), st.integers(0, 10**6))
def test_layout_roundtrips(n, t, seed):
    g, tl = random_upward_track_layout(n, t, seed)
    back = track_layout_from_json(json.loads(json.dumps(track_layout_to_json(tl))), n=n)
    assert back == tl
    ql = rainbow_queue_layout(g, topological_order(g))
    qb = queue_layout_from_json(json.loads(json.dumps(queue_layout_to_json(ql))))
    assert qb.order == ql.order and dict(qb.queue) == dict(ql.queue)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 20), st.integers(-10**12, 10**12))
def test_drawing_roundtrip_exact(n, shift):
    d = moment_curve_drawing(generate("path", n=n)).translated(shift, -shift, shift)
    assert drawing_from_json(json.loads(json.dumps(drawing_to_json(d)))).points == d.points
