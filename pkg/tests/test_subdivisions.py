from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from updraw.errors import InvalidLayout, NotTopological, NotUpwardPlanar
from updraw.geometry import bounding_box, verify_drawing
from updraw.graph import Dag, VertexOrder, generate, topological_order
from updraw.layouts import QueueLayout, verify_queue_layout, verify_track_layout
from updraw.oracle import max_rainbow
from updraw.subdivisions import (bandwidth_of, four_track_subdivision, rainbow_queue_layout,
                                 two_bend_drawing, two_queue_subdivision,
                                 upward_planar_subdivision)

from _support import random_dag


def test_bandwidth_of():
    g = generate("nested", n=2)
    assert bandwidth_of(g, VertexOrder((0, 1, 2, 3))).b == 3
    with pytest.raises(NotTopological):
        bandwidth_of(g, VertexOrder((3, 2, 1, 0)))


def test_two_queue_small():
    g = Dag(4, ((0, 3), (0, 1), (1, 2), (2, 3)))
    cert = bandwidth_of(g, VertexOrder((0, 1, 2, 3)))
    s, ql, etl = two_queue_subdivision(g, cert)
    # gap 3 is odd: one division vertex at level 1
    assert s.per_arc_counts[(0, 3)] == 1
    assert s.contract().arc_set == g.arc_set
    assert verify_queue_layout(s.graph, ql).ok
    assert ql.num_queues <= 2
    assert verify_track_layout(s.graph, etl.layout, etl.arc_colour).ok


def test_subdivision_origin():
    g = Dag(3, ((0, 2), (0, 1), (1, 2)))
    s, _ = four_track_subdivision(g, bandwidth_of(g, VertexOrder((0, 1, 2))))
    assert s.origin(0) == ("vertex", 0)
    d = s.paths[(0, 2)][1]
    assert s.origin(d) == ("division", (0, 2), 1)
    with pytest.raises(KeyError):
        s.origin(99)


def test_rainbow_values():
    g3 = generate("nested", n=3)
    assert rainbow_queue_layout(g3, topological_order(g3)).num_queues == 3
    k4 = generate("complete", n=4)
    assert rainbow_queue_layout(k4, topological_order(k4)).num_queues == 2
    with pytest.raises(NotTopological):
        rainbow_queue_layout(k4, VertexOrder((3, 2, 1, 0)))


def test_upward_planar_examples():
    diamond = Dag(4, ((0, 1), (0, 2), (1, 3), (2, 3)))
    s, span, ql, tl = upward_planar_subdivision(diamond, [(0, 0), (-1, 1), (1, 1), (0, 2)])
    assert s.graph.n == 4
    arc = Dag(3, ((0, 2),))
    s, span, ql, tl = upward_planar_subdivision(arc, [(0, 0), (5, 1), (0, 2)])
    assert s.graph.n == 4 and ql.num_queues == 1 and tl.num_tracks <= 3
    assert verify_track_layout(s.graph, tl).ok


def test_upward_planar_rejects_bad_input():
    g = Dag(2, ((0, 1),))
    with pytest.raises(NotUpwardPlanar):
        upward_planar_subdivision(g, [(0, 1), (0, 0)])
    x = Dag(4, ((0, 3), (1, 2)))
    with pytest.raises(NotUpwardPlanar):
        upward_planar_subdivision(x, [(0, 0), (2, 0), (0, 2), (2, 2)])


def test_two_bend_rejects_bad_layout():
    g = generate("nested", n=2)
    bad = QueueLayout(VertexOrder((0, 1, 2, 3)), {a: 0 for a in g.arcs})
    with pytest.raises(InvalidLayout):
        two_bend_drawing(g, bad)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 25), st.integers(0, 10**6))
def test_rainbow_matches_bruteforce(n, seed):
    g = random_dag(n, seed)
    order = topological_order(g)
    ql = rainbow_queue_layout(g, order)
    assert verify_queue_layout(g, ql).ok
    assert ql.num_queues == max_rainbow(g, order.sequence)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(0, 10**6))
def test_two_queue_subdivision_property(n, seed):
    g = random_dag(n, seed)
    cert = bandwidth_of(g, topological_order(g))
    s, ql, etl = two_queue_subdivision(g, cert)
    assert s.contract().arc_set == g.arc_set
    assert verify_queue_layout(s.graph, ql).ok and ql.num_queues <= 2
    i_of = cert.order.position
    for (v, w), k in s.per_arc_counts.items():
        gap = i_of[w] - i_of[v]
        # parity-exact count: (gap-1)//2 pieces cut out
        assert k == max((gap - 1) // 2, 0)
    assert s.max_division <= max((cert.b - 1) // 2, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(0, 10**6))
def test_four_track_subdivision_property(n, seed):
    g = random_dag(n, seed)
    cert = bandwidth_of(g, topological_order(g))
    s, tl = four_track_subdivision(g, cert)
    assert s.contract().arc_set == g.arc_set
    assert tl.upward and tl.num_tracks <= 4
    assert verify_track_layout(s.graph, tl).ok
    assert s.max_division <= cert.b


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 14))
def test_two_bend_complete(n):
    g = generate("complete", n=n)
    ql = rainbow_queue_layout(g, topological_order(g))
    assert ql.num_queues <= n // 2
    d = two_bend_drawing(g, ql)
    assert verify_drawing(g, d, require_upward=True).ok
    bb = bounding_box(d)
    assert bb.fits(n, 2, 2 * n)
    assert bb.volume <= 4 * n * n


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10**6))
def test_upward_planar_from_layered_points(n, seed):
    # a path zig-zagging upward is always upward planar
    rng = np.random.default_rng(seed)
    ys = sorted(rng.choice(50, size=n, replace=False))
    pts = [(int(rng.integers(-5, 6)), int(y)) for y in ys]
    g = Dag(n, tuple((k, k + 1) for k in range(n - 1)) + ((0, n - 1),))
    try:
        s, span, ql, tl = upward_planar_subdivision(g, pts)
    except NotUpwardPlanar:
        return
    assert all(span.track[w] - span.track[v] == 1 for v, w in s.graph.arcs)
    assert ql.num_queues <= 1 and tl.num_tracks <= 3
    assert verify_track_layout(s.graph, tl).ok
    assert verify_queue_layout(s.graph, ql).ok
