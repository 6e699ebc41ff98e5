"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary lists a
PASS/FAIL line per criterion.
"""
from __future__ import annotations

import math
import time
from itertools import product

import numpy as np
import pytest

from updraw.colourings import (colouring_to_upward_tracks, greedy_colouring, is_strong_star,
                               strong_star_colouring)
from updraw.constructions import (caterpillar_span1_layout, coloured_upward_drawing,
                                  knprime_track_layout, long_path_drawing, moment_curve_drawing,
                                  track_drawing_3, track_drawing_4, track_drawing_5,
                                  tree_span2_layout)
from updraw.geometry import (Drawing3D, GridPoint, bounding_box, intersect_improperly_many,
                             verify_drawing)
from updraw.graph import Dag, generate, is_tree, random_topological_order, topological_order
from updraw.layouts import (TrackLayout, drawing_to_track_layout, verify_queue_layout,
                            verify_track_layout, wrap)
from updraw.oracle import (exact_upward_queue_number, exact_upward_track_number,
                           has_unit_span_layout, segments_cross_by_orientation_many)
from updraw.subdivisions import (bandwidth_of, four_track_subdivision, rainbow_queue_layout,
                                 two_bend_drawing, two_queue_subdivision)
from updraw.errors import NotACaterpillar

from _support import all_dags, random_dag, random_upward_track_layout


def longest_path_vertices(g: Dag) -> int:
    """Vertices on a longest directed path, by memoised DFS (no shared code)."""
    memo: dict[int, int] = {}

    def down(v: int) -> int:
        if v not in memo:
            memo[v] = 1 + max((down(w) for w in g.succ[v]), default=0)
        return memo[v]

    return max((down(v) for v in range(g.n)), default=0)


@pytest.mark.criterion("1")
def test_moment_curve_complete_dags(report):
    start = time.perf_counter()
    worst = 0.0
    for n in (5, 10, 25, 50, 100, 150):
        g = generate("complete", n=n)
        d = moment_curve_drawing(g)
        assert verify_drawing(g, d, require_upward=True).ok
        bb = bounding_box(d)
        assert bb.fits(2 * n, 2 * n, n)
        assert bb.volume <= 4 * n ** 3
        worst = max(worst, bb.volume / n ** 3)
    elapsed = time.perf_counter() - start
    report(f"n up to 150 verified, worst volume {worst:.2f} n^3, {elapsed:.1f}s")
    assert elapsed < 10


@pytest.mark.criterion("2")
def test_coloured_upward_drawings(report):
    rng = np.random.default_rng(2)
    done, seed, max_c = 0, 0, 0
    while done < 500:
        seed += 1
        n = int(rng.integers(2, 60))
        g = random_dag(n, seed, density=float(rng.uniform(0.02, 0.25)))
        col = greedy_colouring(g)
        c = col.c
        if c > 6:
            continue
        d = coloured_upward_drawing(g, col)
        assert verify_drawing(g, d, require_upward=True).ok, seed
        assert bounding_box(d).fits(c, 4 * c * c * n, 4 * c * n), seed
        done += 1
        max_c = max(max_c, c)
    report(f"500 dags (colours up to {max_c}) clean and inside c x 4c^2n x 4cn")


@pytest.mark.criterion("3")
def test_long_path_height_exact(report):
    rng = np.random.default_rng(3)
    for k in range(200):
        n = int(rng.integers(1, 60))
        g = random_dag(n, 1000 + k)
        ell = longest_path_vertices(g)
        d = long_path_drawing(g)
        assert verify_drawing(g, d, require_upward=True).ok
        Z = bounding_box(d).Z
        assert Z <= ell
        # lower bound: z strictly rises along every path in any upward drawing
        assert Z >= ell
        other = moment_curve_drawing(g)
        assert bounding_box(other).Z >= ell
    report("200 dags: Z = longest path exactly, verifier-clean")


@pytest.mark.criterion("4")
def test_tree_pipeline(report):
    rng = np.random.default_rng(4)
    worst = 0.0
    for k in range(300):
        n = int(rng.integers(2, 2001))
        g = generate("random_tree", n=n, seed=k)
        span = tree_span2_layout(g)
        assert all(abs(span.track[w] - span.track[v]) in (1, 2) for v, w in g.arcs)
        _, tl = wrap(g, span, 2)
        assert tl.num_tracks <= 5
        d = track_drawing_5(g, tl)
        bb = bounding_box(d)
        assert bb.fits(4, 4, math.ceil(7 * n / 5)), k
        assert bb.volume <= 22.4 * n + 16
        assert verify_drawing(g, d, require_upward=True).ok, k
        worst = max(worst, bb.volume / n)
    report(f"300 trees, <=5 tracks, worst volume {worst:.2f} n")


@pytest.mark.criterion("5")
def test_caterpillar_pipeline(report):
    rng = np.random.default_rng(5)
    for k in range(300):
        n = int(rng.integers(2, 2001))
        g = generate("random_caterpillar", n=n, seed=k)
        ql, tl = wrap(g, caterpillar_span1_layout(g), 1)
        assert tl.num_tracks <= 3 and ql.num_queues <= 1
        assert verify_queue_layout(g, ql).ok
        d = track_drawing_3(g, tl)
        assert bounding_box(d).fits(2, 2, n)
        assert verify_drawing(g, d, require_upward=True).ok
    report("300 caterpillars: 3 tracks, 1 queue, inside 2 x 2 x n")


@pytest.mark.criterion("6")
def test_four_track_parity_drawing(report):
    rng = np.random.default_rng(6)
    arcs = 0
    for k in range(200):
        n = int(rng.integers(1, 501))
        g, tl = random_upward_track_layout(n, 4, seed=6000 + k)
        assert verify_track_layout(g, tl).ok
        d = track_drawing_4(g, tl)
        assert bounding_box(d).fits(2, 2, 2 * n)
        assert verify_drawing(g, d, require_upward=True).ok
        arcs += g.m
    report(f"200 random 4-track layouts ({arcs} arcs): inside 2 x 2 x 2n, no crossings")


@pytest.mark.criterion("7")
def test_subdivisions(report):
    rng = np.random.default_rng(7)
    for k in range(100):
        n = int(rng.integers(2, 41))
        g = random_dag(n, 7000 + k)
        cert = bandwidth_of(g, topological_order(g))
        b = cert.b
        pos = cert.order.position
        s, ql, _ = two_queue_subdivision(g, cert)
        for (v, w), cnt in s.per_arc_counts.items():
            assert cnt == max((pos[w] - pos[v] - 1) // 2, 0)
        assert s.max_division <= max((b - 1) // 2, 0)
        assert verify_queue_layout(s.graph, ql).ok and ql.num_queues <= 2
        s4, tl = four_track_subdivision(g, cert)
        assert s4.max_division <= b
        assert tl.upward and tl.num_tracks <= 4
        assert verify_track_layout(s4.graph, tl).ok
    report("100 dags: 2-queue and 4-track subdivisions valid within bandwidth bounds")


@pytest.mark.criterion("8")
def test_two_bend_complete(report):
    for n in range(4, 13):
        g = generate("complete", n=n)
        ql = rainbow_queue_layout(g, topological_order(g))
        assert ql.num_queues <= n // 2
        d = two_bend_drawing(g, ql)
        bb = bounding_box(d)
        assert bb.fits(n, 2, 2 * n) and bb.volume <= 4 * n * n
        assert verify_drawing(g, d, require_upward=True).ok
    report("complete n=4..12: <= n/2 queues, inside n x 2 x 2n")


@pytest.mark.criterion("9a")
def test_catalogue_against_oracle(report):
    start = time.perf_counter()
    count = 0
    for n in range(1, 6):
        for g in all_dags(n):
            count += 1
            utn = exact_upward_track_number(g)
            uqn = exact_upward_queue_number(g)
            tracks = [colouring_to_upward_tracks(g, strong_star_colouring(g, v)).num_tracks
                      for v in ("sqrt_dm", "m_two_thirds")]
            tracks.append(drawing_to_track_layout(g, moment_curve_drawing(g)).num_tracks)
            queues = [rainbow_queue_layout(g, topological_order(g)).num_queues]
            if is_tree(g):
                ql, tl = wrap(g, tree_span2_layout(g), 2)
                tracks.append(tl.num_tracks)
                queues.append(ql.num_queues)
                try:
                    ql, tl = wrap(g, caterpillar_span1_layout(g), 1)
                    tracks.append(tl.num_tracks)
                    queues.append(ql.num_queues)
                except NotACaterpillar:
                    pass
            assert all(t >= utn for t in tracks), g.arcs
            assert all(q >= uqn for q in queues), g.arcs
    elapsed = time.perf_counter() - start
    report(f"{count} dags with n <= 5: every construction at or above the optimum, {elapsed:.1f}s")
    assert count == 1 + 2 + 6 + 31 + 302
    assert elapsed < 60


@pytest.mark.criterion("9b")
def test_nested_example_queue_numbers(report):
    values = [exact_upward_queue_number(generate("nested", n=n)) for n in (2, 3)]
    report(f"uqn(G2), uqn(G3) = {values}")
    assert values == [2, 3]


@pytest.mark.criterion("9c")
def test_two_claw_has_no_unit_span_layout(report):
    g = generate("two_claw")
    assert not has_unit_span_layout(g)
    utn = exact_upward_track_number(g)
    report(f"directed 2-claw: no layout with every arc climbing one track; utn = {utn}")


@pytest.mark.criterion("9d")
@pytest.mark.xfail(strict=True, reason="exhaustive search: every orientation of the 2-claw "
                                        "has an upward 3-track layout")
def test_some_tree_orientation_needs_four_tracks(report):
    claw = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]
    best = 0
    for flips in product((False, True), repeat=len(claw)):
        g = Dag(7, tuple((w, v) if f else (v, w) for (v, w), f in zip(claw, flips)))
        best = max(best, exact_upward_track_number(g))
    report(f"largest utn over all 64 orientations of the 2-claw: {best}")
    assert best >= 4


@pytest.mark.criterion("10")
def test_knprime_layouts(report):
    counts = []
    for n in (8, 27, 64):
        p = round(n ** (1 / 3))
        g, tl = knprime_track_layout(n)
        assert verify_track_layout(g, tl.with_upward(False)).ok
        assert tl.num_tracks <= p * p + 1 + p * (p - 1)
        counts.append(tl.num_tracks)
    report(f"track counts {counts} for n = 8, 27, 64; no X-crossings")


@pytest.mark.criterion("11")
def test_strong_star_tracks(report):
    rng = np.random.default_rng(11)
    ratios = []
    for k in range(500):
        n = int(rng.integers(2, 81))
        g = random_dag(n, 11000 + k, density=float(rng.uniform(0.02, 0.3)))
        for variant in ("sqrt_dm", "m_two_thirds"):
            col = strong_star_colouring(g, variant)
            assert is_strong_star(g, col.colour)
            for _ in range(10):
                relabel = rng.permutation(max(col.c, 1))
                order = random_topological_order(g, rng)
                tl = colouring_to_upward_tracks(g, col, order)
                tl = TrackLayout(tuple(int(relabel[t]) for t in tl.track), tl.rank, upward=True)
                assert verify_track_layout(g, tl).ok
            if g.m:
                ratios.append(col.c / math.sqrt(g.m))
    report(f"1000 colourings certified; colours / sqrt(m) median {np.median(ratios):.2f}, "
           f"max {max(ratios):.2f}")


def _random_pairs(rng, k, lo, hi):
    a0 = rng.integers(lo, hi + 1, size=(k, 3))
    a1 = rng.integers(lo, hi + 1, size=(k, 3))
    b0 = rng.integers(lo, hi + 1, size=(k, 3))
    b1 = rng.integers(lo, hi + 1, size=(k, 3))
    return a0, a1, b0, b1


@pytest.mark.criterion("12")
def test_geometry_self_consistency(report):
    rng = np.random.default_rng(12)
    a0, a1, b0, b1 = _random_pairs(rng, 10**6, -1000, 1000)
    # random pairs almost never touch, so add coplanar and endpoint-sharing ones
    t = rng.integers(-1000, 1000, size=(10**5, 3))
    c0, c1, d0, d1 = _random_pairs(rng, 10**5, -3, 3)
    for arr in (c0, c1, d0, d1):
        arr[: 5 * 10**4, 2] = 0  # half of them coplanar
    c0 = np.concatenate([c0, t])
    c1 = np.concatenate([c1, t + rng.integers(-3, 4, size=(10**5, 3))])
    d0 = np.concatenate([d0, t])
    d1 = np.concatenate([d1, t + rng.integers(-3, 4, size=(10**5, 3))])
    A0, A1, B0, B1 = (np.concatenate(x) for x in ((a0, c0), (a1, c1), (b0, d0), (b1, d1)))
    ok = ~(np.all(A0 == A1, axis=1) | np.all(B0 == B1, axis=1))
    A0, A1, B0, B1 = A0[ok], A1[ok], B0[ok], B1[ok]
    first = intersect_improperly_many(A0, A1, B0, B1)
    second = segments_cross_by_orientation_many(A0, A1, B0, B1)
    mismatches = int((first != second).sum())
    hits = int(first.sum())

    flips = 0
    for k in range(1000):
        n = int(rng.integers(2, 12))
        g = random_dag(n, 12000 + k)
        pts = rng.integers(-4, 5, size=(n, 3))
        d = Drawing3D(tuple(GridPoint(*map(int, p)) for p in pts))
        shift = [int(x) for x in rng.integers(-10**6, 10**6, size=3)]
        before = verify_drawing(g, d).counts()
        after = verify_drawing(g, d.translated(*shift)).counts()
        flips += before != after
    report(f"{len(A0)} pairs, {hits} intersecting, {mismatches} disagreements; "
           f"{flips} of 1000 drawings changed under translation")
    assert mismatches == 0 and flips == 0
