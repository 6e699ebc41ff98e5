"""Trading straight arcs for a few extra points.

Subdividing each arc a few times buys a 2-queue or a 4-track layout for any
dag, with the number of division vertices governed by the bandwidth of a
topological order. Bending arcs instead gives the complete dag a drawing
with two bends per arc in a box of volume at most 4n^2.
"""
from __future__ import annotations

from updraw import bounding_box, generate, topological_order, verify_drawing
from updraw.layouts import verify_queue_layout, verify_track_layout
from updraw.oracle import exact_directed_bandwidth
from updraw.subdivisions import (bandwidth_of, four_track_subdivision, rainbow_queue_layout,
                                 two_bend_drawing, two_queue_subdivision)

g = generate("random_dag", n=12, m=30, seed=4)
greedy = bandwidth_of(g, topological_order(g))
best = exact_directed_bandwidth(g)
print(f"random dag n={g.n} m={g.m}: bandwidth {greedy.b} for the default order, {best.b} optimal")
for cert, label in ((greedy, "default"), (best, "optimal")):
    s, ql, _ = two_queue_subdivision(g, cert)
    s4, tl = four_track_subdivision(g, cert)
    print(f"  {label:8s} 2-queue: +{s.graph.n - g.n} vertices, <= {s.max_division} per arc, "
          f"valid={verify_queue_layout(s.graph, ql).ok}"
          f" | 4-track: +{s4.graph.n - g.n} vertices, {tl.num_tracks} tracks, "
          f"valid={verify_track_layout(s4.graph, tl).ok}")

for n in (4, 8, 12):
    k = generate("complete", n=n)
    ql = rainbow_queue_layout(k, topological_order(k))
    d = two_bend_drawing(k, ql)
    bb = bounding_box(d)
    print(f"complete n={n:2d}: {ql.num_queues} queues, box {bb.X}x{bb.Y}x{bb.Z}, "
          f"volume {bb.volume} <= {4 * n * n}, clean={verify_drawing(k, d, require_upward=True).ok}")
