"""Trees and caterpillars drawn in boxes of constant width.

A tree gets integer tracks so that every arc climbs one or two of them.
Folding tracks modulo 5 keeps the layout valid, and a 5-track layout can
be drawn in a 4 x 4 x (7/5)n box. Caterpillars do better: every arc climbs
exactly one track, three tracks suffice and the box is 2 x 2 x n.
"""
from __future__ import annotations

import math

from updraw import bounding_box, generate, verify_drawing, wrap
from updraw.constructions import (caterpillar_span1_layout, track_drawing_3, track_drawing_5,
                                  tree_span2_layout)
from updraw.oracle import exact_upward_track_number, has_unit_span_layout

print("trees")
for n, seed in ((50, 0), (500, 1), (2000, 2)):
    g = generate("random_tree", n=n, seed=seed)
    ql, tl = wrap(g, tree_span2_layout(g), 2)
    d = track_drawing_5(g, tl)
    bb = bounding_box(d)
    print(f"  n={n:5d}: {tl.num_tracks} tracks, {ql.num_queues} queues, box {bb.X}x{bb.Y}x{bb.Z} "
          f"(limit 4x4x{math.ceil(7 * n / 5)}), volume/n={bb.volume / n:.1f}, "
          f"clean={verify_drawing(g, d, require_upward=True).ok}")

print("caterpillars")
for n, seed in ((50, 0), (2000, 1)):
    g = generate("random_caterpillar", n=n, seed=seed)
    ql, tl = wrap(g, caterpillar_span1_layout(g), 1)
    d = track_drawing_3(g, tl)
    bb = bounding_box(d)
    print(f"  n={n:5d}: {tl.num_tracks} tracks, {ql.num_queues} queue, box {bb.X}x{bb.Y}x{bb.Z}")

# the smallest tree that is not a caterpillar: the unit-span trick breaks,
# yet three tracks remain enough
claw = generate("two_claw")
print("2-claw: unit-span layout exists?", has_unit_span_layout(claw),
      "| exact upward track number:", exact_upward_track_number(claw))
