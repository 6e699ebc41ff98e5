"""Few colours mean small drawings.

A proper c-colouring places each colour class on its own line and gives an
upward drawing in a c x 4c^2n x 4cn box. A strong star colouring (every
two-coloured subgraph is a star) turns straight into an upward track
layout, and hence into a drawing via the track construction.
"""
from __future__ import annotations

import math

from updraw import bounding_box, generate, greedy_colouring, strong_star_colouring, verify_drawing
from updraw.colourings import colouring_to_upward_tracks
from updraw.constructions import coloured_upward_drawing, long_path_drawing, track_drawing_general
from updraw.graph import degeneracy

for n, m in ((30, 45), (80, 160), (150, 300)):
    g = generate("random_dag", n=n, m=m, seed=n)
    col = greedy_colouring(g)
    d = coloured_upward_drawing(g, col)
    bb = bounding_box(d)
    c = col.c
    print(f"n={n} m={m}: {c} colours, box {bb.X}x{bb.Y}x{bb.Z} inside {c}x{4 * c * c * n}x{4 * c * n}: "
          f"{bb.fits(c, 4 * c * c * n, 4 * c * n)}, clean={verify_drawing(g, d, require_upward=True).ok}")

    lp = long_path_drawing(g)
    print(f"    long-path drawing height {bounding_box(lp).Z} (the longest path has that many vertices)")

    ss = strong_star_colouring(g)
    tl = colouring_to_upward_tracks(g, ss)
    dd = track_drawing_general(g, tl)
    d_, _ = degeneracy(g)
    print(f"    strong star: {ss.c} colours (reference 5*sqrt(2dm) = {5 * math.sqrt(2 * d_ * m):.0f}), "
          f"track drawing volume {bounding_box(dd).volume}")
