"""Every dag fits in a 2n x 2n x n box.

Sort the vertices topologically, put the i-th on the curve
(i^3 mod p, i^2 mod p, i) for a prime n < p <= 2n, and draw arcs straight.
No four points on that curve are coplanar, so no two arcs can cross, and
z = i makes every arc point upward.
"""
from __future__ import annotations

import time

from updraw import bounding_box, generate, moment_curve_drawing, verify_drawing

for n in (5, 20, 60, 120):
    g = generate("complete", n=n)
    t0 = time.perf_counter()
    d = moment_curve_drawing(g)
    report = verify_drawing(g, d, require_upward=True)
    bb = bounding_box(d)
    print(f"complete dag n={n:4d}  m={g.m:5d}  box {bb.X}x{bb.Y}x{bb.Z}  "
          f"volume/n^3={bb.volume / n**3:.2f}  clean={report.ok}  "
          f"({time.perf_counter() - t0:.2f}s)")

# swapping the x and z axes keeps the drawing crossing-free but loses upwardness
g = generate("complete", n=6)
d = moment_curve_drawing(g).swapped(0, 2)
print("axes swapped, still crossing-free:", verify_drawing(g, d).ok,
      "| upward:", verify_drawing(g, d, require_upward=True).ok)
