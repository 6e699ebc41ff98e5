"""Subdivisions with few queues or tracks, and bent upward drawings.

Original vertices keep their ids; division vertices are appended after
them. Positions ``i, j`` below are 0-based positions in the caller's
topological order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InvalidLayout, NotTopological, NotUpwardPlanar
from .geometry import Drawing3D, GridPoint, verify_drawing
from .graph import Arc, Dag, VertexOrder
from .layouts import (EdgeColouredTrackLayout, QueueLayout, TrackLayout,
                      verify_queue_layout, wrap)


@dataclass(frozen=True)
class Subdivision:
    """A subdivided graph plus, for each original arc, its replacement path."""

    graph: Dag
    n_original: int
    paths: Mapping[Arc, tuple[int, ...]] = field(default_factory=dict)

    @property
    def per_arc_counts(self) -> dict[Arc, int]:
        return {a: len(p) - 2 for a, p in self.paths.items()}

    @property
    def max_division(self) -> int:
        return max(self.per_arc_counts.values(), default=0)

    def origin(self, v: int) -> tuple:
        """``("vertex", v)`` or ``("division", arc, k)`` with ``k`` the
        1-based position of ``v`` inside the arc's path."""
        if v < self.n_original:
            return ("vertex", v)
        for arc, path in self.paths.items():
            if v in path:
                return ("division", arc, path.index(v))
        raise KeyError(v)

    def contract(self) -> Dag:
        """Collapse every path back to a single arc."""
        for arc, path in self.paths.items():
            if path[0] != arc[0] or path[-1] != arc[1]:
                raise ValueError(f"path for {arc} does not join its endpoints")
            for a, b in zip(path, path[1:]):
                if not self.graph.has_arc(a, b):
                    raise ValueError(f"path for {arc} uses missing arc {(a, b)}")
        return Dag(self.n_original, tuple(self.paths))


def _build(n: int, arc_levels: dict[Arc, list], key_of) -> tuple[Dag, dict[Arc, tuple[int, ...]], dict]:
    """Create division vertices for ``arc_levels[arc] = [level, ...]``.

    Ids are handed out in order of ``key_of(arc, level)``. Returns the new
    graph, the path of each arc and a map from (arc, level) to vertex id.
    """
    items = sorted(((key_of(a, lv), a, lv) for a, lvs in arc_levels.items() for lv in lvs))
    vid = {}
    for k, (_, a, lv) in enumerate(items):
        vid[(a, lv)] = n + k
    paths = {}
    arcs = []
    for a, lvs in arc_levels.items():
        path = (a[0], *(vid[(a, lv)] for lv in lvs), a[1])
        paths[a] = path
        arcs.extend(zip(path, path[1:]))
    return Dag(n + len(items), tuple(arcs)), paths, vid


# --------------------------------------------------------------------------
# bandwidth
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BandwidthCertificate:
    order: VertexOrder
    b: int


def bandwidth_of(g: Dag, order: VertexOrder) -> BandwidthCertificate:
    if not order.is_topological_for(g):
        raise NotTopological("order is not topological for the graph")
    pos = order.position
    b = max((pos[w] - pos[v] for v, w in g.arcs), default=0)
    return BandwidthCertificate(VertexOrder(order.sequence, topological=True), b)


# --------------------------------------------------------------------------
# 2-queue subdivision
# --------------------------------------------------------------------------

def _two_queue_levels(i: int, j: int) -> list[int]:
    start = i + 2 if (j - i) % 2 == 0 else i + 1
    return list(range(start, j - 1, 2))


def two_queue_subdivision(g: Dag, cert: BandwidthCertificate
                          ) -> tuple[Subdivision, QueueLayout, EdgeColouredTrackLayout]:
    """Subdivide so the order (V_0, V_1, ...) gives an upward 2-queue layout.

    An arc from position i to j is broken at levels i+2, i+4, ..., j-2
    (even gap) or i+1, i+3, ..., j-2 (odd gap), so every piece climbs one
    or two levels. Level l holds v_l first, then its division vertices
    ordered by the position of their lower neighbour, ties by j. Arcs
    into original vertices form queue 1, arcs into division vertices
    queue 0.
    """
    bandwidth_of(g, cert.order)
    seq = cert.order.sequence
    pos = cert.order.position
    n = g.n
    levels = {(v, w): _two_queue_levels(pos[v], pos[w]) for v, w in g.arcs}
    sub_g, paths, vid = _build(n, levels, lambda a, lv: (pos[a[0]], pos[a[1]], lv))

    level_of = [0] * sub_g.n
    head_pos = [0] * sub_g.n
    for v in range(n):
        level_of[v] = pos[v]
    for (a, lv), x in vid.items():
        level_of[x] = lv
        head_pos[x] = pos[a[1]]
    members: list[list[int]] = [[] for _ in range(n)]
    for x in range(n, sub_g.n):
        members[level_of[x]].append(x)

    order: list[int] = []
    gpos = [0] * sub_g.n
    tracks: dict[int, list[int]] = {}
    for lv in range(n):
        rest = sorted(members[lv], key=lambda x: (gpos[sub_g.pred[x][0]], head_pos[x]))
        track = [seq[lv], *rest]
        for x in track:
            gpos[x] = len(order)
            order.append(x)
        tracks[lv] = track

    colour = {}
    for v, w in sub_g.arcs:
        # every arc into an original vertex is green, including v_{l-1} -> v_l
        colour[(v, w)] = 1 if w < n else 0
    tl = TrackLayout.from_tracks(tracks, n=sub_g.n, upward=True)
    ql = QueueLayout(VertexOrder(tuple(order), topological=True), colour, upward=True)
    return Subdivision(sub_g, n, paths), ql, EdgeColouredTrackLayout(tl, colour)


# --------------------------------------------------------------------------
# 4-track subdivision
# --------------------------------------------------------------------------

def four_track_subdivision(g: Dag, cert: BandwidthCertificate) -> tuple[Subdivision, TrackLayout]:
    """Subdivide so the result has an upward layout on tracks X0, X1, X2, Y.

    An arc from position i to j >= i+2 becomes v_i, x(i+1), ..., x(j-1),
    y, v_j. Level l holds v_l then x(i, j, l) by decreasing i, ties by
    increasing j; levels are wrapped modulo 3 into X0..X2. Track Y (id 3)
    holds the y vertices ordered by increasing j, ties by decreasing i.
    """
    bandwidth_of(g, cert.order)
    seq = cert.order.sequence
    pos = cert.order.position
    n = g.n
    levels: dict[Arc, list] = {}
    for v, w in g.arcs:
        i, j = pos[v], pos[w]
        levels[(v, w)] = list(range(i + 1, j)) + ["y"] if j >= i + 2 else []
    # y sorts after every x level of its arc
    sub_g, paths, vid = _build(
        n, levels, lambda a, lv: (pos[a[0]], pos[a[1]], pos[a[1]] if lv == "y" else lv))

    per_level: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    ys: list[tuple[int, int, int]] = []
    for (a, lv), x in vid.items():
        i, j = pos[a[0]], pos[a[1]]
        if lv == "y":
            ys.append((j, -i, x))
        else:
            per_level[lv].append((-i, j, x))
    tracks: dict[int, list[int]] = {0: [], 1: [], 2: []}
    for lv in range(n):
        tracks[lv % 3].append(seq[lv])
        tracks[lv % 3].extend(x for *_, x in sorted(per_level[lv]))
    if ys:
        tracks[3] = [x for *_, x in sorted(ys)]
    tracks = {t: vs for t, vs in tracks.items() if vs}
    tl = TrackLayout.from_tracks(tracks, n=sub_g.n, upward=True)
    return Subdivision(sub_g, n, paths), tl


# --------------------------------------------------------------------------
# upward planar drawings
# --------------------------------------------------------------------------

def upward_planar_subdivision(g: Dag, points2d: Sequence[Sequence[int]]
                              ) -> tuple[Subdivision, TrackLayout, QueueLayout, TrackLayout]:
    """Cut every arc where it crosses the horizontal line of a vertex.

    Returns the subdivision, its span-1 layout (one track per distinct
    vertex y-level, ordered by x), the 1-queue layout and the 3-track
    layout obtained by wrapping.
    """
    if len(points2d) != g.n:
        raise NotUpwardPlanar(f"expected {g.n} points, got {len(points2d)}")
    pts = [(int(p[0]), int(p[1])) for p in points2d]
    for v, w in g.arcs:
        if pts[v][1] >= pts[w][1]:
            raise NotUpwardPlanar(f"arc {(v, w)} is not drawn strictly upward")
    flat = Drawing3D(tuple(GridPoint(x, y, 0) for x, y in pts))
    report = verify_drawing(g, flat)
    if not report.ok:
        raise NotUpwardPlanar(f"drawing is not crossing-free: {report.counts()}")

    ys = sorted({y for _, y in pts})
    level = {y: k for k, y in enumerate(ys)}
    levels: dict[Arc, list[int]] = {}
    for v, w in g.arcs:
        levels[(v, w)] = list(range(level[pts[v][1]] + 1, level[pts[w][1]]))
    sub_g, paths, vid = _build(g.n, levels, lambda a, lv: (a[0], a[1], lv))

    track = [0] * sub_g.n
    xpos: list[Fraction] = [Fraction(0)] * sub_g.n
    for v, (x, y) in enumerate(pts):
        track[v] = level[y]
        xpos[v] = Fraction(x)
    for ((v, w), lv), d in vid.items():
        (x0, y0), (x1, y1) = pts[v], pts[w]
        y = ys[lv]
        track[d] = lv
        xpos[d] = x0 + Fraction((x1 - x0) * (y - y0), y1 - y0)
    tracks: dict[int, list[int]] = {}
    for v in sorted(range(sub_g.n), key=lambda v: (xpos[v], v)):
        tracks.setdefault(track[v], []).append(v)
    span1 = TrackLayout.from_tracks(tracks, n=sub_g.n)
    ql, three = wrap(sub_g, span1, 1)
    return Subdivision(sub_g, g.n, paths), span1, ql, three


# --------------------------------------------------------------------------
# queue layouts and 2-bend drawings
# --------------------------------------------------------------------------

class _MaxFenwick:
    """Prefix maxima over positions 0..size-1."""

    def __init__(self, size: int) -> None:
        self.tree = [0] * (size + 1)

    def update(self, i: int, value: int) -> None:
        i += 1
        while i < len(self.tree):
            if self.tree[i] < value:
                self.tree[i] = value
            i += i & -i

    def query(self, i: int) -> int:
        """Maximum over positions 0..i-1."""
        out = 0
        while i > 0:
            out = max(out, self.tree[i])
            i -= i & -i
        return out


def rainbow_queue_layout(g: Dag, order: VertexOrder) -> QueueLayout:
    """Put each arc in queue (nesting depth - 1) under ``order``.

    The depth of an arc is the length of the longest chain of arcs that
    strictly enclose it, plus one, so the queue count equals the largest
    rainbow.
    """
    if not order.is_topological_for(g):
        raise NotTopological("order is not topological for the graph")
    pos = order.position
    n = g.n
    spans = sorted(((pos[v], pos[w], (v, w)) for v, w in g.arcs), key=lambda s: (s[0], -s[1]))
    # index right endpoints in reverse so "right > r" is a prefix query
    fen = _MaxFenwick(n)
    depth: dict[Arc, int] = {}
    k = 0
    while k < len(spans):
        group_end = k
        while group_end < len(spans) and spans[group_end][0] == spans[k][0]:
            group_end += 1
        group = spans[k:group_end]
        for left, right, arc in group:
            depth[arc] = fen.query(n - 1 - right) + 1
        for left, right, arc in group:
            fen.update(n - 1 - right, depth[arc])
        k = group_end
    queue = {a: d - 1 for a, d in depth.items()}
    return QueueLayout(VertexOrder(order.sequence, topological=True), queue, upward=True)


def two_bend_drawing(g: Dag, ql: QueueLayout) -> Drawing3D:
    """Vertices on the z-axis at even heights; long arcs bend twice.

    With 1-based positions i < j, an arc in queue l with j >= i+2 runs
    (0,0,2i) -> (2l,1,i+j) -> (2l+1,1,i+j+1) -> (0,0,2j). Queue ids are
    first renumbered to 0..k-1.
    """
    up = QueueLayout(ql.order, ql.queue, upward=True)
    report = verify_queue_layout(g, up)
    if not report.ok:
        raise InvalidLayout(f"not an upward queue layout: {report.counts()}")
    qid = {q: k for k, q in enumerate(sorted(set(ql.queue.values())))}
    pos = ql.order.position
    pts = tuple(GridPoint(0, 0, 2 * (pos[v] + 1)) for v in range(g.n))
    bends = {}
    for v, w in g.arcs:
        i, j = pos[v] + 1, pos[w] + 1
        if j >= i + 2:
            q = qid[ql.queue[(v, w)]]
            bends[(v, w)] = (GridPoint(2 * q, 1, i + j), GridPoint(2 * q + 1, 1, i + j + 1))
    return Drawing3D(pts, bends)
