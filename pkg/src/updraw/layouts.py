"""Track layouts, queue layouts, their checkers, and conversions between them."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import (InvalidDrawing, InvalidLayout, MissingAssignment, NotOneQueue,
                     SpanViolation)
from .geometry import Drawing3D, VerifyReport, Violation, verify_drawing
from .graph import Arc, Dag, VertexOrder, find_cycle, topological_order


@dataclass(frozen=True)
class TrackLayout:
    """Per-vertex track id (any integer) and 0-based rank inside the track."""

    track: tuple[int, ...]
    rank: tuple[int, ...]
    upward: bool = False

    def __post_init__(self) -> None:
        track = tuple(int(t) for t in self.track)
        rank = tuple(int(r) for r in self.rank)
        if len(track) != len(rank):
            raise InvalidLayout("track and rank must have the same length")
        object.__setattr__(self, "track", track)
        object.__setattr__(self, "rank", rank)
        sizes: dict[int, list[int]] = {}
        for t, r in zip(track, rank):
            sizes.setdefault(t, []).append(r)
        for t, rs in sizes.items():
            if sorted(rs) != list(range(len(rs))):
                raise InvalidLayout(f"ranks in track {t} are not 0..{len(rs) - 1}")

    @classmethod
    def from_tracks(cls, tracks: Mapping[int, Sequence[int]] | Sequence[Sequence[int]],
                    n: int | None = None, upward: bool = False) -> TrackLayout:
        """Build from ordered vertex lists, keyed by track id (or by list index)."""
        items = tracks.items() if isinstance(tracks, Mapping) else enumerate(tracks)
        placed: dict[int, tuple[int, int]] = {}
        for t, verts in items:
            for r, v in enumerate(verts):
                if v in placed:
                    raise InvalidLayout(f"vertex {v} appears twice")
                placed[int(v)] = (int(t), r)
        n = len(placed) if n is None else n
        if sorted(placed) != list(range(n)):
            raise MissingAssignment("every vertex 0..n-1 must be placed exactly once")
        return cls(tuple(placed[v][0] for v in range(n)),
                   tuple(placed[v][1] for v in range(n)), upward)

    @cached_property
    def tracks(self) -> dict[int, tuple[int, ...]]:
        """Track id -> vertices in rank order, sorted by track id."""
        out: dict[int, list[int]] = {}
        for v, t in enumerate(self.track):
            out.setdefault(t, []).append(v)
        return {t: tuple(sorted(vs, key=self.rank.__getitem__)) for t, vs in sorted(out.items())}

    @property
    def num_tracks(self) -> int:
        return len(self.tracks)

    def renumbered(self, start: int = 0) -> TrackLayout:
        """Same layout with track ids replaced by ``start, start+1, ...``."""
        ids = {t: start + k for k, t in enumerate(self.tracks)}
        return TrackLayout(tuple(ids[t] for t in self.track), self.rank, self.upward)

    def with_upward(self, upward: bool) -> TrackLayout:
        return TrackLayout(self.track, self.rank, upward)

    def successor_arcs(self) -> list[Arc]:
        return [(vs[k], vs[k + 1]) for vs in self.tracks.values() for k in range(len(vs) - 1)]

    def plus_graph(self, g: Dag) -> tuple[int, list[Arc]]:
        """Vertex count and arc list of ``g`` plus the in-track successor arcs."""
        return g.n, list(g.arcs) + self.successor_arcs()


@dataclass(frozen=True)
class EdgeColouredTrackLayout:
    layout: TrackLayout
    arc_colour: Mapping[Arc, int] = field(default_factory=dict)

    @property
    def num_colours(self) -> int:
        return len(set(self.arc_colour.values()))


@dataclass(frozen=True)
class QueueLayout:
    order: VertexOrder
    queue: Mapping[Arc, int]
    upward: bool = False

    @property
    def num_queues(self) -> int:
        return len(set(self.queue.values()))


def span(tl: TrackLayout, arc: Arc) -> int:
    return abs(tl.track[arc[1]] - tl.track[arc[0]])


def track_order(tl: TrackLayout) -> VertexOrder:
    """The ordering (..., V_-1, V_0, V_1, ...): by track id, then rank."""
    seq = sorted(range(len(tl.track)), key=lambda v: (tl.track[v], tl.rank[v]))
    return VertexOrder(tuple(seq))


# --------------------------------------------------------------------------
# checkers
# --------------------------------------------------------------------------

def strict_inversions(a: Sequence[int], b: Sequence[int]) -> list[tuple[int, int]]:
    """All index pairs ``(i, j)`` with ``a[i] < a[j]`` and ``b[i] > b[j]``.

    Runs an O(k log k) existence test first, so inputs with no inversion
    (the common case for valid layouts) never pay the quadratic cost.
    """
    k = len(a)
    if k < 2:
        return []
    A = np.asarray(a, dtype=np.int64)
    B = np.asarray(b, dtype=np.int64)
    idx = np.lexsort((B, A))
    As, Bs = A[idx], B[idx]
    # running max of b over entries with strictly smaller a
    new_group = np.concatenate(([True], As[1:] != As[:-1]))
    group_start = np.maximum.accumulate(np.where(new_group, np.arange(k), 0))
    run_max = np.maximum.accumulate(Bs)
    prev_max = np.where(group_start > 0, run_max[np.maximum(group_start - 1, 0)], np.iinfo(np.int64).min)
    if not (prev_max > Bs).any():
        return []
    out = []
    for i in range(k):
        js = np.flatnonzero((A[i] < A) & (B[i] > B))
        out.extend((i, int(j)) for j in js)
    return out


def _x_crossings(g: Dag, tl: TrackLayout, arcs: Sequence[Arc]) -> list[tuple[Arc, Arc]]:
    groups: dict[tuple[int, int], list[tuple[int, int, Arc]]] = {}
    for v, w in arcs:
        tv, tw = tl.track[v], tl.track[w]
        if tv == tw:
            continue
        lo, hi = (v, w) if tv < tw else (w, v)
        groups.setdefault((tl.track[lo], tl.track[hi]), []).append((tl.rank[lo], tl.rank[hi], (v, w)))
    found = []
    for items in groups.values():
        ra = [x[0] for x in items]
        rb = [x[1] for x in items]
        for i, j in strict_inversions(ra, rb):
            found.append((items[i][2], items[j][2]))
    return found


def verify_track_layout(g: Dag, tl: TrackLayout,
                        arc_colour: Mapping[Arc, int] | None = None) -> VerifyReport:
    """Check properness, absence of X-crossings and, if ``tl.upward``, that
    the graph plus in-track successor arcs is acyclic.

    With ``arc_colour`` given, only monochromatic X-crossings count.
    """
    if len(tl.track) < g.n:
        raise MissingAssignment(f"layout assigns {len(tl.track)} of {g.n} vertices")
    report = VerifyReport()
    for v, w in g.arcs:
        if tl.track[v] == tl.track[w]:
            report.violations.append(Violation("intra_track", ((v, w),)))
    if arc_colour is None:
        pairs = _x_crossings(g, tl, g.arcs)
    else:
        by_colour: dict[int, list[Arc]] = {}
        for a in g.arcs:
            if a not in arc_colour:
                raise MissingAssignment(f"arc {a} has no colour")
            by_colour.setdefault(arc_colour[a], []).append(a)
        pairs = [p for c in sorted(by_colour) for p in _x_crossings(g, tl, by_colour[c])]
    report.violations.extend(Violation("x_crossing", p) for p in pairs)
    if tl.upward:
        n, arcs = tl.plus_graph(g)
        cycle = find_cycle(n, arcs)
        if cycle is not None:
            report.violations.append(Violation("plus_cycle", tuple(cycle)))
    return report


def verify_queue_layout(g: Dag, ql: QueueLayout) -> VerifyReport:
    """Report same-queue nested arc pairs and, if ``ql.upward``, arcs that
    point backwards in the vertex order."""
    pos = ql.order.position
    if len(pos) < g.n:
        raise MissingAssignment("vertex order does not cover every vertex")
    report = VerifyReport()
    by_queue: dict[int, list[Arc]] = {}
    for a in g.arcs:
        if a not in ql.queue:
            raise MissingAssignment(f"arc {a} has no queue")
        by_queue.setdefault(ql.queue[a], []).append(a)
    for q in sorted(by_queue):
        arcs = by_queue[q]
        left = [min(pos[v], pos[w]) for v, w in arcs]
        right = [max(pos[v], pos[w]) for v, w in arcs]
        for i, j in strict_inversions(left, right):
            report.violations.append(Violation("nesting", (arcs[i], arcs[j], q)))
    if ql.upward:
        for v, w in g.arcs:
            if pos[v] >= pos[w]:
                report.violations.append(Violation("non_topological", ((v, w),)))
    return report


def one_queue_conditions(g: Dag, tl: TrackLayout) -> list[str]:
    """Describe every way ``tl`` fails the span-two characterisation of
    upward 1-queue layouts (empty list when all conditions hold)."""
    problems = []
    for v, w in g.arcs:
        i, j = tl.track[v], tl.track[w]
        if not i < j <= i + 2:
            problems.append(f"arc {(v, w)} goes from track {i} to {j}")
            continue
        if j == i + 2:
            if tl.rank[w] != 0:
                problems.append(f"span-2 arc {(v, w)} does not end at the first vertex of its track")
            for x, y in g.arcs:
                if tl.track[x] == i and tl.rank[x] > tl.rank[v] and tl.track[y] == i + 1:
                    problems.append(f"arc {(x, y)} leaves track {i} after {v} into track {i + 1}")
    return problems


# --------------------------------------------------------------------------
# conversions
# --------------------------------------------------------------------------

def wrap(g: Dag, tl: TrackLayout, s: int) -> tuple[QueueLayout, TrackLayout]:
    """Fold a layout whose arcs all climb between 1 and ``s`` tracks.

    Returns the upward queue layout (one queue per span present) in the
    ordering (..., V_-1, V_0, V_1, ...) and the upward layout on tracks
    ``i mod (2s+1)``, each new track listing old tracks in increasing order.
    """
    if s < 1:
        raise SpanViolation("s must be at least 1")
    for v, w in g.arcs:
        d = tl.track[w] - tl.track[v]
        if not 0 < d <= s:
            raise SpanViolation(f"arc {(v, w)} climbs {d} tracks; need 1..{s}")
    order = track_order(tl)
    spans = sorted({tl.track[w] - tl.track[v] for v, w in g.arcs})
    qid = {sp: k for k, sp in enumerate(spans)}
    queue = {(v, w): qid[tl.track[w] - tl.track[v]] for v, w in g.arcs}
    ql = QueueLayout(VertexOrder(order.sequence, topological=True), queue, upward=True)

    mod = 2 * s + 1
    wrapped: dict[int, list[int]] = {}
    for v in order.sequence:
        wrapped.setdefault(tl.track[v] % mod, []).append(v)
    return ql, TrackLayout.from_tracks(wrapped, n=g.n, upward=True)


def plus_topological_order(g: Dag, tl: TrackLayout) -> VertexOrder:
    """Smallest-id-first topological order of G+ (graph plus track successors)."""
    n, arcs = tl.plus_graph(g)
    if find_cycle(n, arcs) is not None:
        raise InvalidLayout("layout is not upward: G+ has a cycle")
    return topological_order(Dag(n, tuple(arcs)))


def track_to_queue(g: Dag, etl: EdgeColouredTrackLayout) -> QueueLayout:
    """One queue per (arc colour, unordered track pair), in a topological
    order of G+ that keeps every track's order."""
    tl = etl.layout
    report = verify_track_layout(g, tl.with_upward(True), etl.arc_colour or None)
    if not report.ok:
        raise InvalidLayout(f"not an upward edge-coloured track layout: {report.counts()}")
    order = plus_topological_order(g, tl)
    keys = {}
    for v, w in g.arcs:
        a, b = sorted((tl.track[v], tl.track[w]))
        keys[(v, w)] = (etl.arc_colour.get((v, w), 0), a, b)
    qid = {k: i for i, k in enumerate(sorted(set(keys.values())))}
    return QueueLayout(order, {a: qid[k] for a, k in keys.items()}, upward=True)


def one_queue_to_span2_tracks(g: Dag, ql: QueueLayout) -> TrackLayout:
    """Cut an upward 1-queue ordering into consecutive blocks.

    A new block starts at the first vertex with an in-neighbour in the
    current block. In a 1-queue ordering every arc then climbs one or two
    blocks, and a two-block arc always lands on the first vertex of its
    block.
    """
    if ql.num_queues > 1:
        raise NotOneQueue(f"layout uses {ql.num_queues} queues")
    report = verify_queue_layout(g, QueueLayout(ql.order, ql.queue, upward=True))
    if not report.ok:
        raise NotOneQueue(f"not a valid upward 1-queue layout: {report.counts()}")
    block = [0] * g.n
    current: set[int] = set()
    b = 0
    tracks: dict[int, list[int]] = {}
    for v in ql.order.sequence:
        if any(u in current for u in g.pred[v]):
            b += 1
            current = set()
        current.add(v)
        block[v] = b
        tracks.setdefault(b, []).append(v)
    return TrackLayout.from_tracks(tracks, n=g.n, upward=True)


def drawing_to_track_layout(g: Dag, d: Drawing3D, upward: bool = True) -> TrackLayout:
    """Read a track layout off a straight-line drawing.

    Vertices sharing an (x, y) column form an improper track ordered by z.
    Each column is then split in two, moving a vertex to the other half
    exactly when it is joined to the vertex just below it, which gives a
    proper layout with at most ``2XY`` tracks.
    """
    if d.bends:
        raise InvalidDrawing("drawing has bends; a straight-line drawing is required")
    report = verify_drawing(g, d, require_upward=upward)
    if not report.ok:
        raise InvalidDrawing(f"drawing fails verification: {report.counts()}")
    columns: dict[tuple[int, int], list[int]] = {}
    for v in range(g.n):
        p = d.points[v]
        columns.setdefault((p.x, p.y), []).append(v)
    tracks: dict[int, list[int]] = {}
    for c, key in enumerate(sorted(columns)):
        verts = sorted(columns[key], key=lambda v: d.points[v].z)
        side = 0
        prev = None
        for v in verts:
            if prev is not None and (g.has_arc(prev, v) or g.has_arc(v, prev)):
                side = 1 - side
            tracks.setdefault(2 * c + side, []).append(v)
            prev = v
    return TrackLayout.from_tracks(tracks, n=g.n, upward=upward).renumbered()
