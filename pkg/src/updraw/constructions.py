"""Coordinate assignments and track constructions.

Every drawing here is straight-line on the integer grid. Most functions
take the smallest-id-first topological order from :mod:`updraw.graph`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .colourings import Colouring, longest_path_colouring
from .errors import InvalidLayout, InvalidParams, NotACaterpillar, NotATree
from .geometry import Drawing3D, GridPoint
from .graph import Dag, depth_labels, generate, is_tree, topological_order
from .layouts import TrackLayout, plus_topological_order, verify_track_layout


@dataclass(frozen=True)
class PrimeChoice:
    """Smallest prime ``p`` with ``low < p <= high``."""

    p: int
    low: int
    high: int


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    f = 3
    while f * f <= k:
        if k % f == 0:
            return False
        f += 2
    return True


def smallest_prime(low: int, high: int) -> PrimeChoice:
    for p in range(max(low + 1, 2), high + 1):
        if is_prime(p):
            return PrimeChoice(p, low, high)
    raise InvalidParams(f"no prime in ({low}, {high}]")


# --------------------------------------------------------------------------
# drawings from orderings and colourings
# --------------------------------------------------------------------------

def moment_curve_drawing(g: Dag) -> Drawing3D:
    """Vertex at 1-based topological index i goes to (i^3 mod p, i^2 mod p, i)."""
    if g.n == 0:
        return Drawing3D(())
    p = smallest_prime(g.n, 2 * g.n).p
    pts: list[GridPoint] = [GridPoint(0, 0, 0)] * g.n
    for k, v in enumerate(topological_order(g).sequence):
        i = k + 1
        pts[v] = GridPoint(i ** 3 % p, i * i % p, i)
    return Drawing3D(tuple(pts))


def _colour_prime(c: int) -> int:
    # smallest prime >= 2c-1; it lies below 4c by Bertrand's postulate
    return smallest_prime(2 * c - 2, 4 * c - 1).p


def pach_placement(g: Dag, col: Colouring) -> Drawing3D:
    """Class ``i`` vertices at (i, t, i*t) with t = i^2 mod p, +p, +2p, ...

    Vertices of a class are taken in increasing id order. The result is
    crossing-free for any proper colouring but need not be upward.
    """
    if len(col.colour) != g.n:
        raise InvalidParams("colouring does not cover the graph")
    if g.n == 0:
        return Drawing3D(())
    p = _colour_prime(col.c)
    used = [0] * col.c
    pts = []
    for v in range(g.n):
        i = col.colour[v]
        t = i * i % p + used[i] * p
        used[i] += 1
        pts.append(GridPoint(i, t, i * t))
    return Drawing3D(tuple(pts))


def coloured_upward_drawing(g: Dag, col: Colouring) -> Drawing3D:
    """Upward drawing from a proper c-colouring.

    Walking a topological order, each vertex of colour ``i`` takes the
    smallest height above its predecessor's that is congruent to
    ``i^2 mod p`` and sits at (i, i*z, z).
    """
    if len(col.colour) != g.n:
        raise InvalidParams("colouring does not cover the graph")
    if g.n == 0:
        return Drawing3D(())
    p = _colour_prime(col.c)
    pts: list[GridPoint] = [GridPoint(0, 0, 0)] * g.n
    z = None
    for v in topological_order(g).sequence:
        i = col.colour[v]
        r = i * i % p
        if z is None:
            z = r
        else:
            z = z + 1 + (r - z - 1) % p
        pts[v] = GridPoint(i, i * z, z)
    return Drawing3D(tuple(pts))


def long_path_drawing(g: Dag) -> Drawing3D:
    """Pach placement of the longest-path colouring with x and z exchanged,
    so height equals the number of vertices on a longest path."""
    return pach_placement(g, longest_path_colouring(g)).swapped(0, 2)


# --------------------------------------------------------------------------
# drawings from upward track layouts
# --------------------------------------------------------------------------

def _checked_upward(g: Dag, tl: TrackLayout, max_tracks: int | None = None) -> TrackLayout:
    tl = tl.with_upward(True)
    report = verify_track_layout(g, tl)
    if not report.ok:
        raise InvalidLayout(f"not an upward track layout: {report.counts()}")
    if max_tracks is not None and tl.num_tracks > max_tracks:
        raise InvalidLayout(f"layout uses {tl.num_tracks} tracks; at most {max_tracks} allowed")
    return tl


def track_drawing_general(g: Dag, tl: TrackLayout) -> Drawing3D:
    """Track i (renumbered 1..t) vertex at (i, i^2 mod p, p*d + i^3 mod p),
    where p is the smallest prime above t and d the depth in G+."""
    tl = _checked_upward(g, tl).renumbered(1)
    if g.n == 0:
        return Drawing3D(())
    t = tl.num_tracks
    p = smallest_prime(t, 2 * t).p
    n, arcs = tl.plus_graph(g)
    plus = Dag(n, tuple(arcs))
    depth = depth_labels(plus, plus_topological_order(g, tl))
    pts = []
    for v in range(g.n):
        i = tl.track[v]
        pts.append(GridPoint(i, i * i % p, p * depth[v] + i ** 3 % p))
    return Drawing3D(tuple(pts))


_THREE = ((0, 0), (1, 0), (0, 1))
_FOUR = ((0, 0), (1, 0), (0, 1), (1, 1))
_FIVE = ((1, 1), (2, 3), (2, 4), (3, 2), (4, 2))


def _class_index(tl: TrackLayout, assignment: Mapping[int, int] | None, size: int) -> dict[int, int]:
    if assignment is None:
        return {t: k for k, t in enumerate(tl.tracks)}
    idx = {int(t): int(k) - 1 for t, k in assignment.items()}
    for t in tl.tracks:
        if t not in idx or not 0 <= idx[t] < size:
            raise InvalidLayout(f"track {t} has no class in 1..{size}")
    if len(set(idx[t] for t in tl.tracks)) != tl.num_tracks:
        raise InvalidLayout("two tracks share a class")
    return idx


def track_drawing_3(g: Dag, tl: TrackLayout,
                    assignment: Mapping[int, int] | None = None) -> Drawing3D:
    """2 x 2 x n drawing of an upward 3-track layout.

    Tracks map to classes V1, V2, V3 in increasing id order unless
    ``assignment`` (track id -> 1..3) says otherwise.
    """
    tl = _checked_upward(g, tl, 3)
    cls = _class_index(tl, assignment, 3)
    pts: list[GridPoint] = [GridPoint(0, 0, 0)] * g.n
    for k, v in enumerate(plus_topological_order(g, tl).sequence):
        x, y = _THREE[cls[tl.track[v]]]
        pts[v] = GridPoint(x, y, k + 1)
    return Drawing3D(tuple(pts))


def track_drawing_4(g: Dag, tl: TrackLayout,
                    assignment: Mapping[int, int] | None = None) -> Drawing3D:
    """2 x 2 x 2n drawing: V1..V3 at even heights 2i, V4 at 2i-1."""
    tl = _checked_upward(g, tl, 4)
    cls = _class_index(tl, assignment, 4)
    pts: list[GridPoint] = [GridPoint(0, 0, 0)] * g.n
    for k, v in enumerate(plus_topological_order(g, tl).sequence):
        c = cls[tl.track[v]]
        x, y = _FOUR[c]
        pts[v] = GridPoint(x, y, 2 * (k + 1) - (c == 3))
    return Drawing3D(tuple(pts))


def five_track_classes(tl: TrackLayout) -> dict[int, int]:
    """Track id -> class 1..5 with the two smallest tracks on V3 and V5.

    Missing tracks count as empty and absorb the small slots first; ties
    are broken by track id.
    """
    ids = list(tl.tracks)
    sized = [(len(tl.tracks[t]), 0, t) for t in ids]
    sized += [(0, -1, -k) for k in range(1, 6 - len(ids))]  # virtual empty tracks
    sized.sort(key=lambda s: (s[0], s[1], s[2]))
    small = sized[:2]
    rest = sorted(sized[2:], key=lambda s: (s[1], s[2]))
    slots = {}
    for s, k in zip(small, (3, 5)):
        slots[s] = k
    for s, k in zip(rest, (1, 2, 4)):
        slots[s] = k
    return {s[2]: k for s, k in slots.items() if s[1] == 0}


def track_drawing_5(g: Dag, tl: TrackLayout,
                    assignment: Mapping[int, int] | None = None) -> Drawing3D:
    """4 x 4 x ceil(7n/5) drawing of an upward 5-track layout.

    Heights come from a counter along the G+ topological order that skips
    one value whenever the parity is wrong: odd on V3, even on V5.
    """
    tl = _checked_upward(g, tl, 5)
    cls = _class_index(tl, assignment if assignment is not None else five_track_classes(tl), 5)
    pts: list[GridPoint] = [GridPoint(0, 0, 0)] * g.n
    z = 0
    for v in plus_topological_order(g, tl).sequence:
        c = cls[tl.track[v]]
        z += 1
        if (c == 2 and z % 2 == 0) or (c == 4 and z % 2 == 1):
            z += 1
        x, y = _FIVE[c]
        pts[v] = GridPoint(x, y, z)
    return Drawing3D(tuple(pts))


# --------------------------------------------------------------------------
# track layouts of trees, caterpillars and the subdivided complete graph
# --------------------------------------------------------------------------

def tree_span2_layout(g: Dag, root: int = 0) -> TrackLayout:
    """Integer-track layout of an oriented tree.

    ``v`` goes to track ``2b - a`` where ``a`` and ``b`` count the arcs on
    the root path pointing toward and away from the root. Arcs toward the
    root climb one track, arcs away climb two. Tracks fill in order of
    distance from the root, then by the parent's (track, rank), then id.
    """
    if not is_tree(g):
        raise NotATree("underlying graph is not a tree")
    parent = [-1] * g.n
    dist = [0] * g.n
    track = [0] * g.n
    seen = [False] * g.n
    seen[root] = True
    queue = deque([root])
    levels: list[list[int]] = [[root]]
    while queue:
        v = queue.popleft()
        for w in sorted(set(g.neighbours[v])):
            if seen[w]:
                continue
            seen[w] = True
            parent[w] = v
            dist[w] = dist[v] + 1
            track[w] = track[v] + (2 if g.has_arc(v, w) else -1)
            if len(levels) <= dist[w]:
                levels.append([])
            levels[dist[w]].append(w)
            queue.append(w)
    rank = [0] * g.n
    fill: dict[int, int] = {}
    for level in levels:
        level.sort(key=lambda v: (track[parent[v]] if parent[v] >= 0 else 0,
                                  rank[parent[v]] if parent[v] >= 0 else 0, v))
        for v in level:
            rank[v] = fill.get(track[v], 0)
            fill[track[v]] = rank[v] + 1
    return TrackLayout(tuple(track), tuple(rank))


def caterpillar_spine(g: Dag) -> list[int]:
    """Longest path of the caterpillar: the leaf-stripped path extended by
    one leaf at each end, walked from its smaller-id end."""
    if not is_tree(g):
        raise NotACaterpillar("underlying graph is not a tree")
    nbrs = [set(nb) for nb in g.neighbours]
    if g.n <= 2:
        return list(range(g.n))
    inner = {v for v in range(g.n) if len(nbrs[v]) >= 2}
    inner_deg = {v: len(nbrs[v] & inner) for v in inner}
    if any(k > 2 for k in inner_deg.values()):
        raise NotACaterpillar("removing the leaves does not leave a path")
    start = min(v for v, k in inner_deg.items() if k <= 1)
    spine = [start]
    prev = -1
    while True:
        nxt = [w for w in nbrs[spine[-1]] & inner if w != prev]
        if not nxt:
            break
        prev = spine[-1]
        spine.append(nxt[0])
    head = min(nbrs[spine[0]] - inner)
    tail = min(nbrs[spine[-1]] - inner - {head})
    spine = [head, *spine, tail]
    return spine if spine[0] < spine[-1] else spine[::-1]


def caterpillar_span1_layout(g: Dag) -> TrackLayout:
    """Every arc climbs exactly one track.

    The spine walk moves up or down one track per spine arc depending on
    its direction, and each leaf sits one track below or above its spine
    vertex. Each track is ordered by the spine position of its vertices
    (a leaf counts as its spine vertex), ties by id.
    """
    spine = caterpillar_spine(g)
    track = [0] * g.n
    when = [0] * g.n
    on_spine = set(spine)
    for j, v in enumerate(spine):
        when[v] = j
        if j:
            u = spine[j - 1]
            track[v] = track[u] + (1 if g.has_arc(u, v) else -1)
    for j, v in enumerate(spine):
        for w in g.neighbours[v]:
            if w in on_spine:
                continue
            when[w] = j
            track[w] = track[v] + (-1 if g.has_arc(w, v) else 1)
    tracks: dict[int, list[int]] = {}
    for v in sorted(range(g.n), key=lambda v: (when[v], v)):
        tracks.setdefault(track[v], []).append(v)
    return TrackLayout.from_tracks(tracks, n=g.n)


def _icbrt_ceil(n: int) -> int:
    p = max(1, round(n ** (1 / 3)))
    while p ** 3 < n:
        p += 1
    while p > 1 and (p - 1) ** 3 >= n:
        p -= 1
    return p


def knprime_track_layout(n: int) -> tuple[Dag, TrackLayout]:
    """Track layout of K_n with every edge subdivided once.

    Originals fill p^2 tracks of p vertices (p = ceil(n^(1/3))). Division
    vertices of edges inside one rank class share a track ordered by rank;
    the others split by rank pair (k, l) into two tracks, one for
    i <= j and one for j < i.
    """
    if n < 1:
        raise InvalidParams("n must be at least 1")
    g = generate("knprime", n=n)
    p = _icbrt_ceil(n)
    where = [(u // p, u % p) for u in range(n)]  # (track i, rank k), 0-based
    tracks: dict[tuple, list[tuple[tuple, int]]] = {}
    for u in range(n):
        tracks.setdefault((0, where[u][0]), []).append(((where[u][1],), u))
    for idx, (a, b) in enumerate(combinations(range(n), 2)):
        d = n + idx
        (ia, ka), (ib, kb) = where[a], where[b]
        if ka == kb:
            tracks.setdefault((1,), []).append(((ka, d), d))
            continue
        if ka > kb:
            (ia, ka), (ib, kb) = (ib, kb), (ia, ka)
        if ia <= ib:
            tracks.setdefault((2, ka, kb, 0), []).append(((-ia, -ib), d))
        else:
            tracks.setdefault((2, ka, kb, 1), []).append(((ib, ia), d))
    ordered = {k: [v for _, v in sorted(items)] for k, items in tracks.items()}
    ids = {k: t for t, k in enumerate(sorted(ordered))}
    tl = TrackLayout.from_tracks({ids[k]: vs for k, vs in ordered.items()}, n=g.n)
    return g, tl
