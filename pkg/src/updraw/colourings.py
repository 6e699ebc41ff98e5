"""Vertex colourings consumed by the drawing constructions.

Producers (greedy, longest-path, harmonious, strong star) and checkers
(``is_proper``, ``is_harmonious``, ``is_strong_star``) are written
separately; the checkers look only at the colour map and the edge list.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import NotStrongStar
from .graph import Dag, VertexOrder, degeneracy, depth_labels, topological_order
from .layouts import TrackLayout

KINDS = ("proper", "harmonious", "strong_star")


@dataclass(frozen=True)
class Colouring:
    """``colour[v]`` in ``0..c-1``; ``kind`` names the property it was built for."""

    colour: tuple[int, ...]
    kind: str = "proper"

    def __post_init__(self) -> None:
        object.__setattr__(self, "colour", tuple(int(x) for x in self.colour))
        if self.kind not in KINDS:
            raise ValueError(f"unknown colouring kind {self.kind!r}")

    @property
    def c(self) -> int:
        return max(self.colour, default=-1) + 1

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.c)]
        for v, k in enumerate(self.colour):
            out[k].append(v)
        return out


# --------------------------------------------------------------------------
# checkers
# --------------------------------------------------------------------------

def is_proper(g: Dag, colour: Sequence[int]) -> bool:
    return all(colour[v] != colour[w] for v, w in g.arcs)


def is_harmonious(g: Dag, colour: Sequence[int]) -> bool:
    if not is_proper(g, colour):
        return False
    pairs = set()
    for v, w in g.arcs:
        key = frozenset((colour[v], colour[w]))
        if key in pairs:
            return False
        pairs.add(key)
    return True


def is_strong_star(g: Dag, colour: Sequence[int]) -> bool:
    """Every bichromatic subgraph is a star plus isolated vertices."""
    if not is_proper(g, colour):
        return False
    between: dict[frozenset, list[tuple[int, int]]] = {}
    for v, w in g.arcs:
        between.setdefault(frozenset((colour[v], colour[w])), []).append((v, w))
    for edges in between.values():
        common = set(edges[0])
        for e in edges[1:]:
            common &= set(e)
            if not common:
                return False
    return True


CHECKERS = {"proper": is_proper, "harmonious": is_harmonious, "strong_star": is_strong_star}


def check(g: Dag, col: Colouring) -> bool:
    return CHECKERS[col.kind](g, col.colour)


# --------------------------------------------------------------------------
# producers
# --------------------------------------------------------------------------

def greedy_colouring(g: Dag) -> Colouring:
    """Colour the reversed degeneracy elimination order with the smallest
    free colour, so at most ``degeneracy + 1`` colours are used."""
    _, elim = degeneracy(g)
    colour = [-1] * g.n
    for v in reversed(elim.sequence):
        used = {colour[w] for w in g.neighbours[v] if colour[w] >= 0}
        k = 0
        while k in used:
            k += 1
        colour[v] = k
    return Colouring(tuple(colour), "proper")


def longest_path_colouring(g: Dag) -> Colouring:
    depth = depth_labels(g)
    return Colouring(tuple(d - 1 for d in depth.depth), "proper")


def harmonious_colouring(g: Dag, vertices: Sequence[int] | None = None,
                         offset: int = 0) -> Colouring | tuple[int, ...]:
    """Greedy harmonious colouring of the subgraph induced by ``vertices``.

    Vertices are taken by decreasing degree (ties by id). Each receives
    the smallest colour that differs from every already-coloured vertex
    within distance two and that creates no colour pair already spanned by
    an edge. Vertices outside ``vertices`` keep colour ``-1`` in the
    returned plain tuple, which callers are expected to fill.
    """
    keep = set(range(g.n)) if vertices is None else set(vertices)
    nbrs = {v: [w for w in set(g.neighbours[v]) if w in keep] for v in keep}
    order = sorted(keep, key=lambda v: (-len(nbrs[v]), v))
    colour = [-1] * g.n
    used_pairs: set[tuple[int, int]] = set()
    for v in order:
        blocked = set()
        coloured_nbrs = []
        for w in nbrs[v]:
            if colour[w] >= 0:
                blocked.add(colour[w])
                coloured_nbrs.append(colour[w])
            for x in nbrs[w]:
                if x != v and colour[x] >= 0:
                    blocked.add(colour[x])
        k = offset
        while k in blocked or any((min(k, c), max(k, c)) in used_pairs for c in coloured_nbrs):
            k += 1
        colour[v] = k
        for c in coloured_nbrs:
            used_pairs.add((min(k, c), max(k, c)))
    if vertices is None:
        return Colouring(tuple(colour), "harmonious")
    return tuple(colour)


def harmonious_bound(d: int, m: int, max_degree: int) -> float:
    """Reference colour count ``2*sqrt(2dm) + (2d-1)*Delta`` (reported only)."""
    return 2 * math.sqrt(2 * d * m) + (2 * d - 1) * max_degree


def high_degree_set(g: Dag, variant: str = "sqrt_dm") -> list[int]:
    """Vertices given singleton colours by :func:`strong_star_colouring`.

    ``sqrt_dm``: degree at least sqrt(2m/d), tested as ``deg**2 * d >= 2m``.
    ``m_two_thirds``: degree at least m**(1/3), tested as ``deg**3 >= m``.
    """
    m = g.m
    d, _ = degeneracy(g)
    out = []
    for v in range(g.n):
        k = len(set(g.neighbours[v]))
        if variant == "sqrt_dm":
            hit = k * k * d >= 2 * m
        elif variant == "m_two_thirds":
            hit = k ** 3 >= m
        else:
            raise ValueError(f"unknown variant {variant!r}")
        if hit:
            out.append(v)
    return out


def strong_star_colouring(g: Dag, variant: str = "sqrt_dm") -> Colouring:
    """Singleton colours for high-degree vertices, then a harmonious
    colouring of the rest with fresh colours."""
    if g.m == 0:
        return Colouring((0,) * g.n, "strong_star")
    big = high_degree_set(g, variant)
    colour = [-1] * g.n
    for k, v in enumerate(big):
        colour[v] = k
    rest = [v for v in range(g.n) if colour[v] < 0]
    partial = harmonious_colouring(g, rest, offset=len(big))
    for v in rest:
        colour[v] = partial[v]
    # compact colour ids to 0..c-1, preserving order
    ids = {c: i for i, c in enumerate(sorted(set(colour)))}
    return Colouring(tuple(ids[c] for c in colour), "strong_star")


def colouring_to_upward_tracks(g: Dag, col: Colouring,
                               order: VertexOrder | None = None) -> TrackLayout:
    """One track per colour class, each ordered by a topological order."""
    if not is_strong_star(g, col.colour):
        raise NotStrongStar("colouring is not a strong star colouring")
    order = order or topological_order(g)
    if not order.is_topological_for(g):
        raise ValueError("order must be topological")
    tracks: dict[int, list[int]] = {}
    for v in order.sequence:
        tracks.setdefault(col.colour[v], []).append(v)
    return TrackLayout.from_tracks(tracks, n=g.n, upward=True)
