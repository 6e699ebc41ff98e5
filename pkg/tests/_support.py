"""Shared generators for the test suite."""
from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from updraw.graph import Dag
from updraw.layouts import TrackLayout


def random_dag(n: int, seed: int, density: float | None = None) -> Dag:
    rng = np.random.default_rng(seed)
    total = n * (n - 1) // 2
    if density is None:
        density = float(rng.uniform(0.05, 0.5))
    m = min(total, int(round(density * total)))
    perm = rng.permutation(n)
    pairs = list(combinations(range(n), 2))
    pick = rng.choice(len(pairs), size=m, replace=False) if m else []
    return Dag(n, tuple((int(perm[pairs[k][0]]), int(perm[pairs[k][1]])) for k in pick))


def _crosses(tl_track, tl_rank, a, b) -> bool:
    (v, w), (x, y) = a, b
    if {tl_track[v], tl_track[w]} != {tl_track[x], tl_track[y]}:
        return False
    if tl_track[v] != tl_track[x]:
        x, y = y, x
    return (tl_rank[v] - tl_rank[x]) * (tl_rank[w] - tl_rank[y]) < 0


def random_upward_track_layout(n: int, t: int, seed: int, tries: int | None = None
                               ) -> tuple[Dag, TrackLayout]:
    """A random dag together with a valid upward t-track layout of it.

    Vertices are dealt onto tracks and the tracks interleaved into one
    global order; arcs follow that order, so G+ stays acyclic, and an arc
    is kept only if it forms no X-crossing with earlier arcs.
    """
    rng = np.random.default_rng(seed)
    track = [int(x) for x in rng.integers(0, t, size=n)]
    rank, seen = [0] * n, [0] * t
    for v in range(n):  # global order is 0..n-1
        rank[v] = seen[track[v]]
        seen[track[v]] += 1
    arcs: list[tuple[int, int]] = []
    by_pair: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for _ in range(tries if tries is not None else 3 * n if n > 1 else 0):
        v = int(rng.integers(0, n - 1))
        w = min(n - 1, v + 1 + int(rng.geometric(0.25)) - 1)
        if track[v] == track[w]:
            continue
        same = by_pair.setdefault(tuple(sorted((track[v], track[w]))), [])
        if (v, w) in same or any(_crosses(track, rank, (v, w), e) for e in same):
            continue
        same.append((v, w))
        arcs.append((v, w))
    return Dag(n, tuple(arcs)), TrackLayout(tuple(track), tuple(rank), upward=True)


def canonical(n: int, arcs) -> tuple:
    return min(tuple(sorted((p[a], p[b]) for a, b in arcs)) for p in permutations(range(n)))


def all_dags(n: int) -> list[Dag]:
    """Every dag on n vertices, one per isomorphism class."""
    pairs = list(combinations(range(n), 2))
    seen: set[tuple] = set()
    out = []
    for mask in range(1 << len(pairs)):
        arcs = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        key = canonical(n, arcs)
        if key not in seen:
            seen.add(key)
            out.append(Dag(n, key))
    return out
