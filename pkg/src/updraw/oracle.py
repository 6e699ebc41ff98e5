"""Brute-force ground truth for tiny instances.

Nothing here calls the constructions; results are compared against them
in tests. Every search counts visited states and raises
:class:`BudgetExceeded` past ``budget.max_states``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded
from .graph import Dag, VertexOrder
from .subdivisions import BandwidthCertificate


@dataclass(frozen=True)
class OracleBudget:
    max_n: int | None = None
    max_states: int = 5_000_000


class _Counter:
    def __init__(self, budget: OracleBudget) -> None:
        self.left = budget.max_states

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("search exceeded its state budget")


def _check_size(g: Dag, budget: OracleBudget | None, default: int) -> OracleBudget:
    budget = budget or OracleBudget()
    cap = budget.max_n if budget.max_n is not None else default
    if g.n > cap:
        raise BudgetExceeded(f"n={g.n} exceeds the oracle cap {cap}")
    return budget


def topological_orders(g: Dag) -> Iterator[tuple[int, ...]]:
    """Every topological order, by backtracking over available vertices."""
    indeg = [len(p) for p in g.pred]
    prefix: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(prefix) == g.n:
            yield tuple(prefix)
            return
        for v in range(g.n):
            if indeg[v] == 0:
                indeg[v] = -1
                for w in g.succ[v]:
                    indeg[w] -= 1
                prefix.append(v)
                yield from rec()
                prefix.pop()
                for w in g.succ[v]:
                    indeg[w] += 1
                indeg[v] = 0

    yield from rec()


# --------------------------------------------------------------------------
# queue number
# --------------------------------------------------------------------------

def max_rainbow(g: Dag, sequence: Sequence[int]) -> int:
    """Largest set of pairwise strictly nested arcs, O(m^2) chain DP."""
    pos = {v: k for k, v in enumerate(sequence)}
    spans = sorted((min(pos[v], pos[w]), -max(pos[v], pos[w])) for v, w in g.arcs)
    best = [1] * len(spans)
    for b in range(len(spans)):
        lb, rb = spans[b][0], -spans[b][1]
        for a in range(b):
            la, ra = spans[a][0], -spans[a][1]
            if la < lb and rb < ra and best[a] + 1 > best[b]:
                best[b] = best[a] + 1
    return max(best, default=0)


def exact_upward_queue_number(g: Dag, budget: OracleBudget | None = None) -> int:
    """Minimum over topological orders of the largest rainbow."""
    budget = _check_size(g, budget, 10)
    if g.m == 0:
        return 0
    counter = _Counter(budget)
    best = g.m
    for seq in topological_orders(g):
        counter.tick()
        best = min(best, max_rainbow(g, seq))
        if best == 1:
            break
    return best


# --------------------------------------------------------------------------
# track number
# --------------------------------------------------------------------------

def _upward_tracks_feasible(g: Dag, t: int, counter: _Counter) -> bool:
    """Can the vertices be appended one at a time (predecessors first) to
    at most ``t`` tracks without an intra-track arc or an X-crossing?

    Every upward layout arises this way from a topological order of G+.
    A vertex appended to track T may join a vertex u on track T' only if
    no placed edge between T and T' ends above u on T'. So the future
    depends only on the placed set, the still-active vertices (those with
    unplaced neighbours) of each track, and for each track pair how many
    of those are already blocked. Failed states are memoised under that
    summary, minimised over track relabellings. Leaves hanging off the
    same vertex in the same direction are interchangeable, so they are
    placed in id order.
    """
    nbrs = [set(nb) for nb in g.neighbours]
    twin_before = [-1] * g.n
    last_twin: dict[tuple[int, bool], int] = {}
    for v in range(g.n):
        if len(nbrs[v]) == 1:
            (u,) = nbrs[v]
            key = (u, g.has_arc(v, u))
            twin_before[v] = last_twin.get(key, -1)
            last_twin[key] = v
    track = [-1] * g.n
    rank = [-1] * g.n
    lists: list[list[int]] = []
    unplaced_nbrs = [len(nb) for nb in nbrs]
    waiting = [len(p) for p in g.pred]
    # frontier[T][T2]: highest rank on T2 of a vertex joined to track T
    frontier: list[list[int]] = [[-1] * t for _ in range(t)]
    failed: set = set()
    perms = list(permutations(range(t)))

    def ok(v: int, tv: int) -> bool:
        for u in nbrs[v]:
            tu = track[u]
            if tu >= 0 and (tu == tv or rank[u] < frontier[tv][tu]):
                return False
        return True

    def summary(mask: int) -> tuple:
        k = len(lists)
        active = [[v for v in lists[T] if unplaced_nbrs[v]] for T in range(k)]
        blocked = [[sum(1 for v in active[T2] if rank[v] < frontier[T][T2]) if T2 != T else 0
                    for T2 in range(k)] for T in range(k)]
        best = None
        for perm in perms:
            order = [T for T in perm if T < k]
            key = tuple((tuple(active[T]), tuple(blocked[T][T2] for T2 in order)) for T in order)
            if best is None or key < best:
                best = key
        return (mask, best)

    def place(v: int, tv: int) -> list:
        saved = []
        track[v], rank[v] = tv, len(lists[tv])
        lists[tv].append(v)
        for u in nbrs[v]:
            unplaced_nbrs[u] -= 1
            tu = track[u]
            if tu >= 0:
                saved.append((tv, tu, frontier[tv][tu]))
                saved.append((tu, tv, frontier[tu][tv]))
                frontier[tv][tu] = max(frontier[tv][tu], rank[u])
                frontier[tu][tv] = max(frontier[tu][tv], rank[v])
        for w in g.succ[v]:
            waiting[w] -= 1
        return saved

    def unplace(v: int, tv: int, saved: list) -> None:
        for w in g.succ[v]:
            waiting[w] += 1
        for a, b, val in reversed(saved):
            frontier[a][b] = val
        for u in nbrs[v]:
            unplaced_nbrs[u] += 1
        lists[tv].pop()
        track[v] = rank[v] = -1

    def rec(placed: int, mask: int) -> bool:
        if placed == g.n:
            return True
        key = summary(mask)
        if key in failed:
            return False
        counter.tick()
        if len(lists) == t:
            # frontiers only grow, so a vertex with no legal track now never gets one
            for v in range(g.n):
                if track[v] < 0 and not any(ok(v, T) for T in range(t)):
                    failed.add(key)
                    return False
        for v in range(g.n):
            if track[v] >= 0 or waiting[v]:
                continue
            if twin_before[v] >= 0 and track[twin_before[v]] < 0:
                continue
            options = list(range(len(lists)))
            if len(lists) < t:
                options.append(len(lists))
            for tv in options:
                fresh = tv == len(lists)
                if fresh:
                    lists.append([])
                if ok(v, tv):
                    saved = place(v, tv)
                    done = rec(placed + 1, mask | (1 << v))
                    unplace(v, tv, saved)
                    if done:
                        if fresh:
                            lists.pop()
                        return True
                if fresh:
                    lists.pop()
        failed.add(key)
        return False

    return rec(0, 0)


def exact_upward_track_number(g: Dag, max_t: int = 8,
                              budget: OracleBudget | None = None) -> int | None:
    """Smallest ``t <= max_t`` with an upward t-track layout, else ``None``."""
    budget = _check_size(g, budget, 8)
    if g.n == 0:
        return 0
    counter = _Counter(budget)
    for t in range(1, max_t + 1):
        if _upward_tracks_feasible(g, t, counter):
            return t
    return None


def has_unit_span_layout(g: Dag, budget: OracleBudget | None = None) -> bool:
    """Whether some track layout puts every arc ``vw`` from ``V_i`` to ``V_{i+1}``.

    Levels are forced per weak component up to a shift, so only the order
    inside each level is searched. Components are laid out independently
    (shifting one far away removes all interaction), hence the search is
    per component.
    """
    budget = _check_size(g, budget, 10)
    counter = _Counter(budget)
    level = [None] * g.n
    for root in range(g.n):
        if level[root] is not None:
            continue
        level[root] = 0
        comp, stack = [root], [root]
        while stack:
            v = stack.pop()
            for w, d in [(w, 1) for w in g.succ[v]] + [(u, -1) for u in g.pred[v]]:
                if level[w] is None:
                    level[w] = level[v] + d
                    comp.append(w)
                    stack.append(w)
                elif level[w] != level[v] + d:
                    return False
        groups: dict[int, list[int]] = {}
        for v in comp:
            groups.setdefault(level[v], []).append(v)
        keys = sorted(groups)
        arcs = [(v, w) for v in comp for w in g.succ[v]]
        if not _unit_span_orders(keys, groups, arcs, {}, counter):
            return False
    return True


def _unit_span_orders(keys, groups, arcs, rank, counter) -> bool:
    # assign level orders one at a time, checking arcs into the newest level
    i = len({level for level in keys if groups[level][0] in rank})
    if i == len(keys):
        return True
    lev = keys[i]
    here = [(v, w) for v, w in arcs if w in groups[lev]]
    for perm in permutations(groups[lev]):
        counter.tick()
        for k, v in enumerate(perm):
            rank[v] = k
        ok = all(not ((rank[a] - rank[c]) * (rank[b] - rank[d]) < 0)
                 for j, (a, b) in enumerate(here) for c, d in here[j + 1:])
        if ok and _unit_span_orders(keys, groups, arcs, rank, counter):
            return True
        for v in perm:
            del rank[v]
    return False


# --------------------------------------------------------------------------
# directed bandwidth
# --------------------------------------------------------------------------

def exact_directed_bandwidth(g: Dag, budget: OracleBudget | None = None) -> BandwidthCertificate:
    """Branch and bound over topological orders.

    A prefix is cut once some placed vertex has an unplaced successor that
    could no longer land within the incumbent bandwidth.
    """
    budget = _check_size(g, budget, 12)
    counter = _Counter(budget)
    pos = [-1] * g.n
    waiting = [len(p) for p in g.pred]
    prefix: list[int] = []
    best_b = max(g.n - 1, 0) + 1
    best_seq: list[int] = []

    def rec(cur: int) -> None:
        nonlocal best_b, best_seq
        counter.tick()
        k = len(prefix)
        if k == g.n:
            if cur < best_b:
                best_b, best_seq = cur, list(prefix)
            return
        # earliest any open arc can close is position k
        for u in prefix:
            for w in g.succ[u]:
                if pos[w] < 0 and k - pos[u] >= best_b:
                    return
        for v in range(g.n):
            if pos[v] >= 0 or waiting[v]:
                continue
            stretch = max((k - pos[u] for u in g.pred[v]), default=0)
            nxt = max(cur, stretch)
            if nxt >= best_b:
                continue
            pos[v] = k
            prefix.append(v)
            for w in g.succ[v]:
                waiting[w] -= 1
            rec(nxt)
            for w in g.succ[v]:
                waiting[w] += 1
            prefix.pop()
            pos[v] = -1

    rec(0)
    return BandwidthCertificate(VertexOrder(tuple(best_seq), topological=True), best_b)


# --------------------------------------------------------------------------
# independent segment predicate: orientations and projections
# --------------------------------------------------------------------------

def _orient2(p, q, r) -> int:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _drop(p, k):
    return (p[(k + 1) % 3], p[(k + 2) % 3])


def segments_cross_by_orientation(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """Improper-intersection test built from orientation signs.

    Non-coplanar pairs are disjoint. Coplanar non-parallel pairs are
    projected along the dominant normal axis, tested with 2D orientations,
    and the meeting point is compared with the shared endpoints. Collinear
    pairs reduce to interval overlap on one axis: a single common point is
    necessarily a shared endpoint.
    """
    a0, a1 = [tuple(int(c) for c in p) for p in a]
    b0, b1 = [tuple(int(c) for c in p) for p in b]
    u = [a1[k] - a0[k] for k in range(3)]
    v = [b1[k] - b0[k] for k in range(3)]
    w = [b0[k] - a0[k] for k in range(3)]
    n = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
    if n[0] * w[0] + n[1] * w[1] + n[2] * w[2] != 0:
        return False
    if any(n):
        k = max(range(3), key=lambda i: abs(n[i]))
        A0, A1, B0, B1 = (_drop(p, k) for p in (a0, a1, b0, b1))
        o1, o2 = _orient2(A0, A1, B0), _orient2(A0, A1, B1)
        o3, o4 = _orient2(B0, B1, A0), _orient2(B0, B1, A1)
        if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0) or (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
            return False
        U, V, W = _drop(u, k), _drop(v, k), _drop(w, k)
        t = Fraction(W[0] * V[1] - W[1] * V[0], U[0] * V[1] - U[1] * V[0])
        meet = tuple(a0[i] + u[i] * t for i in range(3))
        shared = {a0, a1} & {b0, b1}
        return meet not in shared
    c = [w[1] * u[2] - w[2] * u[1], w[2] * u[0] - w[0] * u[2], w[0] * u[1] - w[1] * u[0]]
    if any(c):
        return False
    k = max(range(3), key=lambda i: abs(u[i]))
    lo = max(min(a0[k], a1[k]), min(b0[k], b1[k]))
    hi = min(max(a0[k], a1[k]), max(b0[k], b1[k]))
    return lo < hi


def segments_cross_by_orientation_many(a0, a1, b0, b1) -> np.ndarray:
    """Vectorised :func:`segments_cross_by_orientation` on ``(K, 3)`` int arrays.

    Uses int64 when coordinates are small enough for every product, else
    Python-int object arrays.
    """
    arrs = [np.asarray(x) for x in (a0, a1, b0, b1)]
    if arrs[0].shape[0] == 0:
        return np.zeros(0, dtype=bool)
    big = max(int(np.abs(x).max()) for x in arrs)
    dt = np.int64 if 64 * (2 * big + 1) ** 4 < 2**62 else object
    A0, A1, B0, B1 = (x.astype(dt) for x in arrs)
    u, v, w = A1 - A0, B1 - B0, B0 - A0
    n = np.cross(u, v) if dt is np.int64 else _cross_obj(u, v)
    coplanar = (n * w).sum(axis=1) == 0
    nonpar = (n != 0).any(axis=1)
    out = np.zeros(len(A0), dtype=bool)

    idx = np.flatnonzero(coplanar & nonpar)
    if idx.size:
        k = np.argmax(np.abs(n[idx]).astype(float) if dt is object else np.abs(n[idx]), axis=1)
        ax1, ax2 = (k + 1) % 3, (k + 2) % 3
        r = np.arange(idx.size)

        def proj(P):
            P = P[idx]
            return P[r, ax1], P[r, ax2]

        pa0, pa1, pb0, pb1 = proj(A0), proj(A1), proj(B0), proj(B1)

        def orient(p, q, s):
            return (q[0] - p[0]) * (s[1] - p[1]) - (q[1] - p[1]) * (s[0] - p[0])

        o1, o2 = orient(pa0, pa1, pb0), orient(pa0, pa1, pb1)
        o3, o4 = orient(pb0, pb1, pa0), orient(pb0, pb1, pa1)
        apart = ((o1 > 0) & (o2 > 0)) | ((o1 < 0) & (o2 < 0)) | ((o3 > 0) & (o4 > 0)) | ((o3 < 0) & (o4 < 0))
        U = (pa1[0] - pa0[0], pa1[1] - pa0[1])
        V = (pb1[0] - pb0[0], pb1[1] - pb0[1])
        W = (pb0[0] - pa0[0], pb0[1] - pa0[1])
        num = W[0] * V[1] - W[1] * V[0]
        den = U[0] * V[1] - U[1] * V[0]
        # meeting point scaled by den: a0*den + u*num
        scaled = A0[idx] * den[:, None] + u[idx] * num[:, None]
        at_shared = np.zeros(idx.size, dtype=bool)
        for P in (A0, A1):
            Pi = P[idx]
            is_shared = (Pi == B0[idx]).all(axis=1) | (Pi == B1[idx]).all(axis=1)
            at_shared |= is_shared & (scaled == Pi * den[:, None]).all(axis=1)
        out[idx] = ~apart & ~at_shared

    idx = np.flatnonzero(coplanar & ~nonpar)
    if idx.size:
        ui, wi = u[idx], w[idx]
        c = np.cross(wi, ui) if dt is np.int64 else _cross_obj(wi, ui)
        collinear = ~(c != 0).any(axis=1)
        k = np.argmax(np.abs(ui).astype(float) if dt is object else np.abs(ui), axis=1)
        r = np.arange(idx.size)
        a0k, a1k = A0[idx][r, k], A1[idx][r, k]
        b0k, b1k = B0[idx][r, k], B1[idx][r, k]
        lo = np.maximum(np.minimum(a0k, a1k), np.minimum(b0k, b1k))
        hi = np.minimum(np.maximum(a0k, a1k), np.maximum(b0k, b1k))
        out[idx] = collinear & (lo < hi)
    return out


def _cross_obj(u, v):
    return np.stack([u[:, 1] * v[:, 2] - u[:, 2] * v[:, 1],
                     u[:, 2] * v[:, 0] - u[:, 0] * v[:, 2],
                     u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]], axis=1)
