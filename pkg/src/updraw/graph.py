"""Directed acyclic graphs, vertex orderings, and the graph families used
throughout the package.

Vertices are the dense integers ``0..n-1``. A :class:`Dag` is immutable
once built; adjacency lists are computed lazily and cached.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CycleDetected, InvalidParams

Arc = tuple[int, int]


@dataclass(frozen=True)
class Dag:
    """A simple directed acyclic graph on vertices ``0..n-1``.

    Duplicate arcs are dropped (first occurrence wins). Self-loops and
    directed cycles are rejected.
    """

    n: int
    arcs: tuple[Arc, ...] = ()
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidParams(f"vertex count must be non-negative, got {self.n}")
        seen: set[Arc] = set()
        clean: list[Arc] = []
        for a in self.arcs:
            v, w = int(a[0]), int(a[1])
            if not (0 <= v < self.n and 0 <= w < self.n):
                raise InvalidParams(f"arc {(v, w)} has an endpoint outside 0..{self.n - 1}")
            if v == w:
                raise InvalidParams(f"self-loop at vertex {v}")
            if (v, w) not in seen:
                seen.add((v, w))
                clean.append((v, w))
        object.__setattr__(self, "arcs", tuple(clean))
        if self.names is not None:
            if len(self.names) != self.n:
                raise InvalidParams("names must have one entry per vertex")
            object.__setattr__(self, "names", tuple(self.names))
        if find_cycle(self.n, self.arcs) is not None:
            raise CycleDetected("arc set contains a directed cycle")

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for v, w in self.arcs:
            out[v].append(w)
        return tuple(tuple(x) for x in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for v, w in self.arcs:
            inc[w].append(v)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def neighbours(self) -> tuple[tuple[int, ...], ...]:
        """Undirected adjacency (in- and out-neighbours)."""
        return tuple(self.pred[v] + self.succ[v] for v in range(self.n))

    def degree(self, v: int) -> int:
        return len(self.succ[v]) + len(self.pred[v])

    @cached_property
    def arc_set(self) -> frozenset[Arc]:
        return frozenset(self.arcs)

    def has_arc(self, v: int, w: int) -> bool:
        return (v, w) in self.arc_set

    def edges(self) -> list[tuple[int, int]]:
        """Underlying undirected edges as sorted pairs."""
        return [(min(v, w), max(v, w)) for v, w in self.arcs]

    def relabel(self, perm: Sequence[int]) -> Dag:
        """Return the dag with vertex ``v`` renamed to ``perm[v]``."""
        return Dag(self.n, tuple((perm[v], perm[w]) for v, w in self.arcs))


@dataclass(frozen=True)
class VertexOrder:
    """A vertex ordering.

    ``sequence[k]`` is the vertex at (0-based) position ``k``;
    ``position[v]`` is the inverse map.
    """

    sequence: tuple[int, ...]
    topological: bool = False

    def __post_init__(self) -> None:
        seq = tuple(int(v) for v in self.sequence)
        if sorted(seq) != list(range(len(seq))):
            raise InvalidParams("vertex order is not a permutation of 0..n-1")
        object.__setattr__(self, "sequence", seq)

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.sequence)
        for k, v in enumerate(self.sequence):
            pos[v] = k
        return tuple(pos)

    def __len__(self) -> int:
        return len(self.sequence)

    def is_topological_for(self, g: Dag) -> bool:
        pos = self.position
        return len(pos) == g.n and all(pos[v] < pos[w] for v, w in g.arcs)


@dataclass(frozen=True)
class DepthLabels:
    """Number of vertices on the longest directed path ending at each vertex."""

    depth: tuple[int, ...]

    @property
    def longest(self) -> int:
        """The number of vertices on a longest directed path (0 if empty)."""
        return max(self.depth, default=0)

    def __getitem__(self, v: int) -> int:
        return self.depth[v]


def find_cycle(n: int, arcs: Iterable[Arc]) -> list[int] | None:
    """Return the vertices of some directed cycle, or ``None`` if acyclic."""
    out: list[list[int]] = [[] for _ in range(n)]
    for v, w in arcs:
        out[v].append(w)
    state = [0] * n  # 0 new, 1 on stack, 2 done
    parent = [-1] * n
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, 0)]
        state[root] = 1
        while stack:
            v, i = stack[-1]
            if i < len(out[v]):
                stack[-1] = (v, i + 1)
                w = out[v][i]
                if state[w] == 0:
                    state[w] = 1
                    parent[w] = v
                    stack.append((w, 0))
                elif state[w] == 1:
                    cycle = [v]
                    while cycle[-1] != w:
                        cycle.append(parent[cycle[-1]])
                    cycle.reverse()
                    return cycle
            else:
                state[v] = 2
                stack.pop()
    return None


def topological_order(g: Dag) -> VertexOrder:
    """Kahn's algorithm, always taking the smallest available vertex id."""
    indeg = [len(p) for p in g.pred]
    heap = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(heap)
    seq: list[int] = []
    while heap:
        v = heapq.heappop(heap)
        seq.append(v)
        for w in g.succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(seq) != g.n:
        raise CycleDetected("arc set contains a directed cycle")
    return VertexOrder(tuple(seq), topological=True)


def random_topological_order(g: Dag, rng: np.random.Generator) -> VertexOrder:
    """A topological order with uniformly random tie-breaking among sources."""
    indeg = [len(p) for p in g.pred]
    avail = [v for v in range(g.n) if indeg[v] == 0]
    seq: list[int] = []
    while avail:
        k = int(rng.integers(len(avail)))
        avail[k], avail[-1] = avail[-1], avail[k]
        v = avail.pop()
        seq.append(v)
        for w in g.succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                avail.append(w)
    if len(seq) != g.n:
        raise CycleDetected("arc set contains a directed cycle")
    return VertexOrder(tuple(seq), topological=True)


def depth_labels(g: Dag, order: VertexOrder | None = None) -> DepthLabels:
    order = order or topological_order(g)
    depth = [1] * g.n
    for v in order.sequence:
        for u in g.pred[v]:
            if depth[u] + 1 > depth[v]:
                depth[v] = depth[u] + 1
    return DepthLabels(tuple(depth))


def degeneracy(g: Dag) -> tuple[int, VertexOrder]:
    """Exact degeneracy of the underlying undirected graph.

    Repeatedly deletes a vertex of minimum remaining degree (smallest id
    on ties). Returns the largest degree seen at deletion time together
    with the deletion sequence.
    """
    deg = [len(set(nb)) for nb in g.neighbours]
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    removed = [False] * g.n
    seq: list[int] = []
    d = 0
    while heap:
        k, v = heapq.heappop(heap)
        if removed[v] or k != deg[v]:
            continue
        removed[v] = True
        seq.append(v)
        d = max(d, k)
        for w in g.neighbours[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return d, VertexOrder(tuple(seq), topological=False)


def is_tree(g: Dag) -> bool:
    """True if the underlying undirected graph is a (connected) tree."""
    if g.n == 0 or g.m != g.n - 1:
        return False
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.neighbours[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

FAMILIES = (
    "path",
    "antichain",
    "complete",
    "nested",
    "knprime",
    "complete_bipartite",
    "knn",
    "random_tree",
    "random_caterpillar",
    "random_dag",
    "two_claw",
)

_ALIASES = {"nested_example": "nested", "gn": "nested", "tree": "random_tree",
            "caterpillar": "random_caterpillar", "random": "random_dag"}


def _orient(edges: Iterable[tuple[int, int]], rng: np.random.Generator) -> list[Arc]:
    arcs = []
    for a, b in edges:
        arcs.append((a, b) if rng.integers(2) == 0 else (b, a))
    return arcs


def _prufer_tree(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, w))
    return edges


def _caterpillar_edges(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    if n <= 1:
        return []
    spine_len = int(rng.integers(1, n + 1))
    perm = [int(x) for x in rng.permutation(n)]
    spine, rest = perm[:spine_len], perm[spine_len:]
    edges = [(spine[k], spine[k + 1]) for k in range(spine_len - 1)]
    for leaf in rest:
        edges.append((spine[int(rng.integers(spine_len))], leaf))
    return edges


def _require(params: Mapping[str, object], key: str, minimum: int = 0) -> int:
    if key not in params:
        raise InvalidParams(f"missing parameter {key!r}")
    try:
        val = int(params[key])  # type: ignore[arg-type]
    except (TypeError, ValueError) as exc:
        raise InvalidParams(f"parameter {key!r} must be an integer") from exc
    if val < minimum:
        raise InvalidParams(f"parameter {key!r} must be >= {minimum}, got {val}")
    return val


def generate(family: str, params: Mapping[str, object] | None = None, **kwargs: object) -> Dag:
    """Build a member of a named graph family.

    Parameters come from ``params`` and/or keyword arguments; every family
    needs ``n``. Random families also read ``seed`` (default 0), and
    ``random_dag`` needs ``m``.

    >>> generate("nested", n=2).arcs
    ((0, 1), (1, 2), (2, 3), (0, 3))
    """
    p: dict[str, object] = dict(params or {})
    p.update(kwargs)
    family = _ALIASES.get(family, family)
    if family not in FAMILIES:
        raise InvalidParams(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if family == "two_claw":
        # r=0, u,v,w=1,2,3, x,y,z=4,5,6; r->u,v,w and x->u, y->v, z->w
        return Dag(7, ((0, 1), (0, 2), (0, 3), (4, 1), (5, 2), (6, 3)))
    n = _require(p, "n")
    rng = np.random.default_rng(_require(p, "seed") if "seed" in p else 0)

    if family == "path":
        return Dag(n, tuple((i, i + 1) for i in range(n - 1)))
    if family == "antichain":
        return Dag(n)
    if family == "complete":
        return Dag(n, tuple(combinations(range(n), 2)))
    if family == "nested":
        if n < 1:
            raise InvalidParams("nested example needs n >= 1")
        arcs = [(i, i + 1) for i in range(2 * n - 1)]
        arcs += [(i, 2 * n - 1 - i) for i in range(n)]
        return Dag(2 * n, tuple(arcs))
    if family == "knprime":
        arcs = []
        for k, (a, b) in enumerate(combinations(range(n), 2)):
            arcs += [(a, n + k), (n + k, b)]
        return Dag(n + n * (n - 1) // 2, tuple(arcs))
    if family == "complete_bipartite":
        return Dag(2 * n, tuple((a, n + b) for a in range(n) for b in range(n)))
    if family == "knn":
        rank = [int(x) for x in rng.permutation(2 * n)]
        arcs = []
        for a in range(n):
            for b in range(n, 2 * n):
                arcs.append((a, b) if rank[a] < rank[b] else (b, a))
        return Dag(2 * n, tuple(arcs))
    if family == "random_tree":
        return Dag(n, tuple(_orient(_prufer_tree(n, rng), rng)))
    if family == "random_caterpillar":
        return Dag(n, tuple(_orient(_caterpillar_edges(n, rng), rng)))
    # random_dag
    m = _require(p, "m")
    if m > n * (n - 1) // 2:
        raise InvalidParams(f"m={m} exceeds n(n-1)/2={n * (n - 1) // 2}")
    hidden = [int(x) for x in rng.permutation(n)]
    total = n * (n - 1) // 2
    picks = sorted(int(x) for x in rng.choice(total, size=m, replace=False)) if m else []
    pairs = []
    # decode pair index -> (i, j), i < j, in combinations order
    i, start = 0, 0
    for idx in picks:
        while idx >= start + (n - 1 - i):
            start += n - 1 - i
            i += 1
        j = i + 1 + (idx - start)
        pairs.append((hidden[i], hidden[j]))
    return Dag(n, tuple(pairs))
