"""Exact integer geometry for 3D grid drawings.

Everything here works on integer coordinates only. Bulk checks run on
``int64`` numpy arrays when the drawing's extent guarantees that no
intermediate product can overflow; otherwise the same code runs on
``object`` arrays holding Python integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateSegment, EmptyDrawing, MissingVertexPoint
from .graph import Arc, Dag


class GridPoint(NamedTuple):
    x: int
    y: int
    z: int


def _gp(p: Sequence[int]) -> GridPoint:
    return GridPoint(int(p[0]), int(p[1]), int(p[2]))


@dataclass(frozen=True)
class Drawing3D:
    """Vertex positions plus optional bend points for each arc.

    ``points[v]`` is the position of vertex ``v``. ``bends`` maps an arc
    ``(tail, head)`` to the bend points of its polyline, in tail-to-head
    order; arcs without an entry are drawn straight.
    """

    points: tuple[GridPoint, ...]
    bends: Mapping[Arc, tuple[GridPoint, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(_gp(p) for p in self.points))
        clean = {}
        for arc, pts in self.bends.items():
            if len(pts):
                clean[(int(arc[0]), int(arc[1]))] = tuple(_gp(p) for p in pts)
        object.__setattr__(self, "bends", clean)

    def polyline(self, arc: Arc) -> list[GridPoint]:
        v, w = arc
        return [self.points[v], *self.bends.get(arc, ()), self.points[w]]

    def translated(self, dx: int, dy: int, dz: int) -> Drawing3D:
        def sh(p: GridPoint) -> GridPoint:
            return GridPoint(p.x + dx, p.y + dy, p.z + dz)

        return Drawing3D(
            tuple(sh(p) for p in self.points),
            {a: tuple(sh(p) for p in pts) for a, pts in self.bends.items()},
        )

    def swapped(self, axis_a: int, axis_b: int) -> Drawing3D:
        """Exchange two coordinate axes (0=x, 1=y, 2=z) everywhere."""

        def sw(p: GridPoint) -> GridPoint:
            c = list(p)
            c[axis_a], c[axis_b] = c[axis_b], c[axis_a]
            return GridPoint(*c)

        return Drawing3D(
            tuple(sw(p) for p in self.points),
            {a: tuple(sw(p) for p in pts) for a, pts in self.bends.items()},
        )

    def all_points(self) -> list[GridPoint]:
        pts = list(self.points)
        for b in self.bends.values():
            pts.extend(b)
        return pts


@dataclass(frozen=True)
class BoundingBox:
    """Side lengths counted in gridpoints, so a single point is 1x1x1."""

    X: int
    Y: int
    Z: int
    origin: GridPoint = GridPoint(0, 0, 0)

    @property
    def volume(self) -> int:
        return self.X * self.Y * self.Z

    def fits(self, X: int, Y: int, Z: int) -> bool:
        return self.X <= X and self.Y <= Y and self.Z <= Z


@dataclass(frozen=True)
class Violation:
    kind: str
    witnesses: tuple[Any, ...]


@dataclass
class VerifyReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.violations:
            out[v.kind] = out.get(v.kind, 0) + 1
        return out

    def __bool__(self) -> bool:
        return self.ok


def bounding_box(d: Drawing3D) -> BoundingBox:
    pts = d.all_points()
    if not pts:
        raise EmptyDrawing("cannot bound an empty drawing")
    lo = [min(p[k] for p in pts) for k in range(3)]
    hi = [max(p[k] for p in pts) for k in range(3)]
    return BoundingBox(hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1, GridPoint(*lo))


# --------------------------------------------------------------------------
# scalar predicate
# --------------------------------------------------------------------------

def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def segments_intersect_improperly(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """True iff closed segments ``a`` and ``b`` meet somewhere other than a
    shared endpoint.

    Collinear overlap and an endpoint of one segment touching the interior
    of the other both count. Arithmetic is on Python integers, so any
    coordinate magnitude is handled exactly.
    """
    a0, a1 = tuple(map(int, a[0])), tuple(map(int, a[1]))
    b0, b1 = tuple(map(int, b[0])), tuple(map(int, b[1]))
    if a0 == a1 or b0 == b1:
        raise DegenerateSegment("segment endpoints must be distinct")
    shared = [(p, q) for p in (a0, a1) for q in (b0, b1) if p == q]
    if len(shared) == 2:
        return True
    if len(shared) == 1:
        s = shared[0][0]
        da = _sub(a1 if a0 == s else a0, s)
        db = _sub(b1 if b0 == s else b0, s)
        return _cross(da, db) == (0, 0, 0) and _dot(da, db) > 0
    u, v, w = _sub(a1, a0), _sub(b1, b0), _sub(b0, a0)
    n = _cross(u, v)
    if _dot(w, n) != 0:
        return False
    nn = _dot(n, n)
    if nn != 0:
        s_num = _dot(_cross(w, v), n)
        t_num = _dot(_cross(w, u), n)
        return 0 <= s_num <= nn and 0 <= t_num <= nn
    if _cross(w, u) != (0, 0, 0):
        return False
    q0, q1, length = _dot(w, u), _dot(_sub(b1, a0), u), _dot(u, u)
    return max(min(q0, q1), 0) <= min(max(q0, q1), length)


# --------------------------------------------------------------------------
# vectorised kernels; arguments are tuples of three component arrays
# --------------------------------------------------------------------------

_INT64_SAFE = 2**63 - 1


def safe_dtype(extent: int) -> Any:
    """``int64`` if every product formed by the kernels fits, else ``object``.

    With all coordinate differences bounded by ``extent`` the largest
    intermediate is ``12 * extent**4``.
    """
    return np.int64 if 12 * int(extent) ** 4 <= _INT64_SAFE else object


def _vsub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _vcross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _vdot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _vtake(c, idx):
    return (c[0][idx], c[1][idx], c[2][idx])


def _closed_intersect(a0, u, b0, b1, v) -> np.ndarray:
    """Closed segments ``a0 + s*u`` and ``b0 + t*v`` share a point."""
    w = _vsub(b0, a0)
    n = _vcross(u, v)
    out = _vdot(w, n) == 0
    idx = np.flatnonzero(out)
    if idx.size == 0:
        return out
    a0, u, b0, b1, v, w, n = (_vtake(c, idx) for c in (a0, u, b0, b1, v, w, n))
    nn = _vdot(n, n)
    hit = np.zeros(idx.size, dtype=bool)
    nonpar = nn != 0
    if nonpar.any():
        k = np.flatnonzero(nonpar)
        nk, wk, uk, vk, nnk = _vtake(n, k), _vtake(w, k), _vtake(u, k), _vtake(v, k), nn[k]
        s_num = _vdot(_vcross(wk, vk), nk)
        t_num = _vdot(_vcross(wk, uk), nk)
        hit[k] = (s_num >= 0) & (s_num <= nnk) & (t_num >= 0) & (t_num <= nnk)
    if (~nonpar).any():
        k = np.flatnonzero(~nonpar)
        wk, uk = _vtake(w, k), _vtake(u, k)
        c = _vcross(wk, uk)
        coll = (c[0] == 0) & (c[1] == 0) & (c[2] == 0)
        q0 = _vdot(wk, uk)
        q1 = _vdot(_vsub(_vtake(b1, k), _vtake(a0, k)), uk)
        length = _vdot(uk, uk)
        lo = np.maximum(np.minimum(q0, q1), 0)
        hi = np.minimum(np.maximum(q0, q1), length)
        hit[k] = coll & (lo <= hi)
    out[idx] = hit
    return out


def _same_ray(da, db) -> np.ndarray:
    c = _vcross(da, db)
    return (c[0] == 0) & (c[1] == 0) & (c[2] == 0) & (_vdot(da, db) > 0)


def _on_segment(p, a, b) -> np.ndarray:
    d = _vsub(b, a)
    e = _vsub(p, a)
    c = _vcross(e, d)
    t = _vdot(e, d)
    return (c[0] == 0) & (c[1] == 0) & (c[2] == 0) & (t >= 0) & (t <= _vdot(d, d))


def intersect_improperly_many(a0, a1, b0, b1) -> np.ndarray:
    """Vectorised :func:`segments_intersect_improperly` over ``(K, 3)`` arrays.

    Shared endpoints are detected by coordinate equality, exactly as in the
    scalar version.
    """
    arrs = [np.asarray(x) for x in (a0, a1, b0, b1)]
    if any(x.size == 0 for x in arrs):
        return np.zeros(0, dtype=bool)
    lo = min(int(x.min()) for x in arrs)
    hi = max(int(x.max()) for x in arrs)
    dt = safe_dtype(hi - lo)
    A0, A1, B0, B1 = (tuple((x[:, k] - lo).astype(dt) for k in range(3)) for x in arrs)

    def eq(p, q):
        return (p[0] == q[0]) & (p[1] == q[1]) & (p[2] == q[2])

    if (eq(A0, A1) | eq(B0, B1)).any():
        raise DegenerateSegment("segment endpoints must be distinct")
    e00, e01, e10, e11 = eq(A0, B0), eq(A0, B1), eq(A1, B0), eq(A1, B1)
    nshared = e00.astype(int) + e01 + e10 + e11
    out = nshared >= 2
    none = np.flatnonzero(nshared == 0)
    if none.size:
        a0n, a1n, b0n, b1n = (_vtake(c, none) for c in (A0, A1, B0, B1))
        out[none] = _closed_intersect(a0n, _vsub(a1n, a0n), b0n, b1n, _vsub(b1n, b0n))
    one = np.flatnonzero(nshared == 1)
    if one.size:
        a0o, a1o, b0o, b1o = (_vtake(c, one) for c in (A0, A1, B0, B1))
        s_is_a0 = (e00 | e01)[one]
        s_is_b0 = (e00 | e10)[one]
        s = tuple(np.where(s_is_a0, a0o[k], a1o[k]) for k in range(3))
        ea = tuple(np.where(s_is_a0, a1o[k], a0o[k]) for k in range(3))
        eb = tuple(np.where(s_is_b0, b1o[k], b0o[k]) for k in range(3))
        out[one] = _same_ray(_vsub(ea, s), _vsub(eb, s))
    return out


# --------------------------------------------------------------------------
# drawing verifier
# --------------------------------------------------------------------------

_BLOCK_CELLS = 1 << 21


def _label(node: int, n: int, bend_owner: list[tuple[Arc, int]]) -> tuple:
    if node < n:
        return ("vertex", node)
    arc, k = bend_owner[node - n]
    return ("bend", arc, k)


def _coplanar_pairs(a0, u, zmin, zmax):
    """Yield index pairs ``(I, J)`` of segments that could meet.

    Segments are swept in order of ``zmin`` so only pairs with overlapping
    z-ranges are examined. Of those, pairs whose supporting lines are not
    coplanar are dropped. Coplanarity of segment ``i`` with ``j`` is the
    vanishing of the Pluecker side product ``u_i.m_j + u_j.m_i`` where
    ``m = a0 x u``; over a block of rows that is two small matrix products.
    """
    order = np.argsort(zmin, kind="stable")
    zs = zmin[order]
    ends = np.searchsorted(zs, zmax[order], side="right")
    U = tuple(u[k][order] for k in range(3))
    M = _vcross(tuple(a0[k][order] for k in range(3)), U)
    left = np.stack(U + M, axis=1)
    right = np.ascontiguousarray(np.stack(M + U, axis=0))
    nseg = len(order)
    r0 = 0
    while r0 < nseg - 1:
        width = max(int(ends[r0]) - r0 - 1, 1)
        r1 = min(nseg - 1, r0 + max(1, _BLOCK_CELLS // width))
        c0, c1 = r0 + 1, int(ends[r0:r1].max())
        if c1 > c0:
            side = left[r0:r1] @ right[:, c0:c1]
            I, J = np.nonzero(side == 0)
            I += r0
            J += c0
            keep = (J > I) & (J < ends[I])
            if keep.any():
                yield order[I[keep]], order[J[keep]]
        r0 = r1


def verify_drawing(g: Dag, d: Drawing3D, require_upward: bool = False) -> VerifyReport:
    """Check that ``d`` is a crossing-free (and optionally upward) drawing of ``g``.

    Reports coincident points, improperly intersecting segment pairs,
    vertices lying on non-incident segments and, when ``require_upward``
    is set, arcs whose polyline is not strictly increasing in z.
    """
    if len(d.points) < g.n:
        raise MissingVertexPoint(f"drawing places {len(d.points)} of {g.n} vertices")
    report = VerifyReport()
    n = g.n

    coords: list[GridPoint] = list(d.points[:n])
    bend_owner: list[tuple[Arc, int]] = []
    seg_a: list[int] = []
    seg_b: list[int] = []
    seg_arc: list[int] = []
    seg_k: list[int] = []
    for ai, (v, w) in enumerate(g.arcs):
        chain = [v]
        for k, p in enumerate(d.bends.get((v, w), ())):
            bend_owner.append(((v, w), k))
            coords.append(p)
            chain.append(n + len(bend_owner) - 1)
        chain.append(w)
        for k in range(len(chain) - 1):
            seg_a.append(chain[k])
            seg_b.append(chain[k + 1])
            seg_arc.append(ai)
            seg_k.append(k)
        if require_upward:
            zs = [coords[c].z for c in chain]
            if any(zs[k] >= zs[k + 1] for k in range(len(zs) - 1)):
                report.violations.append(Violation("non_upward", ((v, w),)))

    by_point: dict[GridPoint, list[int]] = {}
    for node, p in enumerate(coords):
        by_point.setdefault(p, []).append(node)
    for nodes in by_point.values():
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                report.violations.append(Violation(
                    "coincident_points",
                    (_label(nodes[i], n, bend_owner), _label(nodes[j], n, bend_owner)),
                ))

    if not coords:
        return report
    lo = [min(p[k] for p in coords) for k in range(3)]
    hi = [max(p[k] for p in coords) for k in range(3)]
    dt = safe_dtype(max(hi[k] - lo[k] for k in range(3)))
    P = tuple(np.array([c[k] - lo[k] for c in coords], dtype=dt) for k in range(3))

    S0 = np.array(seg_a, dtype=np.int64)
    S1 = np.array(seg_b, dtype=np.int64)
    if S0.size:
        keep = ~((P[0][S0] == P[0][S1]) & (P[1][S0] == P[1][S1]) & (P[2][S0] == P[2][S1]))
        live = np.flatnonzero(keep)
    else:
        live = np.zeros(0, dtype=np.int64)

    # vertices lying on segments they are not an endpoint of
    if live.size and n:
        A, B = _vtake(P, S0[live]), _vtake(P, S1[live])
        for v in range(n):
            pv = tuple(np.full(live.size, P[k][v], dtype=P[k].dtype) for k in range(3))
            hit = _on_segment(pv, A, B) & (S0[live] != v) & (S1[live] != v)
            for s in live[np.flatnonzero(hit)]:
                report.violations.append(Violation(
                    "vertex_on_edge", (v, g.arcs[seg_arc[s]], seg_k[s])))

    if live.size >= 2:
        s0, s1 = S0[live], S1[live]
        a0, a1 = _vtake(P, s0), _vtake(P, s1)
        u = _vsub(a1, a0)
        zmin = np.minimum(a0[2], a1[2])
        zmax = np.maximum(a0[2], a1[2])
        for I, J in _coplanar_pairs(a0, u, zmin, zmax):
            si0, si1, sj0, sj1 = s0[I], s1[I], s0[J], s1[J]
            e00, e01, e10, e11 = si0 == sj0, si0 == sj1, si1 == sj0, si1 == sj1
            nshared = e00.astype(np.int8) + e01 + e10 + e11
            bad = nshared >= 2
            none = np.flatnonzero(nshared == 0)
            if none.size:
                Ii, Jj = I[none], J[none]
                bad[none] = _closed_intersect(
                    _vtake(a0, Ii), _vtake(u, Ii), _vtake(a0, Jj), _vtake(a1, Jj), _vtake(u, Jj))
            one = np.flatnonzero(nshared == 1)
            if one.size:
                shared = np.where((e00 | e01)[one], si0[one], si1[one])
                other_i = np.where((e00 | e01)[one], si1[one], si0[one])
                other_j = np.where((e00 | e10)[one], sj1[one], sj0[one])
                S = _vtake(P, shared)
                bad[one] = _same_ray(_vsub(_vtake(P, other_i), S), _vsub(_vtake(P, other_j), S))
            for k in np.flatnonzero(bad):
                x, y = live[I[k]], live[J[k]]
                if x > y:
                    x, y = y, x
                report.violations.append(Violation(
                    "crossing",
                    (g.arcs[seg_arc[x]], seg_k[x], g.arcs[seg_arc[y]], seg_k[y]),
                ))
    return report


def drawing_from_points(points: Iterable[Sequence[int]],
                        bends: Mapping[Arc, Iterable[Sequence[int]]] | None = None) -> Drawing3D:
    return Drawing3D(tuple(_gp(p) for p in points),
                     {a: tuple(_gp(p) for p in b) for a, b in (bends or {}).items()})
