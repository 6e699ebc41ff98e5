"""File formats: graphs, drawings, layouts and OBJ export."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import InvalidParams
from .geometry import Drawing3D, GridPoint, bounding_box
from .graph import Dag, VertexOrder
from .layouts import QueueLayout, TrackLayout


class GraphFormatError(InvalidParams):
    pass


# --------------------------------------------------------------------------
# graphs
# --------------------------------------------------------------------------

def parse_graph(text: str) -> Dag:
    """JSON ``{"n", "arcs", "name"?}`` or an edge list of ``tail head`` lines.

    Edge lists may contain blank lines and ``#`` comments; ``n`` is one
    more than the largest id seen.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from exc
        return graph_from_json(obj)
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'tail head', got {raw.strip()!r}")
        try:
            v, w = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: vertex ids must be integers") from exc
        if v < 0 or w < 0:
            raise GraphFormatError(f"line {lineno}: vertex ids must be non-negative")
        if v == w:
            raise GraphFormatError(f"line {lineno}: self-loop {v} -> {w}")
        arcs.append((v, w))
    n = max((max(a) for a in arcs), default=-1) + 1
    return Dag(n, tuple(arcs))


def graph_from_json(obj: Any) -> Dag:
    if not isinstance(obj, dict) or "n" not in obj or "arcs" not in obj:
        raise GraphFormatError("graph JSON needs keys 'n' and 'arcs'")
    try:
        arcs = tuple((int(a[0]), int(a[1])) for a in obj["arcs"])
        n = int(obj["n"])
    except (TypeError, ValueError, IndexError) as exc:
        raise GraphFormatError(f"malformed graph JSON: {exc}") from exc
    return Dag(n, arcs)


def graph_to_json(g: Dag, name: str | None = None) -> dict:
    out: dict[str, Any] = {"n": g.n, "arcs": [list(a) for a in g.arcs]}
    if name:
        out["name"] = name
    return out


def read_graph(path: str | Path) -> Dag:
    return parse_graph(Path(path).read_text())


# --------------------------------------------------------------------------
# drawings
# --------------------------------------------------------------------------

def drawing_to_json(d: Drawing3D, upward: bool = False) -> dict:
    out: dict[str, Any] = {
        "vertices": [{"id": v, "x": p.x, "y": p.y, "z": p.z} for v, p in enumerate(d.points)],
        "bends": [{"arc": list(a), "points": [list(p) for p in pts]}
                  for a, pts in sorted(d.bends.items())],
        "upward": bool(upward),
    }
    if d.points:
        bb = bounding_box(d)
        out["box"] = {"X": bb.X, "Y": bb.Y, "Z": bb.Z, "volume": bb.volume}
    return out


def drawing_from_json(obj: Any) -> Drawing3D:
    try:
        verts = sorted(obj["vertices"], key=lambda r: int(r["id"]))
        if [int(r["id"]) for r in verts] != list(range(len(verts))):
            raise GraphFormatError("drawing vertex ids must be 0..n-1")
        pts = tuple(GridPoint(int(r["x"]), int(r["y"]), int(r["z"])) for r in verts)
        bends = {(int(b["arc"][0]), int(b["arc"][1])): tuple(GridPoint(*map(int, p)) for p in b["points"])
                 for b in obj.get("bends", [])}
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed drawing JSON: {exc}") from exc
    return Drawing3D(pts, bends)


def export_obj(g: Dag, d: Drawing3D) -> str:
    """Wavefront OBJ: one ``v`` per vertex and bend, one ``l`` per arc."""
    lines = [f"v {p.x} {p.y} {p.z}" for p in d.points]
    count = len(d.points)
    for v, w in g.arcs:
        idx = [v + 1]
        for p in d.bends.get((v, w), ()):
            lines.append(f"v {p.x} {p.y} {p.z}")
            count += 1
            idx.append(count)
        idx.append(w + 1)
        lines.append("l " + " ".join(map(str, idx)))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# layouts
# --------------------------------------------------------------------------

def track_layout_to_json(tl: TrackLayout) -> dict:
    return {"tracks": {str(t): list(vs) for t, vs in tl.tracks.items()}, "upward": tl.upward}


def track_layout_from_json(obj: Any, n: int | None = None) -> TrackLayout:
    try:
        tracks = {int(t): [int(v) for v in vs] for t, vs in obj["tracks"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise GraphFormatError(f"malformed layout JSON: {exc}") from exc
    return TrackLayout.from_tracks(tracks, n=n, upward=bool(obj.get("upward", False)))


def queue_layout_to_json(ql: QueueLayout) -> dict:
    return {"order": list(ql.order.sequence),
            "queues": [[v, w, q] for (v, w), q in sorted(ql.queue.items())],
            "upward": ql.upward}


def queue_layout_from_json(obj: Any) -> QueueLayout:
    try:
        upward = bool(obj.get("upward", False))
        order = VertexOrder(tuple(int(v) for v in obj["order"]), topological=upward)
        queue = {(int(v), int(w)): int(q) for v, w, q in obj["queues"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed queue layout JSON: {exc}") from exc
    return QueueLayout(order, queue, upward)


def write_json(obj: Any, path: str | Path | None) -> None:
    text = json.dumps(obj, indent=1)
    if path is None or str(path) == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n")
