"""Command-line interface: ``updraw gen | layout | draw | subdivide | verify | oracle | bench``.

Exit codes: 0 ok, 2 bad usage or parameters, 3 failed precondition,
4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

from . import colourings as col
from . import constructions as con
from . import subdivisions as sub
from .errors import (BudgetExceeded, CycleDetected, InvalidLayout, InvalidParams,
                     MissingAssignment, NotOneQueue, NotStrongStar, NotTopological,
                     NotUpwardPlanar, NotATree, SpanViolation, UpdrawError)
from .geometry import Drawing3D, bounding_box, verify_drawing
from .graph import FAMILIES, Dag, degeneracy, depth_labels, generate, topological_order
from .io import (drawing_from_json, drawing_to_json, export_obj, graph_to_json,
                 queue_layout_from_json, queue_layout_to_json, read_graph,
                 track_layout_from_json, track_layout_to_json, write_json)
from .layouts import verify_queue_layout, verify_track_layout, wrap
from . import oracle

EXIT_OK, EXIT_PARAMS, EXIT_PRECONDITION, EXIT_VERIFY = 0, 2, 3, 4

PRECONDITION_ERRORS = (InvalidLayout, NotATree, SpanViolation, NotStrongStar,
                       NotTopological, NotUpwardPlanar, NotOneQueue, BudgetExceeded,
                       MissingAssignment)

DRAW_METHODS = ("moment", "coloured", "longpath", "track3", "track4", "track5",
                "tree", "caterpillar", "twobend")


class CommandFailed(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


# --------------------------------------------------------------------------
# drawing dispatch
# --------------------------------------------------------------------------

def _colouring(g: Dag, name: str) -> col.Colouring:
    if name == "greedy":
        return col.greedy_colouring(g)
    if name == "longpath":
        return col.longest_path_colouring(g)
    if name == "harmonious":
        return col.harmonious_colouring(g)
    raise InvalidParams(f"unknown colouring {name!r}")


def build_drawing(g: Dag, method: str, layout: dict | None = None,
                  colouring: str = "greedy") -> tuple[Drawing3D, dict]:
    """Run one drawing pipeline; returns the drawing and a stats dict."""
    stats: dict[str, Any] = {"method": method, "n": g.n, "m": g.m}
    if method == "moment":
        d = con.moment_curve_drawing(g)
        stats["bound_volume"] = 4 * g.n ** 3
    elif method == "coloured":
        c = _colouring(g, colouring)
        d = con.coloured_upward_drawing(g, c)
        k = max(c.c, 1)
        stats.update(colours=c.c, bound_box=[k, 4 * k * k * g.n, 4 * k * g.n])
    elif method == "longpath":
        d = con.long_path_drawing(g)
        stats["bound_Z"] = depth_labels(g).longest
    elif method in ("track3", "track4", "track5"):
        if layout is None:
            raise InvalidParams(f"method {method} needs --layout")
        tl = track_layout_from_json(layout, n=g.n)
        fn = {"track3": con.track_drawing_3, "track4": con.track_drawing_4,
              "track5": con.track_drawing_5}[method]
        d = fn(g, tl)
        stats["tracks"] = tl.num_tracks
    elif method == "tree":
        ql, tl = wrap(g, con.tree_span2_layout(g), 2)
        d = con.track_drawing_5(g, tl)
        stats.update(tracks=tl.num_tracks, queues=ql.num_queues,
                     bound_box=[4, 4, math.ceil(7 * g.n / 5)])
    elif method == "caterpillar":
        ql, tl = wrap(g, con.caterpillar_span1_layout(g), 1)
        d = con.track_drawing_3(g, tl)
        stats.update(tracks=tl.num_tracks, queues=ql.num_queues, bound_box=[2, 2, g.n])
    elif method == "twobend":
        ql = sub.rainbow_queue_layout(g, topological_order(g))
        d = sub.two_bend_drawing(g, ql)
        stats.update(queues=ql.num_queues, bound_volume=4 * g.n ** 2)
    else:
        raise InvalidParams(f"unknown method {method!r}")
    if d.points:
        bb = bounding_box(d)
        stats.update(box=[bb.X, bb.Y, bb.Z], volume=bb.volume)
    return d, stats


def within_bounds(stats: dict) -> bool:
    box = stats.get("box")
    if box is None:
        return True
    if "bound_volume" in stats and stats["volume"] > stats["bound_volume"]:
        return False
    if "bound_box" in stats and any(a > b for a, b in zip(box, stats["bound_box"])):
        return False
    if "bound_Z" in stats and box[2] != stats["bound_Z"]:
        return False
    return True


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    params = {k: v for k, v in (("n", args.n), ("m", args.m), ("seed", args.seed)) if v is not None}
    g = generate(args.family, params)
    write_json(graph_to_json(g, args.family), args.out)
    return EXIT_OK


def cmd_layout(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    out: dict[str, Any] = {"method": args.method}
    if args.method == "tree":
        span = con.tree_span2_layout(g)
        ql, tl = wrap(g, span, 2)
        out.update(span_layout=track_layout_to_json(span), tracks=track_layout_to_json(tl),
                   queues=queue_layout_to_json(ql))
    elif args.method == "caterpillar":
        span = con.caterpillar_span1_layout(g)
        ql, tl = wrap(g, span, 1)
        out.update(span_layout=track_layout_to_json(span), tracks=track_layout_to_json(tl),
                   queues=queue_layout_to_json(ql))
    elif args.method == "strong-star":
        c = col.strong_star_colouring(g, args.variant)
        tl = col.colouring_to_upward_tracks(g, c)
        d, _ = degeneracy(g)
        bound = 5 * math.sqrt(2 * d * g.m)
        out.update(colours=c.c, reference_bound=bound, above_reference=c.c > bound,
                   tracks=track_layout_to_json(tl))
        if c.c > bound:
            _log(f"note: {c.c} colours exceed the reference 5*sqrt(2dm) = {bound:.1f}")
    elif args.method == "rainbow":
        ql = sub.rainbow_queue_layout(g, topological_order(g))
        out.update(queues=queue_layout_to_json(ql))
    else:
        raise InvalidParams(f"unknown layout method {args.method!r}")
    if args.verify:
        problems = {}
        if "tracks" in out:
            r = verify_track_layout(g, track_layout_from_json(out["tracks"], n=g.n))
            if not r.ok:
                problems["tracks"] = r.counts()
        if "queues" in out:
            r = verify_queue_layout(g, queue_layout_from_json(out["queues"]))
            if not r.ok:
                problems["queues"] = r.counts()
        out["ok"] = not problems
        write_json(out, args.out)
        if problems:
            raise CommandFailed(EXIT_VERIFY, f"layout verification failed: {problems}")
        return EXIT_OK
    write_json(out, args.out)
    return EXIT_OK


def cmd_draw(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    layout = json.loads(Path(args.layout).read_text()) if args.layout else None
    if layout is not None and "tracks" in layout and isinstance(layout["tracks"], dict) \
            and "tracks" in layout["tracks"]:
        layout = layout["tracks"]  # accept the output of `updraw layout`
    d, stats = build_drawing(g, args.method, layout, args.colouring)
    if args.export == "obj":
        target = args.obj_out or (str(Path(args.out).with_suffix(".obj")) if args.out else None)
        if target is None:
            print(export_obj(g, d), end="")
        else:
            Path(target).write_text(export_obj(g, d))
    if args.export == "json" or args.out:
        write_json(drawing_to_json(d, upward=True), args.out)
    _log(json.dumps(stats))
    if args.verify:
        report = verify_drawing(g, d, require_upward=True)
        if not report.ok:
            raise CommandFailed(EXIT_VERIFY, f"drawing verification failed: {report.counts()}")
    return EXIT_OK


def cmd_subdivide(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    out: dict[str, Any] = {"method": args.method}
    if args.method in ("twoqueue", "fourtrack"):
        cert = sub.bandwidth_of(g, topological_order(g))
        out["bandwidth"] = cert.b
        if args.method == "twoqueue":
            s, ql, _ = sub.two_queue_subdivision(g, cert)
            out["queues"] = queue_layout_to_json(ql)
            report = verify_queue_layout(s.graph, ql)
        else:
            s, tl = sub.four_track_subdivision(g, cert)
            out["tracks"] = track_layout_to_json(tl)
            report = verify_track_layout(s.graph, tl)
    elif args.method == "planar":
        if not args.points:
            raise InvalidParams("method planar needs --points")
        pts = json.loads(Path(args.points).read_text())
        s, span, ql, tl = sub.upward_planar_subdivision(g, pts)
        out.update(span_layout=track_layout_to_json(span), queues=queue_layout_to_json(ql),
                   tracks=track_layout_to_json(tl))
        report = verify_track_layout(s.graph, tl)
        q_report = verify_queue_layout(s.graph, ql)
        report.violations.extend(q_report.violations)
    else:
        raise InvalidParams(f"unknown subdivision method {args.method!r}")
    out["graph"] = graph_to_json(s.graph)
    out["max_division_vertices"] = s.max_division
    out["ok"] = report.ok
    write_json(out, args.out)
    if args.verify and not report.ok:
        raise CommandFailed(EXIT_VERIFY, f"layout verification failed: {report.counts()}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    results: dict[str, Any] = {}
    if args.drawing:
        d = drawing_from_json(json.loads(Path(args.drawing).read_text()))
        r = verify_drawing(g, d, require_upward=args.upward)
        results["drawing"] = r.counts()
    if args.layout:
        obj = json.loads(Path(args.layout).read_text())
        if "tracks" in obj and isinstance(obj["tracks"], dict) and "tracks" in obj["tracks"]:
            obj = obj["tracks"]
        if "tracks" in obj:
            results["tracks"] = verify_track_layout(g, track_layout_from_json(obj, n=g.n)).counts()
        if "queues" in obj or "order" in obj:
            q = obj.get("queues", obj) if "order" not in obj else obj
            results["queues"] = verify_queue_layout(g, queue_layout_from_json(q)).counts()
    if not results:
        raise InvalidParams("give --drawing and/or --layout")
    ok = all(not v for v in results.values())
    print(json.dumps({"ok": ok, "violations": results}))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_oracle(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    budget = oracle.OracleBudget(max_n=args.max_n, max_states=args.max_states)
    if args.what == "queue":
        value: Any = oracle.exact_upward_queue_number(g, budget)
    elif args.what == "track":
        value = oracle.exact_upward_track_number(g, args.max_t, budget)
    else:
        cert = oracle.exact_directed_bandwidth(g, budget)
        value = {"b": cert.b, "order": list(cert.order.sequence)}
    print(json.dumps({"what": args.what, "value": value}))
    return EXIT_OK


# --------------------------------------------------------------------------
# bench
# --------------------------------------------------------------------------

def _bench_instances(suite: str, sizes: Sequence[int], seeds: Sequence[int]) -> list[tuple]:
    jobs = []
    for n in sizes:
        for seed in seeds:
            if suite == "table1":
                jobs += [(suite, "complete", "moment", n, seed),
                         (suite, "random_dag", "coloured", n, seed),
                         (suite, "random_dag", "longpath", n, seed),
                         (suite, "random_dag", "strongstar", n, seed),
                         (suite, "random_tree", "tree", n, seed),
                         (suite, "random_caterpillar", "caterpillar", n, seed)]
            elif suite == "trees":
                jobs += [(suite, "random_tree", "tree", n, seed),
                         (suite, "random_caterpillar", "caterpillar", n, seed)]
            elif suite == "subdivisions":
                jobs += [(suite, "complete", "twobend", n, seed),
                         (suite, "complete", "twoqueue", n, seed),
                         (suite, "complete", "fourtrack", n, seed),
                         (suite, "random_dag", "twoqueue", n, seed),
                         (suite, "random_dag", "fourtrack", n, seed)]
            else:
                raise InvalidParams(f"unknown suite {suite!r}")
    return jobs


def run_bench_instance(job: tuple) -> dict:
    suite, family, method, n, seed = job
    params: dict[str, Any] = {"n": n, "seed": seed}
    if family == "random_dag":
        params["m"] = min(2 * n, n * (n - 1) // 2)
    g = generate(family, params)
    row: dict[str, Any] = {"suite": suite, "family": family, "method": method, "n": n,
                           "m": g.m, "seed": seed}
    try:
        if method in ("twoqueue", "fourtrack"):
            cert = sub.bandwidth_of(g, topological_order(g))
            row["bandwidth"] = cert.b
            if method == "twoqueue":
                s, ql, _ = sub.two_queue_subdivision(g, cert)
                ok = verify_queue_layout(s.graph, ql).ok and ql.num_queues <= 2
                row.update(queues=ql.num_queues, max_division=s.max_division,
                           bound=f"queues<=2, division<={max((cert.b - 1) // 2, 0)}")
                ok = ok and s.max_division <= max((cert.b - 1) // 2, 0)
            else:
                s, tl = sub.four_track_subdivision(g, cert)
                ok = verify_track_layout(s.graph, tl).ok and tl.num_tracks <= 4
                row.update(tracks=tl.num_tracks, max_division=s.max_division,
                           bound=f"tracks<=4, division<={cert.b}")
                ok = ok and s.max_division <= cert.b
            row["ok"] = ok
            return row
        if method == "strongstar":
            c = col.strong_star_colouring(g)
            tl = col.colouring_to_upward_tracks(g, c)
            d = con.track_drawing_general(g, tl)
            bb = bounding_box(d)
            dd, _ = degeneracy(g)
            row.update(colours=c.c, tracks=tl.num_tracks, box=[bb.X, bb.Y, bb.Z],
                       volume=bb.volume, bound=f"reference colours 5*sqrt(2dm)={5 * math.sqrt(2 * dd * g.m):.1f}")
            row["ok"] = verify_drawing(g, d, require_upward=True).ok
            return row
        d, stats = build_drawing(g, method)
        report = verify_drawing(g, d, require_upward=True)
        row.update({k: v for k, v in stats.items() if k not in ("method", "n", "m")})
        row["bound"] = _bound_text(stats)
        row["within_bound"] = within_bounds(stats)
        row["ok"] = report.ok and row["within_bound"]
        if not report.ok:
            row["violations"] = report.counts()
    except UpdrawError as exc:
        row.update(ok=False, error=f"{type(exc).__name__}: {exc}")
    return row


def _bound_text(stats: dict) -> str:
    if "bound_volume" in stats:
        return f"volume<={stats['bound_volume']}"
    if "bound_box" in stats:
        return "box<=" + "x".join(map(str, stats["bound_box"]))
    if "bound_Z" in stats:
        return f"Z=={stats['bound_Z']}"
    return ""


def worker_count() -> int:
    env = os.environ.get("UPDRAW_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise InvalidParams("UPDRAW_THREADS must be an integer") from exc
    return os.cpu_count() or 1


def run_bench(suite: str, sizes: Sequence[int], seeds: Sequence[int],
              workers: int | None = None) -> list[dict]:
    jobs = _bench_instances(suite, sizes, seeds)
    workers = workers or worker_count()
    if workers <= 1 or len(jobs) <= 1:
        return [run_bench_instance(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(run_bench_instance, jobs))


def format_table(rows: Sequence[dict]) -> str:
    cols = ["family", "method", "n", "seed", "box", "volume", "tracks", "queues", "bound", "ok"]
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[k]) for row in cells)) if cells else len(c)
              for k, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    seeds = [int(s) for s in args.seeds.split(",") if s]
    rows = run_bench(args.suite, sizes, seeds)
    jsonl = "\n".join(json.dumps(r) for r in rows) + "\n"
    if args.report:
        Path(args.report).write_text(jsonl)
    print(format_table(rows))
    failed = [r for r in rows if not r["ok"]]
    if failed:
        _log(f"{len(failed)} of {len(rows)} instances failed")
        return EXIT_VERIFY
    return EXIT_OK


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="updraw", description="Upward 3D grid drawings of dags.")
    sp = p.add_subparsers(dest="command", required=True)

    g = sp.add_parser("gen", help="generate a graph family member")
    g.add_argument("family", choices=sorted(set(FAMILIES) | {"nested_example", "gn", "tree",
                                                               "caterpillar", "random"}))
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen)

    lay = sp.add_parser("layout", help="compute a track or queue layout")
    lay.add_argument("input")
    lay.add_argument("--method", required=True, choices=["tree", "caterpillar", "strong-star", "rainbow"])
    lay.add_argument("--variant", default="sqrt_dm", choices=["sqrt_dm", "m_two_thirds"])
    lay.add_argument("--no-verify", dest="verify", action="store_false")
    lay.add_argument("-o", "--out")
    lay.set_defaults(func=cmd_layout)

    dr = sp.add_parser("draw", help="compute a 3D grid drawing")
    dr.add_argument("input")
    dr.add_argument("--method", required=True, choices=DRAW_METHODS)
    dr.add_argument("--layout", help="track layout JSON for track3/track4/track5")
    dr.add_argument("--colouring", default="greedy", choices=["greedy", "longpath", "harmonious"])
    dr.add_argument("--verify", dest="verify", action="store_true", default=True)
    dr.add_argument("--no-verify", dest="verify", action="store_false")
    dr.add_argument("--export", choices=["json", "obj"], default="json")
    dr.add_argument("--obj-out")
    dr.add_argument("-o", "--out")
    dr.set_defaults(func=cmd_draw)

    su = sp.add_parser("subdivide", help="subdivide for few queues or tracks")
    su.add_argument("input")
    su.add_argument("--method", required=True, choices=["twoqueue", "fourtrack", "planar"])
    su.add_argument("--points", help="JSON list of [x, y] for method planar")
    su.add_argument("--no-verify", dest="verify", action="store_false")
    su.add_argument("-o", "--out")
    su.set_defaults(func=cmd_subdivide)

    ve = sp.add_parser("verify", help="check a drawing or layout file")
    ve.add_argument("input")
    ve.add_argument("--drawing")
    ve.add_argument("--layout")
    ve.add_argument("--upward", action="store_true")
    ve.set_defaults(func=cmd_verify)

    orc = sp.add_parser("oracle", help="exact values for tiny graphs")
    orc.add_argument("input")
    orc.add_argument("--what", required=True, choices=["queue", "track", "bandwidth"])
    orc.add_argument("--max-t", type=int, default=8)
    orc.add_argument("--max-n", type=int)
    orc.add_argument("--max-states", type=int, default=5_000_000)
    orc.set_defaults(func=cmd_oracle)

    be = sp.add_parser("bench", help="run an experiment suite")
    be.add_argument("suite", choices=["table1", "trees", "subdivisions"])
    be.add_argument("--sizes", default="10,50,100")
    be.add_argument("--seeds", default="0")
    be.add_argument("--report", help="JSON lines output path")
    be.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CommandFailed as exc:
        _log(f"error: {exc}")
        return exc.code
    except PRECONDITION_ERRORS as exc:
        _log(f"precondition failed: {type(exc).__name__}: {exc}")
        return EXIT_PRECONDITION
    except (InvalidParams, CycleDetected) as exc:
        _log(f"invalid input: {type(exc).__name__}: {exc}")
        return EXIT_PARAMS
    except (OSError, json.JSONDecodeError) as exc:
        _log(f"invalid input: {exc}")
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
