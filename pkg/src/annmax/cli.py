"""Batch command-line interface: query answering, verification, benchmarks.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from .dragging import build_drag_index
from .geometry import Metric, Point
from .instances import boundary_tie_instance, random_instance, random_points
from .l1_engine import query as l1_query
from .l1_engine import top_k as l1_top_k
from .l2_engine import build_partition_tree, l2_query
from .oracle import brute_query, brute_top_k
from .results import QueryStats


class CliError(Exception):
    pass


def read_points(path: str) -> list[Point]:
    """CSV point file: one "x,y" per line, optional "x,y" header.

    Ids are assigned from 0 in data-line order.
    """
    points: list[Point] = []
    next_id = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if lineno == 1 and line.lower().replace(" ", "") == "x,y":
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise CliError(f"{path}:{lineno}: expected 'x,y', got {line!r}")
            try:
                x, y = float(parts[0]), float(parts[1])
            except ValueError:
                raise CliError(f"{path}:{lineno}: invalid number in {line!r}") from None
            if not (math.isfinite(x) and math.isfinite(y)):
                raise CliError(f"{path}:{lineno}: non-finite coordinate")
            points.append(Point(x, y, next_id))
            next_id += 1
    return points


def read_queries(path: str) -> list[dict]:
    """Query file: one JSON object per line with fields
    {"q": [[x, y], ...], "k": optional int >= 1, "metric": optional "l1"/"l2"}."""
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CliError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict) or "q" not in obj or not obj["q"]:
                raise CliError(f"{path}:{lineno}: record needs a non-empty 'q' list")
            try:
                qpts = [Point(float(x), float(y), i) for i, (x, y) in enumerate(obj["q"])]
            except (TypeError, ValueError):
                raise CliError(f"{path}:{lineno}: 'q' must be [[x, y], ...]") from None
            k = obj.get("k")
            if k is not None and (not isinstance(k, int) or k < 1):
                raise CliError(f"{path}:{lineno}: 'k' must be a positive integer")
            metric = obj.get("metric")
            if metric is not None and metric not in ("l1", "l2"):
                raise CliError(f"{path}:{lineno}: 'metric' must be 'l1' or 'l2'")
            records.append({"q": qpts, "k": k, "metric": metric, "line": lineno})
    return records


def serialize_points(points: Sequence[Point]) -> str:
    return "x,y\n" + "\n".join(f"{_num(p.x)},{_num(p.y)}" for p in points) + "\n"


def _num(v: float):
    return int(v) if float(v).is_integer() else v


def _answer_record(index, tree, metric: Metric, qpts, k: Optional[int], topk: bool, query_index: int) -> dict:
    stats = QueryStats()
    t0 = time.perf_counter_ns()
    if metric is Metric.L1:
        if topk:
            results = l1_top_k(index, qpts, k or 1, stats)
        else:
            results = [l1_query(index, qpts, stats)]
    else:
        results = [l2_query(tree, qpts, stats)]
    elapsed = time.perf_counter_ns() - t0
    return {
        "query_index": query_index,
        "answers": [
            {"id": r.point.id, "x": _num(r.point.x), "y": _num(r.point.y), "g": r.g} for r in results
        ],
        "stats": {
            "nodes_visited": stats.nodes_visited,
            "drag_queries": stats.drag_queries,
            "time_ns": elapsed,
        },
    }


def cmd_query(args) -> int:
    points = read_points(args.points)
    if not points:
        raise CliError(f"{args.points}: no points")
    records = read_queries(args.queries)
    base_metric = Metric(args.metric)
    metrics = [Metric(r["metric"]) if r["metric"] else base_metric for r in records]
    if args.topk:
        for rec, metric in zip(records, metrics):
            if metric is Metric.L2:
                raise CliError(
                    f"{args.queries}:{rec['line']}: top-k queries are supported for the L1 metric only"
                )
    index = build_drag_index(points) if any(m is Metric.L1 for m in metrics) else None
    tree = build_partition_tree(points) if any(m is Metric.L2 for m in metrics) else None

    def solve(i: int) -> dict:
        return _answer_record(index, tree, metrics[i], records[i]["q"], records[i]["k"], args.topk, i)

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            outputs = list(pool.map(solve, range(len(records))))
    else:
        outputs = [solve(i) for i in range(len(records))]
    for out in outputs:
        print(json.dumps(out))
    return 0


def _verify_instances(args):
    rng = np.random.default_rng(args.seed)
    metric = Metric(args.metric)
    for i in range(args.random):
        if metric is Metric.L1 and i % 5 == 4:
            yield i, boundary_tie_instance(rng)
        elif metric is Metric.L1:
            yield i, random_instance(rng, n_max=200, m_max=50)
        else:
            yield i, random_instance(rng, n_max=200, m_max=40)


def cmd_verify(args) -> int:
    metric = Metric(args.metric)
    if args.random is not None:
        instances = _verify_instances(args)
        total = args.random
    else:
        if not args.points or not args.queries:
            raise CliError("verify needs --points and --queries, or --random N")
        points = read_points(args.points)
        records = read_queries(args.queries)
        instances = ((i, (points, r["q"], r["k"] or 1)) for i, r in enumerate(records))
        total = len(records)

    ok = 0
    for i, (P, Q, k) in instances:
        mismatch = _check_instance(P, Q, k, metric, fault=args.inject_fault)
        if mismatch:
            print(f"mismatch at instance {i} (seed {args.seed}): {mismatch}")
            print(f"reproduce: --seed {args.seed} --random {args.random or total} --metric {args.metric}")
            print(f"{ok}/{total} ok before first mismatch")
            return 1
        ok += 1
    print(f"{ok}/{total} ok")
    return 0


def _check_instance(P, Q, k, metric: Metric, fault: bool = False) -> Optional[str]:
    if metric is Metric.L1:
        index = build_drag_index(P)
        got = l1_query(index, Q)
        want = brute_query(P, Q, Metric.L1)
        g_got = got.g + (1 if fault else 0)
        if (g_got, got.point.id) != (want.g, want.point.id):
            return f"query: got (g={g_got}, id={got.point.id}), want (g={want.g}, id={want.point.id})"
        got_k = l1_top_k(index, Q, k)
        want_k = brute_top_k(P, Q, Metric.L1, k)
        got_seq = [(r.g, r.point.id) for r in got_k]
        want_seq = [(r.g, r.point.id) for r in want_k]
        if got_seq != want_seq:
            return f"top-{k}: sequences differ at {_first_diff(got_seq, want_seq)}"
        return None
    tree = build_partition_tree(P)
    got = l2_query(tree, Q)
    want = brute_query(P, Q, Metric.L2)
    g_got = got.g + (1 if fault else 0)
    if got.point.id != want.point.id and not fault:
        return f"query point: got id={got.point.id}, want id={want.point.id}"
    if abs(g_got - want.g) > 1e-9 * max(1.0, abs(want.g)):
        return f"query value: got g={g_got}, want g={want.g}"
    return None


def _first_diff(a, b):
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return f"position {i}: got {x}, want {y}"
    return f"length {len(a)} vs {len(b)}"


def cmd_bench(args) -> int:
    metric = Metric(args.metric)
    rng = np.random.default_rng(args.seed)
    P = random_points(rng, args.n)
    queries = [random_points(rng, max(1, args.m)) for _ in range(args.queries)]

    t0 = time.perf_counter()
    structure = build_drag_index(P) if metric is Metric.L1 else build_partition_tree(P)
    build_s = time.perf_counter() - t0

    lat = []
    stats = QueryStats()
    for Q in queries:
        t1 = time.perf_counter()
        if metric is Metric.L1:
            l1_query(structure, Q, stats)
        else:
            l2_query(structure, Q, stats)
        lat.append(time.perf_counter() - t1)
    lat.sort()
    p50 = lat[len(lat) // 2]
    p95 = lat[min(len(lat) - 1, int(0.95 * len(lat)))]
    if metric is Metric.L1:
        aux_name, aux = "mean_drag_queries", stats.drag_queries / max(1, len(queries))
    else:
        aux_name, aux = "mean_nodes_visited", stats.nodes_visited / max(1, stats.f_triangle_calls)

    rows = [
        ("n", args.n),
        ("m", args.m),
        ("metric", args.metric),
        ("build_s", f"{build_s:.6f}"),
        ("query_p50_s", f"{p50:.9f}"),
        ("query_p95_s", f"{p95:.9f}"),
        (aux_name, f"{aux:.3f}"),
    ]
    if args.json:
        print(json.dumps({k: v for k, v in rows}))
    else:
        width = max(len(k) for k, _ in rows)
        for k, v in rows:
            print(f"{k:<{width}}  {v}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="annmax", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("query", help="answer queries from files")
    q.add_argument("--points", required=True)
    q.add_argument("--queries", required=True)
    q.add_argument("--metric", choices=["l1", "l2"], default="l1")
    q.add_argument("--topk", action="store_true", help="answer top-k (L1 only; k from each record)")
    q.add_argument("--threads", type=int, default=1)
    q.set_defaults(fn=cmd_query)

    v = sub.add_parser("verify", help="compare engine answers against brute force")
    v.add_argument("--points")
    v.add_argument("--queries")
    v.add_argument("--metric", choices=["l1", "l2"], default="l1")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--random", type=int, help="verify N seeded random instances instead of files")
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(fn=cmd_verify)

    b = sub.add_parser("bench", help="build and query timing")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--m", type=int, default=100)
    b.add_argument("--metric", choices=["l1", "l2"], default="l1")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--queries", type=int, default=100)
    b.add_argument("--json", action="store_true")
    b.set_defaults(fn=cmd_bench)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if getattr(args, "n", 1) < 1:
            raise CliError("--n must be at least 1")
        return args.fn(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
