"""Command-line entry point: build, query, batch-query, bench, synth, stats."""
from __future__ import annotations

import argparse
import csv
import io as _io
import random
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from . import io as index_io
from .baselines import bidirectional_dijkstra
from .condensation import DEFAULT_SCC_CAP, SccTooLarge, tarjan_scc
from .generators import erdos_renyi
from .graph import UNREACHABLE, EdgeListError, dump_edge_list, graph_stats, load_edge_list
from .indexer import DistanceIndex, LabelOverflow, UnknownVertex, build_index
from .query import QueryError, batch_query, query

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_UNKNOWN_VERTEX = 3
EXIT_RESOURCE = 4
EXIT_MISMATCH = 5

CSV_FIELDS = ["method", "dataset", "n_queries", "mean_us", "median_us", "p99_us",
              "build_s", "index_bytes"]


def _fmt(d) -> str:
    return "unreachable" if d == UNREACHABLE else str(d)


def _err(msg: str):
    print(f"topcom: {msg}", file=sys.stderr)


def _read_graph(path: str, weighted: bool):
    with open(path, "rb") as fh:
        return load_edge_list(fh, weighted)


@dataclass
class DagSummary:
    vertices: int
    edges: int
    dag_nodes: int
    dag_edges: int
    largest_scc: int
    t: int


def summarize(idx: DistanceIndex) -> DagSummary:
    return DagSummary(idx.n, idx.n_edges, len(idx.members), len(idx.dag_edges),
                      max((len(m) for m in idx.members), default=0), idx.t)


def cmd_build(args) -> int:
    g = _read_graph(args.input, args.weighted)
    t0 = time.perf_counter()
    idx = build_index(g, scc_cap=args.cap_scc, keep_sequence=args.verbose)
    elapsed = time.perf_counter() - t0
    size = index_io.save(idx, args.output)
    s = summarize(idx)
    print(f"build_s {elapsed:.3f}")
    print(f"t {s.t}")
    print(f"V_DAG {s.dag_nodes}")
    print(f"E_DAG {s.dag_edges}")
    print(f"largest_scc {s.largest_scc}")
    print(f"label_entries {idx.label_size()}")
    print(f"index_bytes {size}")
    if args.verbose and idx.sequence is not None:
        for i, gm in enumerate(idx.sequence.modified):
            print(f"iteration {i} nodes {len(gm.level)} edges {gm.edge_count()} topo {gm.topo}")
    return EXIT_OK


def cmd_query(args) -> int:
    idx = index_io.load(args.index)
    print(_fmt(query(idx, args.source, args.target).distance))
    return EXIT_OK


def _read_pairs(path: str) -> list:
    pairs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 2:
                raise EdgeListError(lineno, "expected 'src dst'")
            pairs.append((toks[0], toks[1]))
    return pairs


def cmd_batch_query(args) -> int:
    idx = index_io.load(args.index)
    answers = batch_query(idx, _read_pairs(args.pairs))
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w")
    try:
        for a in answers:
            out.write(_fmt(a.distance) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _latencies(fn, pairs):
    res, lat = [], []
    clock = time.perf_counter
    for u, v in pairs:
        t0 = clock()
        r = fn(u, v)
        lat.append(clock() - t0)
        res.append(r)
    return res, lat


def _row(method, dataset, lat, build_s, nbytes) -> dict:
    us = sorted(x * 1e6 for x in lat)
    p99 = us[min(len(us) - 1, int(round(0.99 * (len(us) - 1))))]
    return {"method": method, "dataset": dataset, "n_queries": len(us),
            "mean_us": f"{sum(us) / len(us):.3f}", "median_us": f"{statistics.median(us):.3f}",
            "p99_us": f"{p99:.3f}", "build_s": build_s, "index_bytes": nbytes}


def bench_pairs(n: int, count: int, seed: int) -> list:
    rng = random.Random(seed)
    return [(rng.randrange(n), rng.randrange(n)) for _ in range(count)]


def cmd_bench(args) -> int:
    if args.queries < 1:
        _err("--queries must be >= 1")
        return EXIT_USAGE
    g = _read_graph(args.graph, args.weighted)
    dataset = args.dataset or args.graph
    if args.index:
        idx = index_io.load(args.index)
        if idx.graph_labels != g.labels:
            _err("index vertex map does not match the graph")
            return EXIT_IO
        build_s = ""
        nbytes = index_io.file_size(args.index)
    else:
        t0 = time.perf_counter()
        idx = build_index(g, scc_cap=args.cap_scc)
        build_s = f"{time.perf_counter() - t0:.3f}"
        nbytes = len(index_io.dumps(idx).encode())
    if g.n == 0:
        _err("graph has no vertices")
        return EXIT_USAGE
    pairs = bench_pairs(g.n, args.queries, args.seed)
    got, lat_idx = _latencies(lambda u, v: query(idx, u, v).distance, pairs)
    ref, lat_bd = _latencies(lambda u, v: bidirectional_dijkstra(g, u, v), pairs)
    for (u, v), a, b in zip(pairs, got, ref):
        if a != b and not (a != UNREACHABLE and b != UNREACHABLE and abs(a - b) <= 1e-9):
            _err(f"mismatch on ({g.labels[u]}, {g.labels[v]}): index {a}, bidirectional {b}")
            return EXIT_MISMATCH
    rows = [_row("topcom", dataset, lat_idx, build_s, nbytes),
            _row("bidirectional_dijkstra", dataset, lat_bd, "", "")]
    st = graph_stats(g)
    s = summarize(idx)
    print(f"dataset {dataset}: |V|={st.n} |E|={st.m} AD={st.avg_degree:.2f} MD={st.max_degree} "
          f"V_DAG={s.dag_nodes} E_DAG={s.dag_edges} largest_scc={s.largest_scc}")
    for r in rows:
        print(f"{r['method']:<24} mean {r['mean_us']:>12} us  median {r['median_us']:>12} us  "
              f"p99 {r['p99_us']:>12} us")
    mean_idx = sum(lat_idx) / len(lat_idx)
    mean_bd = sum(lat_bd) / len(lat_bd)
    print(f"speedup {mean_bd / mean_idx:.1f}x over {len(pairs)} queries, answers verified")
    if args.threads > 1:
        t0 = time.perf_counter()
        with ThreadPoolExecutor(args.threads) as ex:
            list(ex.map(lambda p: query(idx, *p), pairs))
        wall = time.perf_counter() - t0
        print(f"throughput {len(pairs) / wall:.0f} queries/s with {args.threads} threads")
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_synth(args) -> int:
    try:
        g = erdos_renyi(args.n, args.degree, args.seed, args.weighted)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    text = dump_edge_list(g)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_stats(args) -> int:
    g = _read_graph(args.graph, args.weighted)
    st = graph_stats(g)
    part = tarjan_scc(g)
    cross = {(part.scc_of[u], part.scc_of[v]) for u, v, _ in g.edges()
             if part.scc_of[u] != part.scc_of[v]}
    info = dict(asdict(st), dag_nodes=part.count, dag_edges=len(cross),
                largest_scc=part.largest())
    for k, v in info.items():
        print(f"{k} {v:.2f}" if isinstance(v, float) else f"{k} {v}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="topcom", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build and save an index from an edge list")
    p.add_argument("input")
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--cap-scc", type=int, default=DEFAULT_SCC_CAP)
    p.add_argument("--verbose", "-v", action="store_true", help="per-iteration diagnostics")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("query", help="distance between two vertex labels")
    p.add_argument("index")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(fn=cmd_query)

    p = sub.add_parser("batch-query", help="answer a file of 'src dst' lines")
    p.add_argument("index")
    p.add_argument("pairs")
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_batch_query)

    p = sub.add_parser("bench", help="indexed queries vs bidirectional Dijkstra")
    p.add_argument("graph")
    p.add_argument("--index", help="prebuilt index; built in-process when omitted")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--queries", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dataset", help="name for the CSV dataset column")
    p.add_argument("--output", "-o", help="CSV path (stdout when omitted)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cap-scc", type=int, default=DEFAULT_SCC_CAP)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("synth", help="seeded Erdos-Renyi edge list")
    p.add_argument("n", type=int)
    p.add_argument("degree", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("stats", help="graph and condensation statistics")
    p.add_argument("graph")
    p.add_argument("--weighted", action="store_true")
    p.set_defaults(fn=cmd_stats)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (UnknownVertex, QueryError) as exc:
        _err(f"unknown vertex: {exc}")
        return EXIT_UNKNOWN_VERTEX
    except (SccTooLarge, LabelOverflow, MemoryError) as exc:
        _err(str(exc))
        return EXIT_RESOURCE
    except (OSError, EdgeListError, index_io.IndexFormatError) as exc:
        _err(str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
