"""Indexed queries vs bidirectional Dijkstra on edge-list files, merged into one CSV.

    python scripts/bench_datasets.py data/p2p-Gnutella09.txt --queries 10000 -o bench.csv
    python scripts/bench_datasets.py --proxy -o proxy.csv

``--proxy`` adds a synthetic graph with Gnutella09's |V| and |E| and a giant
SCC of similar size, for machines without the real file.
"""
from __future__ import annotations

import argparse
import csv
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from topcom.cli import CSV_FIELDS
from topcom.cli import main as cli_main
from topcom.generators import sparse_sources
from topcom.graph import dump_edge_list


@dataclass
class BenchConfig:
    queries: int = 10_000
    seed: int = 0
    weighted: bool = False
    proxy_seed: int = 2


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("graphs", nargs="*")
    ap.add_argument("--queries", type=int, default=BenchConfig.queries)
    ap.add_argument("--seed", type=int, default=BenchConfig.seed)
    ap.add_argument("--weighted", action="store_true")
    ap.add_argument("--proxy", action="store_true")
    ap.add_argument("--output", "-o", required=True)
    a = ap.parse_args(argv)
    cfg = BenchConfig(a.queries, a.seed, a.weighted)
    tmp = Path(tempfile.mkdtemp(prefix="topcom-bench-"))
    jobs = [(Path(p).stem, Path(p)) for p in a.graphs]
    if a.proxy:
        src = tmp / "gnutella_proxy.txt"
        src.write_text(dump_edge_list(sparse_sources(8114, 26013, 0.36, cfg.proxy_seed)))
        jobs.append(("gnutella09-proxy", src))
    if not jobs:
        ap.error("no graphs given (pass paths or --proxy)")
    rows = []
    for name, path in jobs:
        part = tmp / f"{name}.csv"
        args = ["bench", str(path), "--queries", str(cfg.queries), "--seed", str(cfg.seed),
                "--dataset", name, "-o", str(part)]
        if cfg.weighted:
            args.append("--weighted")
        code = cli_main(args)
        if code:
            print(f"{name}: bench exited with {code}", file=sys.stderr)
            return code
        rows += list(csv.DictReader(part.open()))
    with open(a.output, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
