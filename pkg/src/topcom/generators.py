"""Seeded random directed graphs."""
from __future__ import annotations

import numpy as np

from .graph import DirectedGraph


def erdos_renyi(n: int, degree: float, seed: int = 0, weighted: bool = False,
                max_weight: int = 10) -> DirectedGraph:
    """G(n, p) digraph with ``p = degree / (n - 1)``, so E[|E|] = degree * n.

    Vertex labels are ``"0" .. str(n - 1)``; weighted graphs draw integer
    weights uniformly from ``1..max_weight``.
    """
    if n < 0 or degree < 0:
        raise ValueError("n and degree must be non-negative")
    if n > 1 and degree > n - 1:
        raise ValueError(f"degree {degree} exceeds n - 1 = {n - 1}")
    rng = np.random.default_rng(seed)
    edges = []
    if n > 1 and degree > 0:
        p = degree / (n - 1)
        counts = rng.binomial(n - 1, p, size=n)
        for u in range(n):
            k = int(counts[u])
            if not k:
                continue
            tgt = rng.choice(n - 1, size=k, replace=False)
            tgt[tgt >= u] += 1
            ws = rng.integers(1, max_weight + 1, size=k) if weighted else np.ones(k, dtype=int)
            edges.extend((u, int(v), int(w)) for v, w in zip(np.sort(tgt).tolist(),
                                                             ws.tolist()))
    return DirectedGraph.from_edges([str(i) for i in range(n)], edges, weighted)


def random_dag(n: int, p: float, seed: int = 0, weighted: bool = False,
               max_weight: int = 10) -> DirectedGraph:
    """Random DAG: each forward pair ``u < v`` is an edge with probability ``p``."""
    rng = np.random.default_rng(seed)
    edges = []
    for u in range(n - 1):
        hits = np.nonzero(rng.random(n - u - 1) < p)[0] + u + 1
        ws = rng.integers(1, max_weight + 1, size=len(hits)) if weighted else [1] * len(hits)
        edges.extend((u, int(v), int(w)) for v, w in zip(hits.tolist(), list(ws)))
    return DirectedGraph.from_edges([str(i) for i in range(n)], edges, weighted)


def sparse_sources(n: int, m: int, active_fraction: float, seed: int = 0) -> DirectedGraph:
    """Exactly ``m`` distinct unit edges whose sources come from a random
    ``active_fraction`` of the vertices; targets are uniform.

    Many vertices end up as pure sinks, which keeps the giant SCC small
    relative to ``n``; peer-to-peer snapshots look like this.
    """
    if not 0 < active_fraction <= 1:
        raise ValueError("active_fraction must be in (0, 1]")
    k = max(1, int(active_fraction * n))
    if m > k * (n - 1):
        raise ValueError(f"cannot place {m} edges from {k} sources")
    rng = np.random.default_rng(seed)
    srcs = rng.choice(n, size=k, replace=False)
    edges: set = set()
    while len(edges) < m:
        need = m - len(edges)
        us = srcs[rng.integers(0, k, size=need)]
        vs = rng.integers(0, n, size=need)
        for u, v in zip(us.tolist(), vs.tolist()):
            if u != v:
                edges.add((u, v))
                if len(edges) == m:
                    break
    return DirectedGraph.from_edges([str(i) for i in range(n)],
                                    [(u, v, 1) for u, v in sorted(edges)])
