"""Synthetic stand-in at the Gnutella09 scale.

Not an acceptance criterion: it only shows that the speedup check behaves
sensibly on a graph with the same |V|, |E| and a similar condensation when
the real file is absent.
"""
import random
import time

import pytest

from topcom import bidirectional_dijkstra, build_index, query, tarjan_scc
from topcom.generators import sparse_sources


@pytest.mark.slow
def test_proxy_speedup_and_exactness():
    g = sparse_sources(8114, 26013, 0.36, seed=2)
    p = tarjan_scc(g)
    assert 2400 <= p.largest() <= 2900
    idx = build_index(g)
    rng = random.Random(9)
    pairs = [(rng.randrange(g.n), rng.randrange(g.n)) for _ in range(10_000)]
    t0 = time.perf_counter()
    got = [query(idx, u, v).distance for u, v in pairs]
    t_idx = time.perf_counter() - t0
    t0 = time.perf_counter()
    ref = [bidirectional_dijkstra(g, u, v) for u, v in pairs]
    t_bd = time.perf_counter() - t0
    print(f"proxy: largest SCC {p.largest()}, |V_DAG| {p.count}, speedup {t_bd / t_idx:.1f}x")
    assert got == ref
    assert t_bd / t_idx >= 10
