"""Online shortest-distance baselines and brute-force oracles."""
from __future__ import annotations

import heapq

import numpy as np

from .graph import UNREACHABLE, DirectedGraph

ORACLE_CAP = 1000


class OracleTooLarge(MemoryError):
    pass


def dijkstra(g: DirectedGraph, src: int, adj=None) -> list:
    """Single-source distances; unreached vertices map to ``UNREACHABLE``."""
    adj = g.out_adj if adj is None else adj
    dist = [UNREACHABLE] * g.n
    dist[src] = 0
    heap = [(0, src)]
    done = [False] * g.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def bidirectional_dijkstra(g: DirectedGraph, u: int, v: int):
    """Point-to-point distance, alternating forward and backward searches.

    The side whose queue top is smaller is expanded.  The search stops once
    ``top_f + top_b >= best``: no unexplored meeting can beat ``best``.
    """
    if u == v:
        return 0
    dist = ({u: 0}, {v: 0})
    done = (set(), set())
    heaps = ([(0, u)], [(0, v)])
    adjs = (g.out_adj, g.in_adj)
    best = UNREACHABLE
    while heaps[0] and heaps[1]:
        if heaps[0][0][0] + heaps[1][0][0] >= best:
            break
        side = 0 if heaps[0][0][0] <= heaps[1][0][0] else 1
        d, x = heapq.heappop(heaps[side])
        if x in done[side]:
            continue
        done[side].add(x)
        mine, other = dist[side], dist[1 - side]
        for y, w in adjs[side][x]:
            nd = d + w
            if nd < mine.get(y, UNREACHABLE):
                mine[y] = nd
                heapq.heappush(heaps[side], (nd, y))
            if y in other:
                cand = nd + other[y]
                if cand < best:
                    best = cand
    return best


def all_pairs_oracle(g: DirectedGraph, cap: int = ORACLE_CAP) -> np.ndarray:
    """Floyd-Warshall distance matrix (float64, ``inf`` when unreachable)."""
    n = g.n
    if n > cap:
        raise OracleTooLarge(f"all-pairs oracle capped at {cap} vertices, graph has {n}")
    d = np.full((n, n), np.inf)
    for u, v, w in g.edges():
        d[u, v] = min(d[u, v], w)
    np.fill_diagonal(d, 0.0)
    for k in range(n):
        np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :], out=d)
    return d
