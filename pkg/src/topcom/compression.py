"""Topological levels, DAG modification and iterative level-halving compression.

Nodes of every compressed graph are integer ids into one shared ``origins``
list.  Surviving nodes keep their id across iterations; fictitious and copied
stand-ins get fresh ids whose :class:`NodeOrigin` points at the node they
stand in for.

Edge annotations carry *real* distances: auxiliary edges between a node and
its stand-in contribute 0 to every tuple.  ``Edge.aux`` counts the auxiliary
hops folded into an edge, so ``real + aux`` is the distance measured in the
modified graph when every auxiliary edge weighs 1.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Union

from .condensation import (CondensedDag, SccTables, TupleSet, compose, compose_fan,
                           identity, merge_min)
from .graph import UNREACHABLE

ORIGINAL, FICTITIOUS, COPIED = "original", "fictitious", "copied"
EDGE, AUX, DUMMY = "edge", "aux", "dummy"


class CycleError(ValueError):
    def __init__(self, vertex):
        super().__init__(f"graph has a cycle through node {vertex}")
        self.vertex = vertex


@dataclass(frozen=True)
class NodeOrigin:
    kind: str
    parent: int  # node this one stands in for; itself when original
    original: int  # node of the initial DAG


def get_original(origins: list, node: int) -> int:
    return origins[node].original


@dataclass
class Edge:
    tuples: TupleSet
    aux: int = 0
    kind: str = EDGE

    def real(self):
        """Scalar distance (single-tuple annotations)."""
        return min(self.tuples.values(), default=UNREACHABLE)

    def modified(self):
        return self.real() + self.aux


def _merge_edge(old: Edge | None, new: Edge) -> Edge:
    if old is None:
        return new
    tuples = merge_min(old.tuples, new.tuples)
    keep = old if (old.real(), old.aux) <= (new.real(), new.aux) else new
    return Edge(tuples, keep.aux, keep.kind)


@dataclass
class LeveledDag:
    level: dict  # node -> level
    succ: dict  # node -> {node: Edge}
    pred: dict

    @property
    def topo(self) -> int:
        return max(self.level.values(), default=0)

    @property
    def nodes(self) -> list:
        return sorted(self.level)

    def edges(self):
        for u in sorted(self.succ):
            for v in sorted(self.succ[u]):
                yield u, v, self.succ[u][v]

    def edge_count(self) -> int:
        return sum(len(s) for s in self.succ.values())

    def add_edge(self, u, v, e: Edge):
        cur = self.succ[u].get(v)
        merged = _merge_edge(cur, e)
        self.succ[u][v] = merged
        self.pred[v][u] = merged

    def remove_edge(self, u, v):
        del self.succ[u][v]
        del self.pred[v][u]

    def add_node(self, node, level):
        self.level[node] = level
        self.succ.setdefault(node, {})
        self.pred.setdefault(node, {})

    def copy(self) -> "LeveledDag":
        return LeveledDag(dict(self.level),
                          {u: dict(s) for u, s in self.succ.items()},
                          {v: dict(p) for v, p in self.pred.items()})


def compute_topo_levels(nodes, edges: dict) -> LeveledDag:
    """Level 1 for sources, else 1 + max parent level (one Kahn pass)."""
    g = LeveledDag({}, {}, {})
    for v in nodes:
        g.add_node(v, 0)
    for (u, v), e in edges.items():
        if not isinstance(e, Edge):
            e = Edge(e)
        g.add_edge(u, v, e)
    indeg = {v: len(g.pred[v]) for v in g.level}
    queue = deque(sorted(v for v, d in indeg.items() if d == 0))
    for v in queue:
        g.level[v] = 1
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in g.succ[u]:
            if g.level[u] + 1 > g.level[v]:
                g.level[v] = g.level[u] + 1
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if seen != len(g.level):
        stuck = min(v for v, d in indeg.items() if d > 0)
        raise CycleError(stuck)
    return g


@dataclass
class DummyEdgeStore:
    entries: dict = field(default_factory=dict)  # (x, y) -> Edge
    levels: dict = field(default_factory=dict)  # (x, y) -> (level x, level y) at creation

    def add(self, x, y, e: Edge, lx: int, ly: int):
        self.entries[(x, y)] = _merge_edge(self.entries.get((x, y)), e)
        self.levels[(x, y)] = (lx, ly)

    def __contains__(self, key):
        return key in self.entries

    def __len__(self):
        return len(self.entries)

    def distance(self, x, y):
        """Real scalar distance of dummy edge ``(x, y)``."""
        return self.entries[(x, y)].real()

    def modified_distance(self, x, y):
        """Distance with each auxiliary hop counted as 1."""
        return self.entries[(x, y)].modified()


def modify(g: LeveledDag, origins: list, tables: SccTables):
    """Insert fictitious/copied stand-ins for multi-level edges, collect dummy edges.

    Returns ``(g_m, dummies)``; ``origins`` grows in place.  ``g`` is untouched.
    """
    gm = g.copy()
    lev = gm.level
    fict: dict = {}
    copy: dict = {}

    def stand_in(node, kind, level):
        nid = len(origins)
        origins.append(NodeOrigin(kind, node, origins[node].original))
        gm.add_node(nid, level)
        return nid

    for u, v, e in list(g.edges()):
        lu, lv = lev[u], lev[v]
        gap = lv - lu
        if gap <= 1 or (lu % 2 == 0 and lv % 2 == 0):
            continue
        gm.remove_edge(u, v)
        src, dst = u, v
        if lu % 2 == 1:
            if u not in fict:
                fict[u] = stand_in(u, FICTITIOUS, lu + 1)
            src = fict[u]
            srcs = {x for x, _ in e.tuples}
            aux = gm.succ[u].get(src)
            gm.add_edge(u, src, Edge(merge_min(aux.tuples if aux else {}, identity(srcs)), 1, AUX))
        if lv % 2 == 1 and not (lu % 2 == 1 and gap == 2):
            if v not in copy:
                copy[v] = stand_in(v, COPIED, lv - 1)
            dst = copy[v]
            dsts = {y for _, y in e.tuples}
            aux = gm.succ[dst].get(v)
            gm.add_edge(dst, v, Edge(merge_min(aux.tuples if aux else {}, identity(dsts)), 1, AUX))
        gm.add_edge(src, dst, e)

    dummies = DummyEdgeStore()
    for w in sorted(lev):
        lw = lev[w]
        if lw % 2 == 0:
            continue
        ins = [(x, ex) for x, ex in sorted(gm.pred[w].items()) if lw - lev[x] == 1]
        outs = [(y, ey) for y, ey in sorted(gm.succ[w].items()) if lev[y] - lw == 1]
        if not ins or not outs:
            continue
        mid = origins[w].original
        combos = compose_fan([ex.tuples for _, ex in ins], mid,
                             [ey.tuples for _, ey in outs], tables)
        for i, (x, ex) in enumerate(ins):
            for j, (y, ey) in enumerate(outs):
                t = combos[i][j]
                if t:
                    dummies.add(x, y, Edge(t, ex.aux + ey.aux, DUMMY), lev[x], lev[y])
    return gm, dummies


def compress(gm: LeveledDag, dummies: DummyEdgeStore) -> LeveledDag:
    """Drop odd-level nodes, halve even levels, promote dummy edges to edges."""
    out = LeveledDag({}, {}, {})
    for v, lv in gm.level.items():
        if lv % 2 == 0:
            out.add_node(v, lv // 2)
    for u, v, e in gm.edges():
        if u in out.level and v in out.level:
            out.add_edge(u, v, e)
    for (x, y), e in sorted(dummies.entries.items()):
        out.add_edge(x, y, e)
    return out


@dataclass
class CompressionSequence:
    compressed: list  # G^0 .. G^t
    modified: list  # G_m, G^1_m, .. G^t_m
    dummies: list  # one store per modified graph
    origins: list
    tables: SccTables

    @property
    def t(self) -> int:
        return len(self.modified) - 1

    def logical_level(self, i: int, node) -> int:
        """Level of ``node`` of ``G^i_m`` expressed in ``G_m`` units."""
        return self.modified[i].level[node] << i


def compress_all(dag: Union[CondensedDag, LeveledDag], tables: SccTables | None = None,
                 origins: list | None = None) -> CompressionSequence:
    if isinstance(dag, CondensedDag):
        tables = dag.tables
        g = compute_topo_levels(range(dag.node_count), dag.edges)
    else:
        g = dag
    if origins is None:
        origins = [NodeOrigin(ORIGINAL, v, v) for v in range(max(g.level, default=-1) + 1)]
    compressed, modified, stores = [g], [], []
    while True:
        gm, store = modify(g, origins, tables)
        modified.append(gm)
        stores.append(store)
        if g.topo <= 1:
            break
        nxt = compress(gm, store)
        expected = g.topo // 2
        if nxt.topo != expected:
            raise AssertionError(f"halving violated: {g.topo} -> {nxt.topo}")
        canon = compute_topo_levels(nxt.level, {(u, v): e for u, v, e in nxt.edges()})
        if any(canon.level[v] > lv for v, lv in nxt.level.items()):
            raise AssertionError("compressed levels are not a valid leveling")
        g = nxt
        compressed.append(g)
    return CompressionSequence(compressed, modified, stores, origins, tables)


def dummy_edge_distance_condensed(tables: SccTables, in_edge: TupleSet, mid: int,
                                  out_edge: TupleSet) -> TupleSet:
    """Tuples of a dummy edge through SCC ``mid``, one per (source, target) terminal pair."""
    return compose(in_edge, mid, out_edge, tables)


def merge_dummy_edges(existing: TupleSet, new: TupleSet) -> TupleSet:
    return merge_min(existing, new)
