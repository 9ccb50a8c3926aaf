"""SCC condensation with terminal-tuple edge annotations.

A tuple set maps ``(src_terminal, dst_terminal) -> distance``.  Between two
SCCs A and B it records, for every terminal pair, the shortest distance of a
path that leaves A and enters B through one direct cross edge.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra

from .graph import UNREACHABLE, DirectedGraph

TupleSet = dict  # (x, y) -> distance

DEFAULT_SCC_CAP = 50_000


class SccTooLarge(MemoryError):
    pass


@dataclass(frozen=True)
class SccPartition:
    scc_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.members)

    def largest(self) -> int:
        return max((len(m) for m in self.members), default=0)


def tarjan_scc(g: DirectedGraph) -> SccPartition:
    """Maximal SCCs, numbered by ascending smallest member id.

    Iterative Tarjan; with this numbering a DAG's SCC ids equal vertex ids.
    """
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    adj = g.out_adj
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = adj[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i][0]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    scc_of = [0] * n
    for sid, comp in enumerate(comps):
        for v in comp:
            scc_of[v] = sid
    return SccPartition(tuple(scc_of), tuple(tuple(c) for c in comps))


@dataclass
class SccTables:
    """Dense within-SCC all-pairs distances (``None`` for singletons)."""

    partition: SccPartition
    local: tuple[int, ...]
    mats: list
    integral: bool = True

    def num(self, x):
        if x == UNREACHABLE:
            return UNREACHABLE
        return int(x) if self.integral else float(x)

    def dist(self, s: int, x: int, y: int):
        mat = self.mats[s]
        if mat is None:
            return 0
        return self.num(mat[self.local[x], self.local[y]])


def _within_tables(g: DirectedGraph, p: SccPartition, cap: int) -> SccTables:
    local = [0] * g.n
    for comp in p.members:
        for i, v in enumerate(comp):
            local[v] = i
    integral = g.integral()
    mats: list = []
    for sid, comp in enumerate(p.members):
        k = len(comp)
        if k > cap:
            raise SccTooLarge(f"SCC {sid} has {k} members, cap is {cap}")
        if k == 1:
            mats.append(None)
            continue
        rows, cols, vals = [], [], []
        for v in comp:
            for w, wt in g.out_adj[v]:
                if p.scc_of[w] == sid:
                    rows.append(local[v])
                    cols.append(local[w])
                    vals.append(wt)
        sub = csr_matrix((np.asarray(vals, dtype=float), (rows, cols)), shape=(k, k))
        d = _sp_dijkstra(sub, directed=True)
        mats.append(d.astype(np.int64) if integral else d)
    return SccTables(p, tuple(local), mats, integral)


def identity(terms) -> TupleSet:
    return {(x, x): 0 for x in terms}


def compose(t_in: TupleSet, mid: int, t_out: TupleSet, tables: SccTables) -> TupleSet:
    """Chain ``t_in`` into SCC ``mid`` and out again via ``t_out``.

    ``result[(a, e)] = min t_in[(a, b)] + d_mid(b, c) + t_out[(c, e)]``.
    """
    if not t_in or not t_out:
        return {}
    if tables.mats[mid] is None:
        res: TupleSet = {}
        for (a, _), d1 in t_in.items():
            for (_, e), d2 in t_out.items():
                v = d1 + d2
                if v < res.get((a, e), UNREACHABLE):
                    res[(a, e)] = v
        return res
    return compose_fan([t_in], mid, [t_out], tables)[0][0]


def compose_fan(t_ins: list, mid: int, t_outs: list, tables: SccTables) -> list:
    """``compose`` for every (in, out) pair; returns ``res[i][j]``.

    Each in-set is reduced once to a per-source row over the exit terminals,
    so a large middle SCC costs |in| matrix slices instead of |in| * |out|.
    """
    mat = tables.mats[mid]
    if mat is None:
        outs = [[(e, d) for (_, e), d in t.items()] for t in t_outs]
        res = []
        for t in t_ins:
            row = []
            ins = [(a, d) for (a, _), d in t.items()]
            for out in outs:
                r: TupleSet = {}
                for a, d1 in ins:
                    for e, d2 in out:
                        v = d1 + d2
                        if v < r.get((a, e), UNREACHABLE):
                            r[(a, e)] = v
                row.append(r)
            res.append(row)
        return res
    loc = tables.local
    C = sorted({c for t in t_outs for (c, _) in t})
    cpos = {c: j for j, c in enumerate(C)}
    cloc = [loc[c] for c in C]
    # each out-set as (column into C, destination) pairs grouped by destination
    outs = []
    for t in t_outs:
        items = sorted((e, cpos[c], d) for (c, e), d in t.items())
        dests = [e for e, _, _ in items]
        starts = [i for i in range(len(items)) if i == 0 or dests[i] != dests[i - 1]]
        outs.append((np.asarray([j for _, j, _ in items], dtype=np.intp),
                     np.asarray([d for _, _, d in items], dtype=float),
                     np.asarray(starts, dtype=np.intp),
                     [dests[i] for i in starts]))
    res = []
    for t in t_ins:
        srcs = sorted({a for (a, _) in t})
        B = sorted({b for (_, b) in t})
        apos = {a: i for i, a in enumerate(srcs)}
        bpos = {b: i for i, b in enumerate(B)}
        vec = np.full((len(srcs), len(B)), np.inf)
        for (a, b), d in t.items():
            vec[apos[a], bpos[b]] = d
        sub = mat[np.ix_([loc[b] for b in B], cloc)].astype(float)
        if len(B) == 1:
            g = vec + sub
        elif len(srcs) * len(B) * len(C) <= 4_000_000:
            g = (vec[:, :, None] + sub[None, :, :]).min(axis=1)
        else:
            g = np.stack([(row[:, None] + sub).min(axis=0) for row in vec])
        row = []
        for cols, d2, starts, dests in outs:
            red = np.minimum.reduceat(g[:, cols] + d2[None, :], starts, axis=1)
            ai, ei = np.nonzero(np.isfinite(red))
            vals = red[ai, ei]
            vals = vals.astype(np.int64).tolist() if tables.integral else vals.tolist()
            row.append({(srcs[i], dests[j]): x
                        for i, j, x in zip(ai.tolist(), ei.tolist(), vals)})
        res.append(row)
    return res


def merge_min(existing: TupleSet, new: TupleSet) -> TupleSet:
    """Union keeping the minimum distance per terminal pair."""
    out = dict(existing)
    for k, d in new.items():
        if d < out.get(k, UNREACHABLE):
            out[k] = d
    return out


def dominated(new: TupleSet, old: TupleSet) -> bool:
    """True when ``new`` improves no entry of ``old``."""
    for k, d in new.items():
        if d < old.get(k, UNREACHABLE):
            return False
    return True


@dataclass
class CondensedDag:
    graph: DirectedGraph
    partition: SccPartition
    tables: SccTables
    edges: dict = field(default_factory=dict)  # (A, B) -> TupleSet

    @property
    def node_count(self) -> int:
        return self.partition.count

    def successors(self):
        succ: dict = defaultdict(dict)
        for (a, b), t in self.edges.items():
            succ[a][b] = t
        return succ


def build_condensed_dag(g: DirectedGraph, p: SccPartition | None = None,
                        scc_cap: int = DEFAULT_SCC_CAP) -> CondensedDag:
    if p is None:
        p = tarjan_scc(g)
    tables = _within_tables(g, p, scc_cap)
    cross: dict = defaultdict(dict)
    for u, v, w in g.edges():
        a, b = p.scc_of[u], p.scc_of[v]
        if a != b:
            cross[(a, b)][(u, v)] = w
    edges = {}
    for (a, b), raw in sorted(cross.items()):
        if tables.mats[a] is None and tables.mats[b] is None:
            edges[(a, b)] = dict(raw)
            continue
        srcs = {x for x, _ in raw}
        dsts = {y for _, y in raw}
        left = compose(identity(srcs), a, raw, tables)
        edges[(a, b)] = compose(left, b, identity(dsts), tables)
    return CondensedDag(g, p, tables, edges)


def within_scc_distance(dag: CondensedDag, s: int, x: int, y: int):
    scc_of = dag.partition.scc_of
    if scc_of[x] != s or scc_of[y] != s:
        raise ValueError(f"vertices {x}, {y} are not both members of SCC {s}")
    return dag.tables.dist(s, x, y)
