import math

import pytest

from topcom import build_condensed_dag, dijkstra, load_edge_list
from topcom.compression import (COPIED, FICTITIOUS, ORIGINAL, CycleError, Edge, compress,
                                compress_all, compute_topo_levels, dummy_edge_distance_condensed,
                                merge_dummy_edges, modify)
from topcom.graph import DirectedGraph

from conftest import random_digraph
from worked_examples import DAG_LEVELS, FIRST_DUMMIES, MERGED, VIA_B, VIA_D


def names(g, seq):
    """Node id -> printable name: x, x' (fictitious) or x1 (copied)."""
    def name(node):
        o = seq.origins[node]
        base = g.labels[o.original]
        return base + {ORIGINAL: "", FICTITIOUS: "'", COPIED: "1"}[o.kind]
    return name


def _seq(g):
    return compress_all(build_condensed_dag(g))


def chain(k, w=1):
    return DirectedGraph.from_edges([str(i) for i in range(k)],
                                    [(i, i + 1, w) for i in range(k - 1)], True)


def test_levels_fixture(dag):
    seq = _seq(dag)
    lev = seq.compressed[0].level
    assert {dag.labels[v]: l for v, l in lev.items()} == DAG_LEVELS
    assert seq.compressed[0].topo == 7


def test_levels_trivial():
    assert compute_topo_levels([0], {}).level == {0: 1}
    g = chain(6)
    lev = compute_topo_levels(range(6), {(u, v): {(u, v): w} for u, v, w in g.edges()})
    assert [lev.level[i] for i in range(6)] == [1, 2, 3, 4, 5, 6]


def test_cycle_reported():
    with pytest.raises(CycleError) as exc:
        compute_topo_levels(range(3), {(0, 1): {}, (1, 2): {}, (2, 1): {}})
    assert exc.value.vertex in (1, 2)


def test_case1_fictitious_source(dag):
    seq = _seq(dag)
    name = names(dag, seq)
    gm = seq.modified[0]
    edges = {(name(u), name(v)) for u, v, _ in gm.edges()}
    assert ("b", "l") not in edges
    assert {("b", "b'"), ("b'", "l")} <= edges
    lev = {name(v): l for v, l in gm.level.items()}
    assert lev["b'"] == 2


def test_case3_both_stand_ins(dag):
    seq = _seq(dag)
    name = names(dag, seq)
    gm = seq.modified[0]
    edges = {(name(u), name(v)) for u, v, _ in gm.edges()}
    assert {("h", "h'"), ("h'", "r1"), ("r1", "r")} <= edges
    assert ("h", "r") not in edges


def test_dummy_edges_fixture(dag):
    seq = _seq(dag)
    name = names(dag, seq)
    store = seq.dummies[0]
    got = {(name(x), name(y)) for x, y in store.entries}
    assert got == FIRST_DUMMIES
    for x, y in store.entries:
        assert store.modified_distance(x, y) == 2
        lx, ly = store.levels[(x, y)]
        assert ly - lx == 2
    dh = [k for k in store.entries if (name(k[0]), name(k[1])) == ("d", "h'")][0]
    # the hop into the stand-in is auxiliary: one real unit remains
    assert store.distance(*dh) == 1


def test_first_compression(dag):
    seq = _seq(dag)
    assert seq.t == 2
    assert [g.topo for g in seq.compressed] == [7, 3, 1]
    assert [g.topo for g in seq.modified] == [7, 3, 1]
    name = names(dag, seq)
    assert sorted(name(v) for v in seq.compressed[2].level) == sorted(["h'", "k", "l", "m", "e'"])
    assert seq.compressed[2].edge_count() == 0


def test_merge_dummy_edges():
    assert merge_dummy_edges(VIA_D, VIA_B) == MERGED
    assert merge_dummy_edges(VIA_D, {}) == VIA_D
    assert merge_dummy_edges(VIA_B, VIA_B) == VIA_B


def test_condensed_dummy_tuple(scc):
    cd = build_condensed_dag(scc)
    ids = scc.index_of()
    p = cd.partition
    a, b, c = (p.scc_of[ids[x]] for x in "3 5 13".split())
    t = dummy_edge_distance_condensed(cd.tables, cd.edges[(a, b)], b, cd.edges[(b, c)])
    assert t[(ids["3"], ids["13"])] == 5


def test_condensed_dummy_singletons():
    g = load_edge_list("x y\ny z\n")
    cd = build_condensed_dag(g)
    t = dummy_edge_distance_condensed(cd.tables, cd.edges[(0, 1)], 1, cd.edges[(1, 2)])
    assert t == {(0, 2): 2}


@pytest.mark.parametrize("seed", range(8))
def test_condensed_dummy_matches_oracle(seed):
    g = random_digraph(100 + seed, 40, 0.045, weighted=True)
    cd = build_condensed_dag(g)
    p = cd.partition
    succ = cd.successors()
    checked = 0
    for (a, b), t_ab in sorted(cd.edges.items()):
        for c, t_bc in sorted(succ[b].items()):
            res = dummy_edge_distance_condensed(cd.tables, t_ab, b, t_bc)
            keep = [(u, v, w) for u, v, w in g.edges()
                    if (p.scc_of[u], p.scc_of[v]) in {(a, a), (b, b), (c, c), (a, b), (b, c)}]
            sub = DirectedGraph.from_edges(g.labels, keep, True)
            for (x, z), d in res.items():
                assert d == dijkstra(sub, x)[z]
                checked += 1
    assert checked > 0


def test_compress_two_levels():
    g = load_edge_list("x y\n")
    seq = _seq(g)
    assert seq.t == 1
    assert seq.compressed[1].level == {1: 1}


def test_chain_of_eight():
    seq = _seq(chain(8))
    g1 = seq.compressed[1]
    assert sorted(g1.level) == [1, 3, 5, 7]
    assert [(u, v, e.real()) for u, v, e in g1.edges()] == [(1, 3, 2), (3, 5, 2), (5, 7, 2)]


def test_single_vertex():
    g = DirectedGraph.from_edges(["x"], [])
    seq = _seq(g)
    assert seq.t == 0 and len(seq.modified) == 1


def test_chain_topo_sixteen():
    assert _seq(chain(16)).t == 4


def _check_invariants(g):
    seq = _seq(g)
    topo = seq.compressed[0].topo
    assert seq.t == (int(math.log2(topo)) if topo else 0)
    for i in range(seq.t):
        assert seq.compressed[i + 1].topo == seq.compressed[i].topo // 2
    assert seq.compressed[-1].topo <= 1
    base = seq.compressed[0].level
    for v, lv in base.items():
        # a node at level 2^i sits at level 1 of G^i
        if lv & (lv - 1) == 0:
            i = lv.bit_length() - 1
            assert seq.compressed[i].level[v] == 1
    for i, gm in enumerate(seq.modified):
        for u, v, e in gm.edges():
            gap = gm.level[v] - gm.level[u]
            assert gap >= 1
            assert gap == 1 or (gm.level[u] % 2 == 0 and gm.level[v] % 2 == 0)
        for (x, y), (lx, ly) in seq.dummies[i].levels.items():
            assert ly - lx == 2
            assert (gm.level[x], gm.level[y]) == (lx, ly)
    return seq


@pytest.mark.parametrize("seed", range(25))
def test_structural_invariants(seed):
    g = random_digraph(seed, 30 + 19 * seed, [0.02, 0.05, 0.15][seed % 3], weighted=True,
                       acyclic=seed % 2 == 0)
    _check_invariants(g)


def _real_distances(lg, src):
    import heapq
    dist = {src: 0}
    heap = [(0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, e in lg.succ[u].items():
            nd = d + e.real()
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


@pytest.mark.parametrize("seed", range(15))
def test_distance_preservation(seed):
    g = random_digraph(seed, 100, [0.03, 0.06, 0.12][seed % 3], weighted=True, acyclic=True)
    seq = _seq(g)
    if seq.t == 0:
        return
    g1 = seq.compressed[1]
    originals = [v for v in g1.level if seq.origins[v].kind == ORIGINAL]
    for u in originals:
        truth = dijkstra(g, u)
        got = _real_distances(g1, u)
        for v in originals:
            assert got.get(v, math.inf) == truth[v]


def test_modify_leaves_input_untouched(dag):
    seq = _seq(dag)
    g0 = seq.compressed[0]
    before = [(u, v) for u, v, _ in g0.edges()]
    modify(g0, list(seq.origins), seq.tables)
    assert [(u, v) for u, v, _ in g0.edges()] == before


def test_compress_keeps_even_levels(dag):
    seq = _seq(dag)
    g1 = compress(seq.modified[0], seq.dummies[0])
    assert all(seq.modified[0].level[v] == 2 * l for v, l in g1.level.items())
    assert isinstance(next(iter(g1.edges()))[2], Edge)
