"""2-hop label construction over a compression sequence.

Labels are keyed by initial-DAG node (an SCC id).  ``out[k][h]`` is a tuple set
``(x in k, y in h) -> distance``; ``in[k][h]`` is ``(y in h, x in k) -> distance``,
i.e. both are oriented along the path direction.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .compression import CompressionSequence, compress_all, get_original
from .condensation import (DEFAULT_SCC_CAP, CondensedDag, SccTables, build_condensed_dag,
                           compose, dominated, merge_min, tarjan_scc)
from .graph import UNREACHABLE, DirectedGraph

OUT, IN = "out", "in"
DEFAULT_ENTRY_CAP = 10_000_000


class LabelOverflow(MemoryError):
    pass


@dataclass(frozen=True)
class Witness:
    """Where a label entry came from: node ``node`` of modified graph ``i``."""

    i: int
    node: int


@dataclass
class LabelStore:
    direction: str
    tables: SccTables
    labels: dict = field(default_factory=lambda: defaultdict(dict))
    entry_cap: int = DEFAULT_ENTRY_CAP
    # (key, hub) -> set of witnesses attaining the scalar minimum; only when tracing
    witnesses: dict | None = None

    def __getitem__(self, key) -> dict:
        return self.labels.get(key, {})

    def _put(self, key, hub, ann, wit):
        lab = self.labels[key]
        old = lab.get(hub)
        if old is None:
            if len(lab) >= self.entry_cap:
                raise LabelOverflow(f"label of {key} exceeds {self.entry_cap} entries")
            lab[hub] = dict(ann)
        else:
            lab[hub] = merge_min(old, ann)
        if self.witnesses is not None:
            new_min = min(ann.values())
            old_min = min(old.values()) if old else UNREACHABLE
            slot = (key, hub)
            if new_min < old_min:
                self.witnesses[slot] = set(wit)
            elif new_min == old_min:
                self.witnesses.setdefault(slot, set()).update(wit)


def recursive_insert(store: LabelStore, key, hub, ann, memo: dict | None = None, wit=()):
    """Insert ``<hub, ann>`` into ``key``'s label, then every entry of ``hub``'s label.

    ``memo`` holds what this top-level call already pushed per hub; a repeat
    arrival that improves nothing is cut, which leaves the minimum-per-hub
    result of the plain recursion unchanged.
    """
    if not ann:
        return
    if hub == key:
        raise AssertionError(f"label of {key} would reference itself")
    if memo is None:
        memo = {}
    seen = memo.get(hub)
    if seen is not None and dominated(ann, seen):
        return
    memo[hub] = ann if seen is None else merge_min(seen, ann)
    store._put(key, hub, ann, wit)
    inner = store.labels.get(hub)
    if not inner:
        return
    tables = store.tables
    wits = store.witnesses
    for x, ann2 in list(inner.items()):
        if store.direction == OUT:
            nxt = compose(ann, hub, ann2, tables)
        else:
            nxt = compose(ann2, hub, ann, tables)
        sub_wit = wits.get((hub, x), ()) if wits is not None else ()
        recursive_insert(store, key, x, nxt, memo, sub_wit)


def _build(seq: CompressionSequence, direction: str, down_to: int, trace: bool,
           entry_cap: int) -> LabelStore:
    store = LabelStore(direction, seq.tables, entry_cap=entry_cap,
                       witnesses={} if trace else None)
    origins = seq.origins
    for i in range(seq.t, down_to - 1, -1):
        gm = seq.modified[i]
        adj = gm.succ if direction == OUT else gm.pred
        for v in gm.nodes:
            if gm.level[v] % 2 == 0:
                continue
            ov = get_original(origins, v)
            for w in sorted(adj[v]):
                ow = get_original(origins, w)
                if ow == ov:
                    continue
                recursive_insert(store, ov, ow, adj[v][w].tuples, {}, (Witness(i, w),))
    return store


def build_out_index(seq: CompressionSequence, down_to: int = 0, trace: bool = False,
                    entry_cap: int = DEFAULT_ENTRY_CAP) -> LabelStore:
    """Outgoing labels, most-compressed graph first.

    Edge annotations already hold real distances, so the unit correction for
    a fictitious target is implicit (see ``Edge.aux``).
    """
    return _build(seq, OUT, down_to, trace, entry_cap)


def build_in_index(seq: CompressionSequence, down_to: int = 0, trace: bool = False,
                   entry_cap: int = DEFAULT_ENTRY_CAP) -> LabelStore:
    return _build(seq, IN, down_to, trace, entry_cap)


def finalize(labels) -> dict:
    """Keep one minimal annotation per (key, hub); keys and hubs sorted.

    Accepts ``{key: {hub: ann}}`` or ``{key: [(hub, ann), ...]}`` with
    duplicates; scalar annotations are allowed in the list form.
    """
    out = {}
    for key in sorted(labels):
        entries = labels[key]
        items = entries.items() if isinstance(entries, dict) else entries
        best: dict = {}
        for hub, ann in items:
            if isinstance(ann, dict):
                best[hub] = merge_min(best.get(hub, {}), ann)
            else:
                best[hub] = min(best.get(hub, UNREACHABLE), ann)
        out[key] = {h: best[h] for h in sorted(best)}
    return out


class Ann:
    """Finalized tuple-set annotation prepared for query-time composition."""

    __slots__ = ("triples", "lo", "by_first", "by_second")

    def __init__(self, tuples: dict):
        self.triples = tuple(sorted((x, y, d) for (x, y), d in tuples.items()))
        self.lo = min(d for _, _, d in self.triples)
        by_first: dict = defaultdict(list)
        by_second: dict = defaultdict(list)
        for x, y, d in self.triples:
            by_first[x].append((y, d))
            by_second[y].append((x, d))
        self.by_first = dict(by_first)
        self.by_second = dict(by_second)

    def __eq__(self, other):
        return isinstance(other, Ann) and self.triples == other.triples

    def __repr__(self):
        return f"Ann({list(self.triples)})"


@dataclass
class DistanceIndex:
    graph_labels: tuple
    weighted: bool
    n_edges: int
    t: int
    scc_of: tuple
    members: tuple
    tables: SccTables
    dag_edges: dict  # (A, B) -> tuple set
    out_labels: dict  # scc -> {hub: scalar | Ann}
    in_labels: dict
    sequence: CompressionSequence | None = None
    out_store: LabelStore | None = None
    in_store: LabelStore | None = None
    _ids: dict | None = None

    @property
    def n(self) -> int:
        return len(self.graph_labels)

    def vertex_id(self, label: str) -> int:
        if self._ids is None:
            self._ids = {lab: i for i, lab in enumerate(self.graph_labels)}
        try:
            return self._ids[label]
        except KeyError:
            raise UnknownVertex(label) from None

    def singleton(self, scc: int) -> bool:
        return len(self.members[scc]) == 1

    def label_size(self) -> int:
        return sum(len(v) for v in self.out_labels.values()) + \
            sum(len(v) for v in self.in_labels.values())

    def scalar_labels(self, direction: str = OUT) -> dict:
        """``{vertex label: {hub vertex label: distance}}``; singleton SCCs only."""
        src = self.out_labels if direction == OUT else self.in_labels
        lab = self.graph_labels
        res = {}
        for k in range(len(self.members)):
            if not self.singleton(k):
                continue
            row = {}
            for h, ann in src.get(k, {}).items():
                if self.singleton(h):
                    row[lab[self.members[h][0]]] = ann if not isinstance(ann, Ann) else ann.lo
            res[lab[self.members[k][0]]] = row
        return res


class UnknownVertex(LookupError):
    pass


def _prepare(labels: dict, members) -> dict:
    res = {}
    for key, row in labels.items():
        prepared = {}
        for hub, tuples in row.items():
            if len(members[key]) == 1 and len(members[hub]) == 1:
                prepared[hub] = next(iter(tuples.values()))
            else:
                prepared[hub] = Ann(tuples)
        if prepared:
            res[key] = prepared
    return res


def build_index(g: DirectedGraph, scc_cap: int = DEFAULT_SCC_CAP, trace: bool = False,
                entry_cap: int = DEFAULT_ENTRY_CAP, keep_sequence: bool = False) -> DistanceIndex:
    """SCC condensation, compression, out/in labels, finalization."""
    part = tarjan_scc(g)
    dag = build_condensed_dag(g, part, scc_cap)
    seq = compress_all(dag)
    out_store = build_out_index(seq, trace=trace, entry_cap=entry_cap)
    in_store = build_in_index(seq, trace=trace, entry_cap=entry_cap)
    out_l = _prepare(finalize(out_store.labels), part.members)
    in_l = _prepare(finalize(in_store.labels), part.members)
    keep = keep_sequence or trace
    return DistanceIndex(g.labels, g.weighted, g.m, seq.t, part.scc_of, part.members,
                         dag.tables, dag.edges, out_l, in_l,
                         seq if keep else None,
                         out_store if keep else None,
                         in_store if keep else None)


def index_from_dag(dag: CondensedDag, **kw) -> DistanceIndex:
    return build_index(dag.graph, **kw)
