"""Directed graph model and SNAP-style edge-list ingestion."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import IO, Iterable, Union

# Semantic infinity; absorbs addition (inf + x == inf).
UNREACHABLE = math.inf

Number = Union[int, float]


class EdgeListError(ValueError):
    """Malformed edge-list line."""

    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """Normalized directed graph: dense ids, no self-loops, no parallel edges.

    ``out_adj[u]`` and ``in_adj[v]`` hold ``(neighbor, weight)`` pairs sorted by
    neighbor id.  Instances are never mutated after construction.
    """

    labels: tuple[str, ...]
    out_adj: tuple[tuple[tuple[int, Number], ...], ...]
    in_adj: tuple[tuple[tuple[int, Number], ...], ...]
    weighted: bool = False

    @classmethod
    def from_edges(cls, labels: Iterable[str], edges: Iterable[tuple[int, int, Number]],
                   weighted: bool = False) -> "DirectedGraph":
        labels = tuple(labels)
        n = len(labels)
        best: dict[tuple[int, int], Number] = {}
        for u, v, w in edges:
            if u == v:
                continue
            if not weighted:
                w = 1
            key = (u, v)
            if key not in best or w < best[key]:
                best[key] = w
        out_adj: list[list] = [[] for _ in range(n)]
        in_adj: list[list] = [[] for _ in range(n)]
        for (u, v), w in sorted(best.items()):
            out_adj[u].append((v, w))
            in_adj[v].append((u, w))
        for lst in in_adj:
            lst.sort()
        return cls(labels, tuple(map(tuple, out_adj)), tuple(map(tuple, in_adj)), weighted)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.out_adj)

    def edges(self):
        for u, adj in enumerate(self.out_adj):
            for v, w in adj:
                yield u, v, w

    def edge_set(self) -> set[tuple[str, str, Number]]:
        """Edges keyed by external label; independent of internal numbering."""
        lab = self.labels
        return {(lab[u], lab[v], w) for u, v, w in self.edges()}

    def index_of(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def integral(self) -> bool:
        return all(isinstance(w, int) for _, _, w in self.edges())


def _parse_weight(tok: str, lineno: int) -> Number:
    try:
        w: Number = int(tok)
    except ValueError:
        try:
            w = float(tok)
        except ValueError:
            raise EdgeListError(lineno, f"non-numeric weight {tok!r}") from None
        if not math.isfinite(w):
            raise EdgeListError(lineno, f"non-finite weight {tok!r}")
        if w.is_integer():
            w = int(w)
    if w <= 0:
        raise EdgeListError(lineno, f"weight must be positive, got {tok}")
    return w


def load_edge_list(source: Union[IO, bytes, str], weighted: bool = False) -> DirectedGraph:
    """Parse ``src dst [weight]`` lines; ``#`` starts a comment line.

    Vertex labels get dense ids in order of first appearance on a kept
    (non-self-loop) edge.  Parallel edges collapse to the minimum weight.
    """
    if isinstance(source, bytes):
        source = io.StringIO(source.decode())
    elif isinstance(source, str):
        source = io.StringIO(source)

    ids: dict[str, int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int, Number]] = []
    for lineno, raw in enumerate(source, 1):
        if isinstance(raw, bytes):
            raw = raw.decode()
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if weighted and len(toks) != 3:
            raise EdgeListError(lineno, f"expected 'src dst weight', got {len(toks)} tokens")
        if not weighted and len(toks) not in (2, 3):
            raise EdgeListError(lineno, f"expected 'src dst [weight]', got {len(toks)} tokens")
        w = _parse_weight(toks[2], lineno) if len(toks) == 3 else 1
        a, b = toks[0], toks[1]
        if a == b:
            continue
        for lab in (a, b):
            if lab not in ids:
                ids[lab] = len(labels)
                labels.append(lab)
        edges.append((ids[a], ids[b], w))
    return DirectedGraph.from_edges(labels, edges, weighted)


def dump_edge_list(g: DirectedGraph) -> str:
    """Serialize as an edge list, lines sorted by internal (src, dst)."""
    lab = g.labels
    if g.weighted:
        lines = [f"{lab[u]} {lab[v]} {w}" for u, v, w in g.edges()]
    else:
        lines = [f"{lab[u]} {lab[v]}" for u, v, _ in g.edges()]
    return "".join(line + "\n" for line in lines)


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    avg_degree: float
    max_degree: int


def graph_stats(g: DirectedGraph) -> GraphStats:
    """|V|, |E|, AD = |E|/|V| and MD = max over vertices of max(in, out) degree."""
    n, m = g.n, g.m
    md = 0
    for u in range(n):
        md = max(md, len(g.out_adj[u]), len(g.in_adj[u]))
    return GraphStats(n, m, m / n if n else 0.0, md)


def reverse(g: DirectedGraph) -> DirectedGraph:
    return DirectedGraph(g.labels, g.in_adj, g.out_adj, g.weighted)
