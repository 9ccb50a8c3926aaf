"""Distance queries over a finalized index, plus the hub-level predictor."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import UNREACHABLE
from .indexer import Ann, DistanceIndex, UnknownVertex


@dataclass(frozen=True)
class QueryAnswer:
    distance: float  # int for integral graphs, UNREACHABLE when no path
    hub: int | None  # SCC id of the meeting node; diagnostic only


class QueryError(LookupError):
    """Batch failure naming the offending query position."""

    def __init__(self, position: int, label: str):
        super().__init__(f"query {position}: unknown vertex {label!r}")
        self.position = position
        self.label = label


def _lo(ann):
    return ann.lo if isinstance(ann, Ann) else ann


class _Ctx:
    __slots__ = ("idx", "u", "v", "A", "B")

    def __init__(self, idx: DistanceIndex, u: int, v: int):
        self.idx, self.u, self.v = idx, u, v
        self.A, self.B = idx.scc_of[u], idx.scc_of[v]

    def d(self, s, x, y):
        return self.idx.tables.dist(s, x, y)

    def head(self, ann):
        """min over (a, h) of d_A(u, a) + ann[a, h], per exit terminal h."""
        if not isinstance(ann, Ann):
            return None
        A, u = self.A, self.u
        res: dict = {}
        for a, row in ann.by_first.items():
            da = self.d(A, u, a)
            if da == UNREACHABLE:
                continue
            for h, dd in row:
                x = da + dd
                if x < res.get(h, UNREACHABLE):
                    res[h] = x
        return res

    def tail(self, ann):
        """min over (h, b) of ann[h, b] + d_B(b, v), per entry terminal h."""
        B, v = self.B, self.v
        res: dict = {}
        for b, row in ann.by_second.items():
            db = self.d(B, b, v)
            if db == UNREACHABLE:
                continue
            for h, dd in row:
                x = dd + db
                if x < res.get(h, UNREACHABLE):
                    res[h] = x
        return res

    def bridge(self, H, f: dict, k: dict):
        """min over h1, h2 of f[h1] + d_H(h1, h2) + k[h2]."""
        if not f or not k:
            return UNREACHABLE
        tables = self.idx.tables
        mat = tables.mats[H]
        if mat is None:
            (h1, a), = f.items()
            return a + k[h1] if h1 in k else UNREACHABLE
        loc = tables.local
        h1s, h2s = list(f), list(k)
        sub = mat[np.ix_([loc[h] for h in h1s], [loc[h] for h in h2s])]
        tot = np.asarray([f[h] for h in h1s], dtype=float)[:, None] + sub + \
            np.asarray([k[h] for h in h2s], dtype=float)[None, :]
        return tables.num(tot.min())


def query(idx: DistanceIndex, u, v) -> QueryAnswer:
    """Shortest distance from ``u`` to ``v`` (vertex ids or labels)."""
    if isinstance(u, str):
        u = idx.vertex_id(u)
    if isinstance(v, str):
        v = idx.vertex_id(v)
    for x in (u, v):
        if not 0 <= x < idx.n:
            raise UnknownVertex(x)
    if u == v:
        return QueryAnswer(0, idx.scc_of[u])
    ctx = _Ctx(idx, u, v)
    A, B = ctx.A, ctx.B
    if A == B:
        d = ctx.d(A, u, v)
        return QueryAnswer(d, A if d != UNREACHABLE else None)
    oa = idx.out_labels.get(A, {})
    ib = idx.in_labels.get(B, {})
    a_single = idx.singleton(A)
    b_single = idx.singleton(B)
    best, best_hub = UNREACHABLE, None

    def offer(d, hub):
        nonlocal best, best_hub
        if d < best or (d == best and d != UNREACHABLE and hub < best_hub):
            best, best_hub = d, hub

    # v's SCC as hub of u's out label
    ann = oa.get(B)
    if ann is not None:
        if not isinstance(ann, Ann):
            offer(ann, B)
        else:
            f = ctx.head(ann) if not a_single else {h: d for h, d in ann.by_first[u]} \
                if u in ann.by_first else {}
            best_b = UNREACHABLE
            for h, dh in f.items():
                x = dh + ctx.d(B, h, v)
                if x < best_b:
                    best_b = x
            offer(best_b, B)
    # u's SCC as hub of v's in label
    ann = ib.get(A)
    if ann is not None:
        if not isinstance(ann, Ann):
            offer(ann, A)
        else:
            k = ctx.tail(ann) if not b_single else {h: d for h, d in ann.by_second[v]} \
                if v in ann.by_second else {}
            best_a = UNREACHABLE
            for h, dh in k.items():
                x = ctx.d(A, u, h) + dh
                if x < best_a:
                    best_a = x
            offer(best_a, A)
    if len(oa) > len(ib):
        small, large = ib, oa
    else:
        small, large = oa, ib
    for H in sorted(small):
        if H not in large:
            continue
        a1, a2 = oa[H], ib[H]
        lower = _lo(a1) + _lo(a2)
        if lower > best or (lower == best and best_hub is not None and H > best_hub):
            continue
        if not isinstance(a1, Ann) and not isinstance(a2, Ann):
            offer(a1 + a2, H)
            continue
        f = ctx.head(a1) if isinstance(a1, Ann) else {idx.members[H][0]: a1}
        k = ctx.tail(a2) if isinstance(a2, Ann) else {idx.members[H][0]: a2}
        offer(ctx.bridge(H, f, k), H)
    return QueryAnswer(best, best_hub)


def distance(idx: DistanceIndex, u, v):
    return query(idx, u, v).distance


def batch_query(idx: DistanceIndex, pairs) -> list:
    """Answer pairs of vertex labels; the first unknown label aborts the batch."""
    res = []
    for pos, (u, v) in enumerate(pairs):
        try:
            uid = idx.vertex_id(u) if isinstance(u, str) else u
            vid = idx.vertex_id(v) if isinstance(v, str) else v
        except UnknownVertex as exc:
            raise QueryError(pos, str(exc.args[0])) from None
        res.append(query(idx, uid, vid))
    return res


class HubLevelDomainError(ValueError):
    pass


CASE1 = "case1"


@dataclass(frozen=True)
class HubLevel:
    n: int
    C: int
    level: int


def _power_between(lu: int, lv: int):
    """Largest n with lu <= 2**n <= lv, else None."""
    n = lv.bit_length() - 1
    return n if (1 << n) >= lu else None


def hub_level(lu: int, lv: int):
    """Level in ``G_m`` of the intermediate hub of a shortest ``lu -> lv`` path.

    ``n`` is the largest exponent with ``lu <= 2**n <= lv``.  With no such
    exponent both levels are shifted down by ``2**n_low`` (largest power below
    ``lu``) and the search repeats; ``C`` is the accumulated shift.  A single
    shift suffices for every case with ``lu < 8``; ``(13, 15)`` needs two.
    Returns ``CASE1`` when ``lv - lu <= 1``.
    """
    if lu < 1 or lv < 1:
        raise HubLevelDomainError(f"levels must be positive, got {lu}, {lv}")
    if lu > lv:
        raise HubLevelDomainError(f"no path from level {lu} down to level {lv}")
    if lv - lu <= 1:
        return CASE1
    c = 0
    while True:
        n = _power_between(lu, lv)
        if n is not None:
            return HubLevel(n, c, (1 << n) + c)
        shift = 1 << ((lu - 1).bit_length() - 1)
        lu, lv, c = lu - shift, lv - shift, c + shift
