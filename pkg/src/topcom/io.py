"""Versioned text persistence for :class:`DistanceIndex`.

Layout, one section header per line, sections in fixed order::

    TOPCOM-INDEX
    HEADER          key value pairs
    VERTEX_MAP      id label
    SCC             scc member...
    SCC_DIST        scc row... (one line per member row, members ordered)
    DAG_EDGES       A B x:y:d ...
    OUT_INDEX       key hub d | key hub x:y:d ...
    IN_INDEX        same, annotation oriented (hub terminal, key terminal)
    END

Everything is sorted by id, so equal indexes serialize to equal bytes.
"""
from __future__ import annotations

import os

import numpy as np

from .condensation import SccPartition, SccTables
from .indexer import Ann, DistanceIndex, _prepare

FORMAT_VERSION = 1
MAGIC = "TOPCOM-INDEX"
SECTIONS = ("HEADER", "VERTEX_MAP", "SCC", "SCC_DIST", "DAG_EDGES", "OUT_INDEX", "IN_INDEX")


class IndexFormatError(ValueError):
    pass


def _num(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def _parse_num(tok: str, integral: bool):
    return int(tok) if integral else float(tok)


def _tuples(ann) -> list:
    if isinstance(ann, Ann):
        return [(x, y, d) for x, y, d in ann.triples]
    return [(x, y, d) for (x, y), d in sorted(ann.items())]


def _label_lines(idx: DistanceIndex, labels: dict):
    for key in sorted(labels):
        for hub in sorted(labels[key]):
            ann = labels[key][hub]
            if isinstance(ann, Ann):
                body = " ".join(f"{x}:{y}:{_num(d)}" for x, y, d in ann.triples)
            else:
                body = _num(ann)
            yield f"{key} {hub} {body}"


def dumps(idx: DistanceIndex) -> str:
    out = [MAGIC, "HEADER",
           f"version {FORMAT_VERSION}",
           f"weighted {int(idx.weighted)}",
           f"integral {int(idx.tables.integral)}",
           f"vertices {idx.n}",
           f"edges {idx.n_edges}",
           f"t {idx.t}",
           "VERTEX_MAP"]
    out += [f"{i} {lab}" for i, lab in enumerate(idx.graph_labels)]
    out.append("SCC")
    out += [f"{s} " + " ".join(map(str, mem)) for s, mem in enumerate(idx.members)]
    out.append("SCC_DIST")
    for s, mat in enumerate(idx.tables.mats):
        if mat is None:
            continue
        for row in mat:
            out.append(f"{s} " + " ".join(_num(x) for x in row.tolist()))
    out.append("DAG_EDGES")
    for (a, b) in sorted(idx.dag_edges):
        out.append(f"{a} {b} " + " ".join(f"{x}:{y}:{_num(d)}"
                                          for x, y, d in _tuples(idx.dag_edges[(a, b)])))
    out.append("OUT_INDEX")
    out += list(_label_lines(idx, idx.out_labels))
    out.append("IN_INDEX")
    out += list(_label_lines(idx, idx.in_labels))
    out.append("END")
    return "\n".join(out) + "\n"


def save(idx: DistanceIndex, path) -> int:
    """Write the index; returns the byte size."""
    data = dumps(idx).encode()
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def loads(text: str) -> DistanceIndex:
    lines = text.split("\n")
    if not lines or lines[0] != MAGIC:
        raise IndexFormatError("not a topcom index file")
    body: dict = {s: [] for s in SECTIONS}
    cur = None
    ended = False
    for line in lines[1:]:
        if line == "END":
            ended = True
            break
        if line in body:
            cur = line
            continue
        if cur is None:
            raise IndexFormatError(f"content before first section: {line!r}")
        body[cur].append(line)
    if not ended:
        raise IndexFormatError("truncated index file (no END marker)")
    hdr = dict(line.split(" ", 1) for line in body["HEADER"])
    if int(hdr.get("version", -1)) != FORMAT_VERSION:
        raise IndexFormatError(f"unsupported format version {hdr.get('version')}")
    integral = hdr["integral"] == "1"
    num = lambda tok: _parse_num(tok, integral)  # noqa: E731

    labels = [line.split(" ", 1)[1] for line in body["VERTEX_MAP"]]
    n = len(labels)
    members = []
    scc_of = [0] * n
    for line in body["SCC"]:
        toks = list(map(int, line.split()))
        members.append(tuple(toks[1:]))
        for v in toks[1:]:
            scc_of[v] = toks[0]
    part = SccPartition(tuple(scc_of), tuple(members))
    local = [0] * n
    for mem in members:
        for i, v in enumerate(mem):
            local[v] = i
    rows: dict = {}
    for line in body["SCC_DIST"]:
        toks = line.split()
        rows.setdefault(int(toks[0]), []).append([num(t) for t in toks[1:]])
    dtype = np.int64 if integral else float
    mats = [np.asarray(rows[s], dtype=dtype) if s in rows else None
            for s in range(len(members))]
    tables = SccTables(part, tuple(local), mats, integral)

    def triples(toks):
        res = {}
        for tok in toks:
            x, y, d = tok.split(":")
            res[(int(x), int(y))] = num(d)
        return res

    dag_edges = {}
    for line in body["DAG_EDGES"]:
        toks = line.split()
        dag_edges[(int(toks[0]), int(toks[1]))] = triples(toks[2:])

    def read_labels(section, direction):
        raw: dict = {}
        for line in body[section]:
            toks = line.split()
            key, hub = int(toks[0]), int(toks[1])
            if ":" in toks[2]:
                ann = triples(toks[2:])
            else:
                # scalar form: both ends are singletons
                k, h = members[key][0], members[hub][0]
                pair = (k, h) if direction == "out" else (h, k)
                ann = {pair: num(toks[2])}
            raw.setdefault(key, {})[hub] = ann
        return _prepare(raw, members)

    return DistanceIndex(tuple(labels), hdr["weighted"] == "1", int(hdr["edges"]),
                         int(hdr["t"]), part.scc_of, part.members, tables, dag_edges,
                         read_labels("OUT_INDEX", "out"), read_labels("IN_INDEX", "in"))


def load(path) -> DistanceIndex:
    with open(path, "rb") as fh:
        return loads(fh.read().decode())


def file_size(path) -> int:
    return os.path.getsize(path)
