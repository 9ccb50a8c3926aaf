import random

import pytest

from topcom import DirectedGraph, build_index

from worked_examples import dag_graph, scc_graph


@pytest.fixture(scope="session")
def dag():
    return dag_graph()


@pytest.fixture(scope="session")
def dag_index(dag):
    return build_index(dag, keep_sequence=True)


@pytest.fixture(scope="session")
def scc():
    return scc_graph()


@pytest.fixture(scope="session")
def scc_index(scc):
    return build_index(scc, keep_sequence=True)


def random_digraph(seed: int, n: int, p: float, weighted: bool = False,
                   max_weight: int = 10, acyclic: bool = False) -> DirectedGraph:
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1 if acyclic else 0, n):
            if u != v and rng.random() < p:
                edges.append((u, v, rng.randint(1, max_weight) if weighted else 1))
    return DirectedGraph.from_edges([str(i) for i in range(n)], edges, weighted)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(test_acceptance.RESULTS):
        ok, text = test_acceptance.RESULTS[cid]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {cid} {text}")
