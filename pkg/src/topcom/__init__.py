"""TopCom: exact shortest-distance queries via topological compression labels."""
from .baselines import all_pairs_oracle, bidirectional_dijkstra, dijkstra
from .compression import compress_all, compute_topo_levels, modify
from .condensation import build_condensed_dag, tarjan_scc
from .graph import UNREACHABLE, DirectedGraph, EdgeListError, graph_stats, load_edge_list
from .indexer import DistanceIndex, UnknownVertex, build_index, finalize
from .query import CASE1, QueryAnswer, batch_query, distance, hub_level, query

__all__ = [
    "UNREACHABLE", "CASE1", "DirectedGraph", "DistanceIndex", "EdgeListError", "QueryAnswer",
    "UnknownVertex", "all_pairs_oracle", "batch_query", "bidirectional_dijkstra",
    "build_condensed_dag", "build_index", "compress_all", "compute_topo_levels", "dijkstra",
    "distance", "finalize", "graph_stats", "hub_level", "load_edge_list", "modify", "query",
    "tarjan_scc",
]
