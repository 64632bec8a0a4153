"""Flow-based load centrality and load maximization (LOMAX) by vertex deletion."""

from lomax.centrality import betweenness_count, centrality_table, select_key_vertex
from lomax.errors import GenerationError, InvalidArgumentError, LomaxError, PreconditionError
from lomax.flow import (
    GomoryHuTree,
    LoadReport,
    edge_disjoint_paths,
    flow_capacity,
    gomory_hu,
    load,
    load_effect,
    load_report,
    max_flow,
)
from lomax.generators import GeneratorSpec, generate, parse_spec, summarize
from lomax.graph import Graph, delete_vertices, read_edge_list, write_edge_list
from lomax.single import brute_force, divide_and_conquer, eliminate_by_theorems, eliminate_then_brute_force

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GeneratorSpec",
    "GenerationError",
    "GomoryHuTree",
    "InvalidArgumentError",
    "LoadReport",
    "LomaxError",
    "PreconditionError",
    "betweenness_count",
    "brute_force",
    "centrality_table",
    "delete_vertices",
    "divide_and_conquer",
    "edge_disjoint_paths",
    "eliminate_by_theorems",
    "eliminate_then_brute_force",
    "flow_capacity",
    "generate",
    "gomory_hu",
    "load",
    "load_effect",
    "load_report",
    "max_flow",
    "parse_spec",
    "read_edge_list",
    "select_key_vertex",
    "summarize",
    "write_edge_list",
]
