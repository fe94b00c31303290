"""
Brute-force ground truth for the solvers and recognizers.

The predicates here go through networkx and raw 4-vertex subsets so they
share no code with the bitset predicates in solver.graph. Subsets are
enumerated by size, then lexicographically, so witnesses are canonical.
"""

from enum import Enum
from itertools import combinations
from typing import Callable, FrozenSet, List, NamedTuple, Optional

import networkx as nx

from solver.common import TooLarge
from solver.graph import Graph
from solver.hitting_set import HittingSetInstance

ORACLE_MAX_VERTICES = 14


class TargetProperty(str, Enum):
    BLOCK_SPLIT = "block_split"
    THRESHOLD_SPLIT = "threshold_split"
    DIAMOND_FREE = "diamond_free"


class OracleResult(NamedTuple):
    size: int
    witness: FrozenSet[int]


def to_networkx(g: Graph) -> nx.Graph:
    """Live vertices and edges of g as a networkx graph."""
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices())
    graph.add_edges_from(g.edges())
    return graph


def _quad_shape(graph: nx.Graph, quad) -> str:
    sub = graph.subgraph(quad)
    degrees = sorted(d for _, d in sub.degree())
    edges = sub.number_of_edges()
    if edges == 3 and degrees == [1, 1, 2, 2]:
        return "p4"
    if edges == 4 and degrees == [2, 2, 2, 2]:
        return "c4"
    if edges == 2 and degrees == [1, 1, 1, 1]:
        return "2k2"
    if edges == 5:
        return "diamond"
    return ""


def obstruction_quads(graph: nx.Graph, shapes: FrozenSet[str]) -> List[FrozenSet[int]]:
    """Every 4-vertex subset inducing one of ``shapes``."""
    return [
        frozenset(quad)
        for quad in combinations(sorted(graph.nodes), 4)
        if _quad_shape(graph, quad) in shapes
    ]


def is_block_graph(graph: nx.Graph) -> bool:
    """Every biconnected component induces a clique."""
    for component in nx.biconnected_components(graph):
        size = len(component)
        if graph.subgraph(component).number_of_edges() != size * (size - 1) // 2:
            return False
    return True


def _predicate(graph: nx.Graph, prop: TargetProperty) -> Callable[[FrozenSet[int]], bool]:
    if prop is TargetProperty.BLOCK_SPLIT:
        return lambda removed: is_block_graph(graph.subgraph(set(graph.nodes) - removed))

    # Threshold graphs are exactly the {P4, C4, 2K2}-free graphs.
    shapes = frozenset({"p4", "c4", "2k2"}) if prop is TargetProperty.THRESHOLD_SPLIT else frozenset({"diamond"})
    quads = obstruction_quads(graph, shapes)
    return lambda removed: all(quad & removed for quad in quads)


def min_deletion(g: Graph, prop: TargetProperty, kmax: int) -> Optional[OracleResult]:
    """
    Smallest S with |S| <= kmax such that G - S has ``prop``.

    Args:
        g: Graph to delete from
        prop: Target property
        kmax: Largest deletion set to try

    Returns:
        Size and canonical witness, or None if no S within kmax works

    Raises:
        TooLarge: If g has more than ORACLE_MAX_VERTICES live vertices
    """
    if g.vertex_count() > ORACLE_MAX_VERTICES:
        raise TooLarge(f"Oracle supports at most {ORACLE_MAX_VERTICES} vertices, got {g.vertex_count()}")

    graph = to_networkx(g)
    holds = _predicate(graph, prop)
    vertices = sorted(graph.nodes)
    for size in range(0, min(kmax, len(vertices)) + 1):
        for removed in combinations(vertices, size):
            if holds(frozenset(removed)):
                return OracleResult(size, frozenset(removed))
    return None


def brute_force_3hs(inst: HittingSetInstance) -> Optional[OracleResult]:
    """
    Minimum hitting set of size at most inst.budget, by subset enumeration.

    Raises:
        TooLarge: If the universe has more than ORACLE_MAX_VERTICES elements
    """
    universe = sorted(inst.universe)
    if len(universe) > ORACLE_MAX_VERTICES:
        raise TooLarge(f"Oracle supports universes of at most {ORACLE_MAX_VERTICES} elements, got {len(universe)}")

    for size in range(0, min(inst.budget, len(universe)) + 1):
        for chosen in combinations(universe, size):
            if inst.is_hit_by(chosen):
                return OracleResult(size, frozenset(chosen))
    return None
