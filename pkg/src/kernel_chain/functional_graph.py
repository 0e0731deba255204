import logging
from typing import Dict, Set

import networkx as nx
import numpy as np

from kernel_chain.measure_space import Transformation, new_map, new_space

logger = logging.getLogger(__name__)


def to_digraph(tau: Transformation) -> nx.DiGraph:
    """Directed graph with one edge x -> τ(x) per atom"""
    graph = nx.DiGraph()
    graph.add_nodes_from(tau.space.points)
    graph.add_edges_from(tau.assignment().items())
    return graph


def cycle_points(tau: Transformation) -> Set[str]:
    """Atoms lying on a cycle of the functional graph"""
    graph = to_digraph(tau)
    on_cycle: Set[str] = set()
    for scc in nx.strongly_connected_components(graph):
        node = next(iter(scc))
        # singleton components are cycles only if they carry a self-loop
        if len(scc) > 1 or graph.has_edge(node, node):
            on_cycle.update(scc)
    return on_cycle


def tail_heights(tau: Transformation) -> Dict[str, int]:
    """Distance from each atom to the cycle set"""
    cycles = cycle_points(tau)
    # only the empty graph has no cycle
    if not cycles:
        return {}
    graph = to_digraph(tau)
    distances = nx.multi_source_dijkstra_path_length(
        graph.reverse(copy=False), cycles
    )
    return {p: int(d) for p, d in distances.items()}


def tail_height(tau: Transformation) -> int:
    return max(tail_heights(tau).values(), default=0)


def random_functional_graph(n: int, rng: np.random.Generator) -> Transformation:
    """Counting measure on {1..n}, each image drawn uniformly and independently"""
    points = [str(i) for i in range(1, n + 1)]
    targets = rng.integers(0, n, size=n)
    space = new_space(points, [1] * n)
    return new_map(space, {p: points[int(j)] for p, j in zip(points, targets)})


def random_permutation(n: int, rng: np.random.Generator) -> Transformation:
    points = [str(i) for i in range(1, n + 1)]
    targets = rng.permutation(n)
    space = new_space(points, [1] * n)
    return new_map(space, {p: points[int(j)] for p, j in zip(points, targets)})
