import unittest

import numpy as np

from kernel_chain.functional_graph import (
    cycle_points,
    random_functional_graph,
    random_permutation,
    tail_height,
    tail_heights,
    to_digraph,
)
from kernel_chain.measure_space import is_surjective, new_map, new_space


class FunctionalGraphTester(unittest.TestCase):
    def setUp(self) -> None:
        self.e1 = new_space(["1", "2", "3", "4"], [1, 1, 1, 1])
        self.tau_e1 = new_map(self.e1, {"1": "2", "2": "3", "3": "3", "4": "3"})
        self.e2 = new_space(["1", "2", "3"], [1, 1, 1])
        self.tau_e2 = new_map(self.e2, {"1": "2", "2": "3", "3": "1"})

    def test_to_digraph(self) -> None:
        graph = to_digraph(self.tau_e1)
        assert graph.number_of_nodes() == 4
        assert graph.number_of_edges() == 4
        assert all(graph.out_degree(p) == 1 for p in self.e1.points)

    def test_cycle_points(self) -> None:
        assert cycle_points(self.tau_e1) == {"3"}
        assert cycle_points(self.tau_e2) == {"1", "2", "3"}

    def test_tail_heights(self) -> None:
        assert tail_heights(self.tau_e1) == {"1": 2, "2": 1, "3": 0, "4": 1}
        assert tail_height(self.tau_e1) == 2
        assert tail_height(self.tau_e2) == 0

    def test_tail_heights_empty(self) -> None:
        tau = new_map(new_space([], []), {})
        assert cycle_points(tau) == set()
        assert tail_heights(tau) == {}
        assert tail_height(tau) == 0

    def test_tail_height_long_chain(self) -> None:
        points = [str(i) for i in range(1, 11)]
        space = new_space(points, [1] * 10)
        tau = new_map(space, {str(i): str(max(i - 1, 1)) for i in range(1, 11)})
        assert tail_height(tau) == 9

    def test_random_functional_graph_is_seeded(self) -> None:
        first = random_functional_graph(12, np.random.default_rng(42))
        second = random_functional_graph(12, np.random.default_rng(42))
        assert first == second
        assert first.space.points == tuple(str(i) for i in range(1, 13))
        assert set(first.space.weights) == {1}

    def test_random_permutation(self) -> None:
        rng = np.random.default_rng(7)
        for n in range(1, 10):
            assert is_surjective(random_permutation(n, rng))
