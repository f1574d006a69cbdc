"""Oracle tests: Dijkstra vs exhaustive path enumeration, brute-force
Ising/QUBO/Max-Cut minimization, and their mutual consistency."""

import numpy as np
import pytest

from conftest import random_connected_graph
from qroute.encode import (
    build_maxcut_hamiltonian,
    build_shortest_path_qubo,
    decode_bitstring_to_path,
    qubo_to_ising,
)
from qroute.graph import WeightedGraph
from qroute.harness import scenario_a_graph, scenario_b_graph
from qroute.oracle import (
    OracleSizeError,
    brute_force_ising_min,
    brute_force_maxcut,
    brute_force_qubo_min,
    cut_sizes_all,
    dijkstra,
    enumerate_simple_paths,
)
from qroute.encode import IsingHamiltonian


class TestDijkstra:
    def test_benchmark_instance(self):
        path, cost = dijkstra(scenario_b_graph(), 0, 3)
        assert path == [0, 1, 2, 3]
        assert cost == pytest.approx(11.0)

    def test_single_edge(self):
        path, cost = dijkstra(WeightedGraph(2, ((0, 1, 5.0),)), 0, 1)
        assert path == [0, 1] and cost == 5.0

    def test_lexicographic_tie_break(self):
        g = WeightedGraph(4, ((0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.0), (2, 3, 1.0)))
        path, cost = dijkstra(g, 0, 3)
        assert cost == 2.0
        assert path == [0, 1, 3]

    def test_unreachable(self):
        g = WeightedGraph(4, ((0, 1, 1.0), (2, 3, 1.0)))
        with pytest.raises(ValueError):
            dijkstra(g, 0, 3)

    def test_matches_enumeration_on_random_graphs(self, rng):
        for _ in range(50):
            n = int(rng.integers(3, 9))
            g = random_connected_graph(n, rng, integer_weights=False)
            s, d = rng.choice(n, size=2, replace=False)
            _, cost = dijkstra(g, int(s), int(d))
            paths = enumerate_simple_paths(g, int(s), int(d))
            assert cost == min(c for _, c in paths)


class TestEnumerateSimplePaths:
    def test_benchmark_instance(self):
        paths = enumerate_simple_paths(scenario_b_graph(), 0, 3)
        assert len(paths) == 4
        costs = {tuple(p): c for p, c in paths}
        assert max(costs.values()) == pytest.approx(20.0)
        assert costs[(0, 2, 1, 3)] == pytest.approx(20.0)

    def test_single_edge(self):
        assert enumerate_simple_paths(WeightedGraph(2, ((0, 1, 2.0),)), 0, 1) == [
            ([0, 1], 2.0)
        ]

    def test_disconnected_pair_empty(self):
        g = WeightedGraph(4, ((0, 1, 1.0), (2, 3, 1.0)))
        assert enumerate_simple_paths(g, 0, 3) == []

    def test_size_cap(self):
        g = WeightedGraph(11, tuple((i, i + 1, 1.0) for i in range(10)))
        with pytest.raises(OracleSizeError):
            enumerate_simple_paths(g, 0, 10)


class TestBruteForceIsing:
    def test_single_qubit_field(self):
        ham = IsingHamiltonian(1, [1.0], np.zeros((1, 1)))
        res = brute_force_ising_min(ham)
        assert res.optimum == pytest.approx(-1.0)
        assert res.argmins == (1,)  # bit 1 means z = -1

    def test_triangle_maxcut_degeneracy(self):
        g = WeightedGraph(3, ((0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)))
        res = brute_force_ising_min(build_maxcut_hamiltonian(g))
        assert res.optimum == pytest.approx(-2.0)
        assert len(res.argmins) == 6

    def test_benchmark_16_qubit_unique_argmin(self):
        g = scenario_b_graph()
        qubo = build_shortest_path_qubo(g, 0, 3, penalty=40.0)
        res = brute_force_ising_min(qubo_to_ising(qubo))
        assert len(res.argmins) == 1
        decoded = decode_bitstring_to_path(res.argmins[0], 4, g, 0, 3)
        assert decoded.valid and decoded.path == [0, 1, 2, 3]
        dij_path, dij_cost = dijkstra(g, 0, 3)
        assert decoded.path == dij_path
        assert res.optimum == pytest.approx(dij_cost, abs=1e-9)

    def test_size_cap(self):
        ham = IsingHamiltonian(21, np.zeros(21), np.zeros((21, 21)))
        with pytest.raises(OracleSizeError):
            brute_force_ising_min(ham)

    def test_argmins_reevaluate_to_optimum(self, rng):
        n = 6
        J = rng.normal(size=(n, n))
        J = (J + J.T) / 2
        np.fill_diagonal(J, 0.0)
        ham = IsingHamiltonian(n, rng.normal(size=n), J)
        res = brute_force_ising_min(ham)
        for b in res.argmins:
            assert ham.energy(b) == pytest.approx(res.optimum, abs=1e-12)


class TestBruteForceMaxcut:
    def test_single_edge(self):
        assert brute_force_maxcut(WeightedGraph(2, ((0, 1, 1.0),))).optimum == 1.0

    def test_triangle(self):
        g = WeightedGraph(3, ((0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)))
        assert brute_force_maxcut(g).optimum == 2.0

    def test_control_instance(self):
        # 7 edges on 5 nodes; two triangles share an edge, so the cut is 6
        res = brute_force_maxcut(scenario_a_graph())
        assert res.optimum == 6.0

    def test_ground_energy_identity_on_random_graphs(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 9))
            g = random_connected_graph(n, rng)
            ground = build_maxcut_hamiltonian(g).energies_all().min()
            assert ground == pytest.approx(-brute_force_maxcut(g).optimum, abs=1e-12)

    def test_cut_sizes_match_hamiltonian(self, rng):
        g = random_connected_graph(6, rng)
        energies = build_maxcut_hamiltonian(g).energies_all()
        assert np.allclose(energies, -cut_sizes_all(g), atol=1e-12)


class TestBruteForceQubo:
    def test_agrees_with_ising_route(self, rng):
        m = rng.normal(size=(7, 7))
        from qroute.encode import QuboMatrix
        q = QuboMatrix(7, (m + m.T) / 2, constant=0.25)
        res_q = brute_force_qubo_min(q)
        res_i = brute_force_ising_min(qubo_to_ising(q))
        assert res_q.optimum == pytest.approx(res_i.optimum, abs=1e-9)
        assert res_q.argmins == res_i.argmins
