"""Exhaustive classical ground truth for every quantum result in the suite.

These are correctness instruments, not scalable solvers: enumeration is
hard-capped at 20 qubits / 10 nodes and errors out beyond that.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .encode import IsingHamiltonian, QuboMatrix
from .graph import WeightedGraph

MAX_ENUM_QUBITS = 20
MAX_ENUM_NODES = 10


class OracleSizeError(ValueError):
    """Instance exceeds the exhaustive-enumeration size cap."""


@dataclass(frozen=True)
class OracleResult:
    """Exact optimum with every optimizer found by full enumeration."""

    optimum: float
    argmins: tuple
    enumeration_size: int


def dijkstra(g: WeightedGraph, source: int, dest: int) -> tuple[list[int], float]:
    """Minimum-cost path and its cost; ties break to the lexicographically
    smallest path.

    Uniform-cost search over (cost, path) keys: the first time `dest` pops,
    the cost is minimal and the path is the smallest among equal-cost ones.
    """
    if not (0 <= source < g.n_nodes and 0 <= dest < g.n_nodes):
        raise ValueError(f"source/dest out of range for {g.n_nodes} nodes")
    best: dict[int, float] = {}
    heap: list[tuple[float, tuple[int, ...]]] = [(0.0, (source,))]
    while heap:
        cost, path = heapq.heappop(heap)
        u = path[-1]
        if u == dest:
            return list(path), cost
        if u in best and cost > best[u]:
            continue
        best[u] = cost
        for v in g.neighbors(u):
            if v in path:
                continue
            heapq.heappush(heap, (cost + g.weight(u, v), path + (v,)))
    raise ValueError(f"destination {dest} unreachable from {source}")


def enumerate_simple_paths(
    g: WeightedGraph, source: int, dest: int
) -> list[tuple[list[int], float]]:
    """All simple source->dest paths with costs, by depth-first search.

    Ordered lexicographically by node sequence.  Empty when disconnected.
    """
    if g.n_nodes > MAX_ENUM_NODES:
        raise OracleSizeError(
            f"{g.n_nodes} nodes exceeds enumeration cap {MAX_ENUM_NODES}"
        )
    if not (0 <= source < g.n_nodes and 0 <= dest < g.n_nodes):
        raise ValueError(f"source/dest out of range for {g.n_nodes} nodes")
    out: list[tuple[list[int], float]] = []

    def dfs(path: list[int], cost: float):
        u = path[-1]
        if u == dest:
            out.append((list(path), cost))
            return
        for v in g.neighbors(u):
            if v not in path:
                path.append(v)
                dfs(path, cost + g.weight(u, v))
                path.pop()

    dfs([source], 0.0)
    return out


def brute_force_ising_min(ham: IsingHamiltonian) -> OracleResult:
    """Exact minimum energy and all argmin basis indices."""
    if ham.n_qubits > MAX_ENUM_QUBITS:
        raise OracleSizeError(
            f"{ham.n_qubits} qubits exceeds enumeration cap {MAX_ENUM_QUBITS}"
        )
    energies = ham.energies_all()
    emin = energies.min()
    argmins = tuple(int(b) for b in np.nonzero(energies == emin)[0])
    return OracleResult(float(emin), argmins, energies.size)


def brute_force_qubo_min(q: QuboMatrix) -> OracleResult:
    """Exact minimum QUBO value and all argmin assignments (as basis indices)."""
    if q.dim > MAX_ENUM_QUBITS:
        raise OracleSizeError(f"{q.dim} variables exceeds cap {MAX_ENUM_QUBITS}")
    values = q.values_all()
    vmin = values.min()
    argmins = tuple(int(b) for b in np.nonzero(values == vmin)[0])
    return OracleResult(float(vmin), argmins, values.size)


def cut_sizes_all(g: WeightedGraph) -> np.ndarray:
    """Cut size (edge count across the partition) for every bipartition."""
    if g.n_nodes > MAX_ENUM_QUBITS:
        raise OracleSizeError(
            f"{g.n_nodes} nodes exceeds enumeration cap {MAX_ENUM_QUBITS}"
        )
    idx = np.arange(1 << g.n_nodes, dtype=np.int64)
    n = g.n_nodes
    cuts = np.zeros(idx.size, dtype=np.int64)
    for (i, j, _) in g.edges:
        bi = (idx >> (n - 1 - i)) & 1
        bj = (idx >> (n - 1 - j)) & 1
        cuts += bi ^ bj
    return cuts


def brute_force_maxcut(g: WeightedGraph) -> OracleResult:
    """Maximum cut size and all optimal partitions (complements included)."""
    cuts = cut_sizes_all(g)
    cmax = cuts.max()
    argmaxes = tuple(int(b) for b in np.nonzero(cuts == cmax)[0])
    return OracleResult(float(cmax), argmaxes, cuts.size)
