"""QUBO / Ising encodings of routing and Max-Cut instances, and decoding.

The shortest-path encoding uses N^2 binary position variables x[i,k]
(node i sits at path position k), flattened as ``var(i, k) = i*N + k``.
The objective is the summed latency of consecutive hops; start, end,
position-uniqueness and node-uniqueness constraints enter as quadratic
penalties scaled by a single coefficient, and every consecutive
non-adjacent pair carries the same penalty so that hops off the edge set
are never free.

Bit/spin convention: variable v is qubit v; a qubit reading 0 means spin
z = +1, reading 1 means z = -1 (x = (1 - z) / 2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import GraphError, WeightedGraph
from .qsim import DiagonalObservable

SYMMETRY_TOL = 1e-12


def bits_from_index(index: int, n: int) -> np.ndarray:
    """Bit vector of a basis index, qubit 0 first (most significant)."""
    shifts = np.arange(n - 1, -1, -1)
    return ((index >> shifts) & 1).astype(np.int8)


def index_from_bits(bits) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def all_bits_matrix(n: int) -> np.ndarray:
    """(2^n, n) matrix of every bit assignment, row b = bits_from_index(b)."""
    idx = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1)
    return ((idx[:, None] >> shifts[None, :]) & 1).astype(np.int8)


@dataclass(frozen=True)
class QuboMatrix:
    """Symmetric QUBO: value(x) = x^T entries x + constant.

    For path problems dim = N^2 with var_index(i, k) = i*N + k.
    """

    dim: int
    entries: np.ndarray
    constant: float = 0.0
    n_nodes: int | None = None

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=np.float64)
        if e.shape != (self.dim, self.dim):
            raise ValueError(f"entries shape {e.shape} != ({self.dim}, {self.dim})")
        if np.abs(e - e.T).max() > SYMMETRY_TOL:
            raise ValueError("QUBO matrix must be symmetric")
        object.__setattr__(self, "entries", e)

    def var_index(self, node: int, position: int) -> int:
        if self.n_nodes is None:
            raise ValueError("not a path-problem QUBO")
        return node * self.n_nodes + position

    def value(self, x) -> float:
        x = np.asarray(x, dtype=np.float64)
        return float(x @ self.entries @ x) + self.constant

    def values_all(self) -> np.ndarray:
        """QUBO value of every assignment, indexed by basis index."""
        b = all_bits_matrix(self.dim).astype(np.float64)
        return ((b @ self.entries) * b).sum(axis=1) + self.constant


@dataclass(frozen=True)
class IsingHamiltonian:
    """Z-diagonal Hamiltonian: sum_i h_i Z_i + sum_{i<j} J_ij Z_i Z_j + const."""

    n_qubits: int
    h: np.ndarray
    J: np.ndarray
    constant: float = 0.0

    def __post_init__(self):
        h = np.asarray(self.h, dtype=np.float64)
        J = np.asarray(self.J, dtype=np.float64)
        if h.shape != (self.n_qubits,):
            raise ValueError(f"h shape {h.shape} != ({self.n_qubits},)")
        if J.shape != (self.n_qubits, self.n_qubits):
            raise ValueError(f"J shape {J.shape} is not square of size {self.n_qubits}")
        if np.abs(J - J.T).max() > SYMMETRY_TOL:
            raise ValueError("J must be symmetric")
        if np.abs(np.diag(J)).max() > 0:
            raise ValueError("J must have zero diagonal")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "J", J)

    def energy(self, bitstring) -> float:
        return ising_energy(self, bitstring)

    def energies_all(self) -> np.ndarray:
        """Energy of every basis state, indexed by basis index."""
        z = 1.0 - 2.0 * all_bits_matrix(self.n_qubits).astype(np.float64)
        pair = 0.5 * ((z @ self.J) * z).sum(axis=1)  # J symmetric, zero diagonal
        return z @ self.h + pair + self.constant

    def to_observable(self) -> DiagonalObservable:
        return DiagonalObservable(self.energies_all())


def ising_energy(ham: IsingHamiltonian, bitstring) -> float:
    """Energy of one bitstring (basis index or explicit 0/1 sequence)."""
    if isinstance(bitstring, (int, np.integer)):
        bits = bits_from_index(int(bitstring), ham.n_qubits)
    else:
        bits = np.asarray(bitstring, dtype=np.int8)
        if bits.shape != (ham.n_qubits,):
            raise ValueError(
                f"bitstring length {bits.size} != n_qubits {ham.n_qubits}"
            )
    z = 1.0 - 2.0 * bits.astype(np.float64)
    return float(z @ ham.h + 0.5 * (z @ ham.J @ z) + ham.constant)


def build_shortest_path_qubo(
    g: WeightedGraph, source: int, dest: int, penalty: float
) -> QuboMatrix:
    """Encode the source->dest shortest-path problem over N^2 binary variables.

    The QUBO value of an assignment x is the path latency
    ``sum_{(i,j) in E} w_ij sum_k (x[i,k] x[j,k+1] + x[j,k] x[i,k+1])``
    plus `penalty` times the violation terms:

    * ``(1 - x[source,0])^2`` and ``(1 - x[dest,N-1])^2``   (endpoints)
    * ``(1 - sum_i x[i,k])^2`` for every position k          (one node per slot)
    * ``x[i,k] x[i,k']`` for k < k'                          (no node twice)
    * ``x[i,k] x[j,k+1]`` for every non-adjacent pair i != j (no invalid hop)
    """
    n = g.n_nodes
    if not (0 <= source < n and 0 <= dest < n):
        raise GraphError(f"source/dest out of range for {n} nodes")
    if source == dest:
        raise GraphError("source and destination must differ")
    if not penalty > 0:
        raise GraphError(f"penalty must be positive, got {penalty}")

    dim = n * n
    q = np.zeros((dim, dim))
    constant = 0.0

    def var(i, k):
        return i * n + k

    def add_pair(a, b, coeff):
        q[a, b] += coeff / 2.0
        q[b, a] += coeff / 2.0

    adj = g.adjacency_matrix()

    # hop terms: reward edges with their latency, penalize non-edges
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            coeff = adj[i, j] if adj[i, j] > 0 else penalty
            for k in range(n - 1):
                add_pair(var(i, k), var(j, k + 1), coeff)

    # endpoint constraints: (1 - x)^2 = 1 - x for binary x
    q[var(source, 0), var(source, 0)] += -penalty
    q[var(dest, n - 1), var(dest, n - 1)] += -penalty
    constant += 2.0 * penalty

    # position uniqueness: (1 - sum_i x[i,k])^2
    for k in range(n):
        constant += penalty
        for i in range(n):
            q[var(i, k), var(i, k)] += -penalty
            for j in range(i + 1, n):
                add_pair(var(i, k), var(j, k), 2.0 * penalty)

    # node uniqueness: pairwise form of sum_k x[i,k] <= 1
    for i in range(n):
        for k in range(n):
            for k2 in range(k + 1, n):
                add_pair(var(i, k), var(i, k2), penalty)

    return QuboMatrix(dim, q, constant, n_nodes=n)


def penalty_coefficient(g: WeightedGraph, source: int, dest: int) -> float:
    """Twice the cost of the most expensive simple source->dest path.

    Any single constraint violation then outweighs even the worst valid
    path, while keeping the energy scale moderate.
    """
    from .oracle import enumerate_simple_paths

    if not g.is_connected():
        raise GraphError("penalty calibration requires a connected graph")
    paths = enumerate_simple_paths(g, source, dest)
    if not paths:
        raise GraphError(f"no simple path from {source} to {dest}")
    return 2.0 * max(cost for _, cost in paths)


def qubo_to_ising(q: QuboMatrix) -> IsingHamiltonian:
    """Exact change of variables x_i -> (1 - Z_i)/2.

    Every bitstring satisfies ising.energy(b) == q.value(x(b)).
    """
    m = q.entries
    n = q.dim
    diag = np.diag(m)
    offsum = m.sum(axis=1) - diag
    h = -diag / 2.0 - offsum / 2.0
    J = m / 2.0
    np.fill_diagonal(J, 0.0)
    constant = q.constant + diag.sum() / 2.0 + offsum.sum() / 4.0
    return IsingHamiltonian(n, h, J, float(constant))


def build_maxcut_hamiltonian(g: WeightedGraph) -> IsingHamiltonian:
    """Max-Cut cost Hamiltonian sum_{(i,j) in E} (Z_i Z_j - 1) / 2.

    Edges count uniformly (weights ignored); the ground energy is minus
    the maximum cut size.
    """
    if g.n_edges == 0:
        raise GraphError("graph has no edges")
    n = g.n_nodes
    J = np.zeros((n, n))
    for (i, j, _) in g.edges:
        J[i, j] = 0.5
        J[j, i] = 0.5
    h = np.zeros(n)
    return IsingHamiltonian(n, h, J, -g.n_edges / 2.0)


@dataclass(frozen=True)
class PathAssignment:
    """Decoded position-encoded path with validity report.

    `node_at_position[k]` is the node occupying slot k, or None when the
    slot is empty or multiply occupied.  `violations` lists every broken
    constraint as a tuple: ("start",), ("end",), ("position", k),
    ("node", i) for a repeated node, ("edge", a, b) for a missing hop.
    `cost` is the summed latency, present only for valid paths.
    """

    node_at_position: tuple
    valid: bool
    violations: tuple
    cost: float | None = None

    @property
    def path(self) -> list:
        return list(self.node_at_position)


def path_to_bits(path, n_nodes: int) -> np.ndarray:
    """Bit vector of the encoding with node path[k] at position k."""
    bits = np.zeros(n_nodes * n_nodes, dtype=np.int8)
    for k, node in enumerate(path):
        bits[node * n_nodes + k] = 1
    return bits


def path_to_index(path, n_nodes: int) -> int:
    return index_from_bits(path_to_bits(path, n_nodes))


def decode_bitstring_to_path(
    bitstring, n_nodes: int, g: WeightedGraph, source: int, dest: int
) -> PathAssignment:
    """Read the position variables out of a measured bitstring.

    Invalid encodings are reported, never raised: the returned assignment
    carries the full violation list and valid=False.
    """
    n_vars = n_nodes * n_nodes
    if isinstance(bitstring, (int, np.integer)):
        bits = bits_from_index(int(bitstring), n_vars)
    else:
        bits = np.asarray(bitstring, dtype=np.int8)
        if bits.shape != (n_vars,):
            raise ValueError(f"bitstring length {bits.size} != n_nodes^2 = {n_vars}")
    x = bits.reshape(n_nodes, n_nodes)  # x[node, position]

    violations = []
    node_at = []
    for k in range(n_nodes):
        occupants = np.nonzero(x[:, k])[0]
        if occupants.size == 1:
            node_at.append(int(occupants[0]))
        else:
            node_at.append(None)
            violations.append(("position", k))

    for i in range(n_nodes):
        if int(x[i, :].sum()) > 1:
            violations.append(("node", i))

    if x[source, 0] != 1:
        violations.append(("start",))
    if x[dest, n_nodes - 1] != 1:
        violations.append(("end",))

    for k in range(n_nodes - 1):
        a, b = node_at[k], node_at[k + 1]
        if a is not None and b is not None and a != b and not g.has_edge(a, b):
            violations.append(("edge", a, b))

    valid = not violations
    cost = None
    if valid:
        cost = sum(g.weight(node_at[k], node_at[k + 1]) for k in range(n_nodes - 1))
    return PathAssignment(tuple(node_at), valid, tuple(violations), cost)
