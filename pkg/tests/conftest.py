"""Shared test oracles: dense-matrix circuit evaluation, independent of the
simulator's kernel path, plus random-instance generators."""

import numpy as np
import pytest

from qroute.graph import WeightedGraph
from qroute.qsim import GateOp


def dense_1q(u: np.ndarray, target: int, n: int) -> np.ndarray:
    """Full 2^n unitary of a single-qubit gate (qubit 0 = MSB kron order)."""
    m = np.array([[1.0]], dtype=np.complex128)
    for q in range(n):
        m = np.kron(m, u if q == target else np.eye(2))
    return m


def dense_cnot(control: int, target: int, n: int) -> np.ndarray:
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=np.complex128)
    for b in range(dim):
        cbit = (b >> (n - 1 - control)) & 1
        m[b ^ (cbit << (n - 1 - target)), b] = 1.0
    return m


def dense_rotation(axis: str, angle: float) -> np.ndarray:
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    if axis == "X":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if axis == "Y":
        return np.array([[c, -s], [s, c]])
    return np.diag([np.exp(-1j * angle / 2), np.exp(1j * angle / 2)])


HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


def dense_gate(gate: GateOp, n: int) -> np.ndarray:
    if gate.kind in ("RX", "RY", "RZ"):
        return dense_1q(dense_rotation(gate.kind[1], gate.angle), gate.target, n)
    if gate.kind == "H":
        return dense_1q(HADAMARD, gate.target, n)
    if gate.kind == "CNOT":
        return dense_cnot(gate.control, gate.target, n)
    if gate.kind == "DIAG_PHASE":
        return np.diag(np.exp(-1j * np.asarray(gate.phases, dtype=float)))
    raise ValueError(gate.kind)


def random_state(n: int, rng) -> np.ndarray:
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return amps / np.linalg.norm(amps)


def random_gate(n: int, rng) -> GateOp:
    kind = rng.choice(["RX", "RY", "RZ", "H", "CNOT", "DIAG_PHASE"])
    if kind == "CNOT":
        if n < 2:
            return random_gate(n, rng)
        control, target = rng.choice(n, size=2, replace=False)
        return GateOp("CNOT", target=int(target), control=int(control))
    if kind == "DIAG_PHASE":
        return GateOp("DIAG_PHASE", phases=rng.uniform(-np.pi, np.pi, 1 << n))
    if kind == "H":
        return GateOp("H", target=int(rng.integers(n)))
    return GateOp(kind, target=int(rng.integers(n)),
                  angle=float(rng.uniform(-2 * np.pi, 2 * np.pi)))


def random_connected_graph(n: int, rng, integer_weights=True) -> WeightedGraph:
    """Random spanning tree plus random extra edges; weights in [1, 10]."""
    edges = {}
    order = rng.permutation(n)
    for ix in range(1, n):
        u = int(order[ix])
        v = int(order[int(rng.integers(ix))])
        edges[(min(u, v), max(u, v))] = None
    n_extra = int(rng.integers(0, n))
    for _ in range(n_extra):
        u, v = rng.choice(n, size=2, replace=False)
        edges[(min(int(u), int(v)), max(int(u), int(v)))] = None
    weight = (lambda: float(rng.integers(1, 11))) if integer_weights else (
        lambda: float(rng.uniform(0.5, 10.0)))
    return WeightedGraph(n, tuple((i, j, weight()) for (i, j) in sorted(edges)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)
