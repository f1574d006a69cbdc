"""Minimal ideal statevector simulator.

Supports exactly the gate set the solvers in this suite need: RX, RY, RZ,
H, CNOT and a diagonal phase gate, plus diagonal-observable expectation
values, computational-basis sampling, and parameter-shift gradients.

Conventions
-----------
* Qubit 0 is the **most significant bit** of the basis index: on three
  qubits, basis state ``|q0 q1 q2>`` has index ``4*q0 + 2*q1 + q2``.
* Rotations follow the usual half-angle convention,
  ``RX(t) = exp(-i t X / 2)`` (and likewise for RY/RZ).
* A ``DIAG_PHASE`` gate with phase vector ``phi`` multiplies amplitude
  ``b`` by ``exp(-i * phi[b])``; ``exp(-i*gamma*H_C)`` for a diagonal
  cost Hamiltonian is a single such gate with ``phi = gamma * energies``.
* Randomness comes from numpy's PCG64 generator, seeded through
  ``SeedSequence`` so results are bit-reproducible across platforms.
  Substreams are derived with :func:`derive_seed`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from . import _kernels

ROTATION_KINDS = ("RX", "RY", "RZ")
GATE_KINDS = ROTATION_KINDS + ("H", "CNOT", "DIAG_PHASE")

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class GateError(ValueError):
    """Raised for malformed gates or out-of-range qubit indices."""


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator from an int seed (Generators pass through)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def derive_seed(seed: int, stream: int) -> int:
    """Independent child seed for (seed, stream), stable across platforms."""
    return int(np.random.SeedSequence((seed, stream)).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class StateVector:
    """An n-qubit pure state: 2**n complex amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        dim = 1 << self.n_qubits
        if self.amplitudes.shape != (dim,):
            raise ValueError(
                f"expected {dim} amplitudes for {self.n_qubits} qubits, "
                f"got shape {self.amplitudes.shape}"
            )

    @classmethod
    def zero_state(cls, n_qubits: int) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def from_amplitudes(cls, amps: Sequence[complex]) -> "StateVector":
        arr = np.asarray(amps, dtype=np.complex128)
        n = int(round(np.log2(arr.size)))
        if 1 << n != arr.size:
            raise ValueError(f"amplitude count {arr.size} is not a power of two")
        return cls(n, arr)

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return a.real**2 + a.imag**2

    def norm_sq(self) -> float:
        return float(_kernels.norm_sq(self.amplitudes))


@dataclass(frozen=True)
class GateOp:
    """One gate: kind in {RX, RY, RZ, H, CNOT, DIAG_PHASE}.

    `target` (and `control` for CNOT) index qubits; `angle` is radians for
    rotations; `phases` is the per-basis-state phase vector for DIAG_PHASE.
    """

    kind: str
    target: int = 0
    control: int | None = None
    angle: float | None = None
    phases: np.ndarray | None = None


@dataclass(frozen=True)
class DiagonalObservable:
    """Z-diagonal observable: one real energy per computational basis state."""

    energies: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.energies, dtype=np.float64)
        n = int(round(np.log2(arr.size)))
        if 1 << n != arr.size:
            raise ValueError(f"energy count {arr.size} is not a power of two")
        object.__setattr__(self, "energies", arr)

    @property
    def n_qubits(self) -> int:
        return int(round(np.log2(self.energies.size)))


def rotation_matrix(axis: str, angle: float) -> np.ndarray:
    """2x2 matrix of exp(-i * angle * P/2) for P in {X, Y, Z}."""
    c = np.cos(angle / 2.0)
    s = np.sin(angle / 2.0)
    if axis == "X":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    if axis == "Y":
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if axis == "Z":
        return np.array(
            [[np.exp(-0.5j * angle), 0.0], [0.0, np.exp(0.5j * angle)]],
            dtype=np.complex128,
        )
    raise GateError(f"unknown rotation axis {axis!r}")


HADAMARD = np.array([[_INV_SQRT2, _INV_SQRT2], [_INV_SQRT2, -_INV_SQRT2]],
                    dtype=np.complex128)


def _bitpos(qubit: int, n_qubits: int) -> int:
    # qubit 0 = MSB of the basis index
    return n_qubits - 1 - qubit


def _check_qubit(qubit, n_qubits, what="target"):
    if not isinstance(qubit, (int, np.integer)) or not 0 <= qubit < n_qubits:
        raise GateError(f"{what} qubit {qubit} out of range for {n_qubits} qubits")


def apply_1q_inplace(amps: np.ndarray, n_qubits: int, qubit: int, u: np.ndarray):
    _kernels.apply_1q(amps, _bitpos(qubit, n_qubits),
                      u[0, 0], u[0, 1], u[1, 0], u[1, 1])


def apply_cnot_inplace(amps: np.ndarray, n_qubits: int, control: int, target: int):
    _kernels.apply_cnot(amps, _bitpos(control, n_qubits), _bitpos(target, n_qubits))


def apply_diag_phase_inplace(amps: np.ndarray, phases: np.ndarray):
    _kernels.apply_phase_factors(amps, np.exp(-1j * np.asarray(phases, dtype=np.float64)))


def apply_gate_inplace(amps: np.ndarray, n_qubits: int, gate: GateOp):
    """In-place gate application on a raw amplitude buffer the caller owns."""
    kind = gate.kind
    if kind in ROTATION_KINDS:
        _check_qubit(gate.target, n_qubits)
        if gate.angle is None:
            raise GateError(f"{kind} gate requires an angle")
        apply_1q_inplace(amps, n_qubits, gate.target, rotation_matrix(kind[1], gate.angle))
    elif kind == "H":
        _check_qubit(gate.target, n_qubits)
        apply_1q_inplace(amps, n_qubits, gate.target, HADAMARD)
    elif kind == "CNOT":
        if gate.control is None:
            raise GateError("CNOT requires a control qubit")
        _check_qubit(gate.control, n_qubits, "control")
        _check_qubit(gate.target, n_qubits)
        if gate.control == gate.target:
            raise GateError("CNOT control and target must differ")
        apply_cnot_inplace(amps, n_qubits, gate.control, gate.target)
    elif kind == "DIAG_PHASE":
        if gate.phases is None:
            raise GateError("DIAG_PHASE requires a phase vector")
        phases = np.asarray(gate.phases, dtype=np.float64)
        if phases.shape != amps.shape:
            raise GateError(
                f"DIAG_PHASE phase vector length {phases.size} does not match "
                f"state dimension {amps.size}"
            )
        apply_diag_phase_inplace(amps, phases)
    else:
        raise GateError(f"unknown gate kind {gate.kind!r}")


def apply_gate(state: StateVector, gate: GateOp) -> StateVector:
    """Return the unitarily evolved state; the input state is not modified."""
    amps = state.amplitudes.copy()
    apply_gate_inplace(amps, state.n_qubits, gate)
    return StateVector(state.n_qubits, amps)


@functools.lru_cache(maxsize=None)
def ring_permutation(n_qubits: int) -> np.ndarray:
    """Basis permutation of the CNOT ring: CNOT(q, (q+1) mod n) for q = 0..n-1.

    CNOTs permute basis states without touching amplitudes, so a whole ring
    collapses to one precomputable index permutation (applied by the ansatz
    builders in a single pass).  Identity for n_qubits == 1.  The returned
    array is cached and must be treated as read-only.
    """
    dim = 1 << n_qubits
    perm = np.arange(dim, dtype=np.int64)
    if n_qubits == 1:
        return perm
    for q in range(n_qubits):
        c = _bitpos(q, n_qubits)
        t = _bitpos((q + 1) % n_qubits, n_qubits)
        flip = ((perm >> c) & 1) << t
        perm = perm ^ flip
    return perm


def apply_permutation_inplace(amps: np.ndarray, perm: np.ndarray, scratch: np.ndarray):
    _kernels.permute_into(amps, perm, scratch)
    amps[:] = scratch


def expectation_diagonal(state: StateVector, obs: DiagonalObservable) -> float:
    """<psi| diag(energies) |psi> = sum_b |psi_b|^2 * energies[b]."""
    if obs.energies.size != state.amplitudes.size:
        raise ValueError(
            f"observable dimension {obs.energies.size} does not match "
            f"state dimension {state.amplitudes.size}"
        )
    return float(_kernels.expectation_diag(state.amplitudes, obs.energies))


def sample_counts(state: StateVector, shots: int, rng_seed) -> dict[int, int]:
    """Sample `shots` computational-basis measurements; deterministic per seed.

    Returns a basis-index -> count map (only nonzero counts, ascending index).
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probs = state.probabilities()
    total = probs.sum()
    if not np.isclose(total, 1.0, atol=1e-9):
        raise ValueError(f"state norm^2 = {total}, not a unit state")
    rng = make_rng(rng_seed)
    counts = rng.multinomial(shots, probs / total)
    nonzero = np.nonzero(counts)[0]
    return {int(b): int(counts[b]) for b in nonzero}


def most_frequent_bitstring(counts: Mapping[int, int]) -> int:
    """Basis index with the maximum count; ties break toward the lowest index."""
    if not counts:
        raise ValueError("empty counts")
    return min(counts, key=lambda b: (-counts[b], b))


def bitstring_label(index: int, n_qubits: int) -> str:
    """Render a basis index as a bitstring, qubit 0 leftmost."""
    return format(index, f"0{n_qubits}b")


def parameter_shift_grad(
    circuit_eval: Callable[[np.ndarray], float],
    params: np.ndarray,
    index: int,
) -> float:
    """Two-point parameter-shift partial derivative of an expectation.

    Exact when the parameter at `index` feeds a single rotation gate
    (generator eigenvalues +-1/2): dE/dt = [E(t + pi/2) - E(t - pi/2)] / 2.
    """
    params = np.asarray(params, dtype=np.float64)
    shifted = params.copy()
    shifted[index] = params[index] + np.pi / 2.0
    e_plus = circuit_eval(shifted)
    shifted[index] = params[index] - np.pi / 2.0
    e_minus = circuit_eval(shifted)
    return (e_plus - e_minus) / 2.0


def parameter_shift_gradient(
    circuit_eval: Callable[[np.ndarray], float],
    params: np.ndarray,
) -> np.ndarray:
    """All partials via :func:`parameter_shift_grad` (sequential order)."""
    params = np.asarray(params, dtype=np.float64)
    return np.array(
        [parameter_shift_grad(circuit_eval, params, i) for i in range(params.size)]
    )
