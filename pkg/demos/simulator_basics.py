"""Tour of the statevector simulator: gates, measurement, gradients.

Run:  python demos/simulator_basics.py
"""

import numpy as np

from qroute.qsim import (
    DiagonalObservable,
    GateOp,
    StateVector,
    apply_gate,
    expectation_diagonal,
    most_frequent_bitstring,
    parameter_shift_grad,
    sample_counts,
)

# --- build a Bell state -----------------------------------------------------
state = StateVector.zero_state(2)
state = apply_gate(state, GateOp("H", 0))
state = apply_gate(state, GateOp("CNOT", target=1, control=0))
print("Bell state amplitudes:", np.round(state.amplitudes, 6))

# --- sample it (deterministic per seed) --------------------------------------
counts = sample_counts(state, shots=4096, rng_seed=7)
print("4096-shot counts:", counts)
print("most frequent basis state:", format(most_frequent_bitstring(counts), "02b"))

# --- expectation of a diagonal observable ------------------------------------
# ZZ on two qubits: +1 where bits agree, -1 where they differ
zz = DiagonalObservable([1.0, -1.0, -1.0, 1.0])
print("<ZZ> on the Bell state:", expectation_diagonal(state, zz))

# --- parameter-shift gradient -------------------------------------------------
# E(theta) = <Z> after RY(theta)|0> = cos(theta); dE/dtheta = -sin(theta)
z = DiagonalObservable([1.0, -1.0])


def energy(params):
    out = apply_gate(StateVector.zero_state(1), GateOp("RY", 0, angle=params[0]))
    return expectation_diagonal(out, z)


for theta in (0.0, np.pi / 4, np.pi / 2):
    grad = parameter_shift_grad(energy, np.array([theta]), 0)
    print(f"dE/dtheta at {theta:.3f}: {grad:+.6f} (exact {-np.sin(theta):+.6f})")
