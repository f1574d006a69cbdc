"""Static shortest path as a 16-qubit ground-state problem.

Builds the position-encoded QUBO for the fixed 4-node instance, verifies
it exhaustively against the classical oracle, then runs short VQE and
QAOA optimizations and decodes what they actually return.  With the
default budget here the solvers typically return invalid encodings --
the instructive negative result; raise `STEPS` toward 400 for full runs.

Run:  python demos/shortest_path_encoding.py          (~1 minute)
"""

import numpy as np

from qroute.encode import (
    build_shortest_path_qubo,
    decode_bitstring_to_path,
    penalty_coefficient,
    qubo_to_ising,
)
from qroute.harness import scenario_b_graph
from qroute.oracle import brute_force_ising_min, dijkstra, enumerate_simple_paths
from qroute.qsim import bitstring_label
from qroute.vqa import EntanglerAnsatzSpec, qaoa_solve, vqe_solve

STEPS = 120
SOURCE, DEST = 0, 3

graph = scenario_b_graph()
print(f"instance: {graph.n_nodes} nodes, edges {graph.edges}")

# --- classical ground truth ---------------------------------------------------
path, cost = dijkstra(graph, SOURCE, DEST)
print(f"Dijkstra: path {path}, cost {cost:g}")
paths = enumerate_simple_paths(graph, SOURCE, DEST)
print(f"all simple {SOURCE}->{DEST} paths: "
      f"{[(p, c) for p, c in paths]}")

# --- encoding -----------------------------------------------------------------
penalty = penalty_coefficient(graph, SOURCE, DEST)
qubo = build_shortest_path_qubo(graph, SOURCE, DEST, penalty)
ham = qubo_to_ising(qubo)
print(f"\npenalty coefficient: {penalty:g} "
      f"(2x the worst simple-path cost)")
print(f"Ising system size: {ham.n_qubits} qubits")

exact = brute_force_ising_min(ham)
best = exact.argmins[0]
decoded = decode_bitstring_to_path(best, graph.n_nodes, graph, SOURCE, DEST)
print(f"exhaustive minimum: energy {exact.optimum:g} at "
      f"{bitstring_label(best, ham.n_qubits)} -> path {decoded.path} "
      f"(valid={decoded.valid})")

# --- what the variational solvers actually find --------------------------------
def decoder(b):
    return decode_bitstring_to_path(b, graph.n_nodes, graph, SOURCE, DEST)


print(f"\nVQE ({STEPS} steps):")
trace = vqe_solve(ham, EntanglerAnsatzSpec(ham.n_qubits, 3), steps=STEPS,
                  seed=0, shots=4096, decoder=decoder)
print(f"  energy trace: start {trace.energies[0]:.1f} "
      f"-> end {trace.energies[-1]:.1f} (ground truth {exact.optimum:g})")
print(f"  most frequent bitstring decodes valid={trace.decoded.valid}; "
      f"violations={list(trace.decoded.violations)[:4]}")

print(f"\nQAOA (p=2, {STEPS} steps):")
trace = qaoa_solve(ham, p=2, steps=STEPS, seed=0, shots=4096, decoder=decoder)
spread = np.ptp(trace.energies)
print(f"  energy trace: start {trace.energies[0]:.1f} "
      f"-> end {trace.energies[-1]:.1f} (spread {spread:.1f})")
print(f"  most frequent bitstring decodes valid={trace.decoded.valid}")
