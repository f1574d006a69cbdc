"""Max-Cut control experiment on the fixed 5-node, 7-edge instance.

QAOA is expected to find the optimal cut here; that success is what makes
the failures on the constrained routing problem (see
shortest_path_encoding.py) informative rather than an implementation bug.

Run:  python demos/maxcut_control.py          (~10 seconds)
"""

from qroute.encode import build_maxcut_hamiltonian
from qroute.harness import maxcut_partition_valid, scenario_a_graph
from qroute.oracle import brute_force_maxcut, cut_sizes_all
from qroute.qsim import bitstring_label
from qroute.vqa import approximation_ratio, qaoa_solve

graph = scenario_a_graph()
print(f"instance: {graph.n_nodes} nodes, {graph.n_edges} edges")

exact = brute_force_maxcut(graph)
print(f"brute-force optimum: cut {exact.optimum:g} "
      f"({len(exact.argmins)} optimal partitions)\n")

h_cost = build_maxcut_hamiltonian(graph)
cuts = cut_sizes_all(graph)

best = None
for seed in range(5):
    trace = qaoa_solve(h_cost, p=2, steps=400, seed=seed, shots=4096)
    b = trace.final_bitstring
    cut = cuts[b]
    valid = maxcut_partition_valid(b, graph.n_nodes)
    ratio = approximation_ratio(cut, exact.optimum, valid)
    print(f"seed {seed}: energy {trace.energies[-1]:+.4f}  "
          f"partition {bitstring_label(b, graph.n_nodes)}  cut {cut}  "
          f"ratio {'Invalid' if ratio is None else f'{ratio:.2f}'}")
    if best is None or cut > cuts[best.final_bitstring]:
        best = trace

print(f"\nbest partition {bitstring_label(best.final_bitstring, graph.n_nodes)} "
      f"with cut {cuts[best.final_bitstring]:g} (optimum {exact.optimum:g})")
