"""qroute: variational-quantum routing benchmarks with classical ground truth.

Subpackages:

* :mod:`qroute.qsim`    -- statevector simulator (gates, sampling, gradients)
* :mod:`qroute.graph`   -- weighted graphs and the edge-list file format
* :mod:`qroute.encode`  -- QUBO/Ising encodings and bitstring decoding
* :mod:`qroute.oracle`  -- exhaustive classical solvers for verification
* :mod:`qroute.vqa`     -- VQE and QAOA solvers with Adam and trace logging
* :mod:`qroute.netenv`  -- dynamic routing environment (churn, rewards)
* :mod:`qroute.agents`  -- policy-circuit REINFORCE agent and random baseline
* :mod:`qroute.harness` -- scenario runners, reports, CLI backend
"""

from .agents import PolicyCircuit, train
from .encode import (
    IsingHamiltonian,
    QuboMatrix,
    build_maxcut_hamiltonian,
    build_shortest_path_qubo,
    decode_bitstring_to_path,
    ising_energy,
    penalty_coefficient,
    qubo_to_ising,
)
from .graph import WeightedGraph, parse_edge_list
from .harness import ExperimentConfig, run, run_scenario_a, run_scenario_b, run_scenario_c
from .netenv import DynamicNetwork, barabasi_albert_generate
from .oracle import brute_force_ising_min, brute_force_maxcut, dijkstra
from .qsim import (
    DiagonalObservable,
    GateOp,
    StateVector,
    apply_gate,
    expectation_diagonal,
    most_frequent_bitstring,
    parameter_shift_grad,
    sample_counts,
)
from .vqa import (
    AdamState,
    ConvergenceTrace,
    EntanglerAnsatzSpec,
    QaoaParams,
    adam_step,
    approximation_ratio,
    entangler_ansatz_state,
    qaoa_ansatz_state,
    qaoa_solve,
    vqe_solve,
)

__version__ = "0.1.0"
