"""Acceptance suite: one test per acceptance criterion, each printing a
PASS line (run with ``pytest tests/test_acceptance.py -v -s``).

Criteria:
  1. encoding ground truth (exhaustive 16-variable enumeration)
  2. QAOA control result on the Max-Cut instance (best of 20 seeds)
  3. gradient correctness vs central finite differences
  4. simulator invariants (norm, inverses, variational bound)
  5. oracle agreement (Dijkstra/enumeration, Max-Cut/ground energy)
  6. negative-result harness on the 16-qubit problem (5 seeds per solver)
  7. QRL pipeline (3000 episodes, windows, invariants, determinism)
  8. reproducibility (byte-identical CSVs on rerun)
"""

import os

import numpy as np
import pytest

from conftest import random_connected_graph, random_gate
from qroute import agents, netenv, oracle, vqa
from qroute.encode import (
    bits_from_index,
    build_maxcut_hamiltonian,
    build_shortest_path_qubo,
    decode_bitstring_to_path,
    penalty_coefficient,
    qubo_to_ising,
)
from qroute.harness import (
    ExperimentConfig,
    run,
    run_scenario_a,
    run_scenario_b,
    run_scenario_c,
    scenario_a_graph,
    scenario_b_graph,
)
from qroute.qsim import (
    GateOp,
    StateVector,
    apply_gate,
    parameter_shift_gradient,
)

MAX_VALID_PATH_COST = 20.0  # worst simple 0->3 path on the 4-node instance


def _report(number: int, label: str):
    print(f"\nACCEPTANCE criterion {number}: PASS - {label}")


def _trace_energies(out_dir: str, name: str) -> np.ndarray:
    with open(os.path.join(out_dir, name)) as fh:
        lines = fh.read().splitlines()[1:]
    return np.array([float(line.split(",")[1]) for line in lines])


@pytest.fixture(scope="module")
def bench16():
    g = scenario_b_graph()
    penalty = penalty_coefficient(g, 0, 3)
    qubo = build_shortest_path_qubo(g, 0, 3, penalty)
    return g, qubo, qubo_to_ising(qubo)


def test_criterion_1_encoding_ground_truth(bench16):
    g, qubo, ham = bench16
    values = qubo.values_all()
    assert values.size == 1 << 16

    vmin = values.min()
    argmins = np.nonzero(values == vmin)[0]
    assert argmins.size == 1, "QUBO minimum must be unique"
    best = int(argmins[0])

    decoded = decode_bitstring_to_path(best, 4, g, 0, 3)
    assert decoded.valid and decoded.violations == ()
    assert decoded.path == [0, 1, 2, 3]
    assert decoded.cost == pytest.approx(11.0, abs=1e-9)
    # penalties all zero: the QUBO value is exactly the classical path cost
    assert vmin == pytest.approx(11.0, abs=1e-9)

    assert np.allclose(ham.energies_all(), values, atol=1e-9)
    _report(1, "unique 16-variable optimum decodes to [0, 1, 2, 3] at cost 11; "
               "Ising == QUBO on all 65536 bitstrings")


def test_criterion_2_qaoa_control_result(tmp_path):
    config = ExperimentConfig(scenario="A", algorithm="qaoa", seed=0,
                              steps=400, restarts=20, shots=4096,
                              out=str(tmp_path / "a20"))
    report = run_scenario_a(config)
    opt_cut = oracle.brute_force_maxcut(scenario_a_graph()).optimum

    optimal_rows = [r for r in report.rows if r["verdict"] == "Valid (Optimal)"]
    assert optimal_rows, "no seed reached the brute-force optimal cut"
    assert any(float(r["ratio"]) == 1.0 for r in optimal_rows)

    # variational bound on every trace this run produced
    floor = -opt_cut
    for seed in range(20):
        energies = _trace_energies(report.out_dir, f"qaoa_seed{seed}_trace.csv")
        assert energies.size == 400
        assert np.all(energies >= floor - 1e-9)

    _report(2, f"{len(optimal_rows)}/20 seeds reached the optimal cut "
               f"({opt_cut:g}), ratio 1.0")


def test_criterion_3_gradient_correctness(rng):
    eps = 1e-5
    for _ in range(100):
        n = int(rng.integers(1, 5))
        spec = vqa.EntanglerAnsatzSpec(n, int(rng.integers(1, 4)),
                                       rotation_axis=str(rng.choice(list("XYZ"))))
        J = rng.normal(size=(n, n))
        J = (J + J.T) / 2
        np.fill_diagonal(J, 0.0)
        from qroute.encode import IsingHamiltonian
        ham = IsingHamiltonian(n, rng.normal(size=n), J)
        params = rng.uniform(0, 2 * np.pi, spec.n_params)
        grads = parameter_shift_gradient(
            lambda p: vqa.vqe_energy(ham, spec, p), params)
        j = int(rng.integers(params.size))  # spot-check one partial per circuit
        up, dn = params.copy(), params.copy()
        up[j] += eps
        dn[j] -= eps
        fd = (vqa.vqe_energy(ham, spec, up) - vqa.vqe_energy(ham, spec, dn)) / (2 * eps)
        assert abs(grads[j] - fd) < 1e-5

    base = netenv.barabasi_albert_generate(8, 2, seed=1)
    checked = 0
    for trial in range(50):
        pc = agents.PolicyCircuit.initialize(8, seed=trial)
        u, d = rng.choice(8, size=2, replace=False)
        state = netenv.EnvState(int(u), int(d), base.adjacency_matrix(), 0)
        action = int(rng.integers(8))
        grad = agents.log_prob_gradient(pc, state, action)
        j = int(rng.integers(pc.params.size))
        up = pc.params.copy()
        dn = pc.params.copy()
        up[j] += eps
        dn[j] -= eps
        lp = lambda p: np.log(agents.policy_distribution(
            agents.PolicyCircuit(pc.n_qubits, pc.n_layers, p), state)[action])
        fd = (lp(up) - lp(dn)) / (2 * eps)
        assert abs(grad[j] - fd) < 1e-4
        checked += 1
    assert checked == 50
    _report(3, "parameter-shift matches finite differences: 100 entangler "
               "circuits (1e-5), 50 policy log-prob gradients (1e-4)")


def test_criterion_4_simulator_invariants(rng):
    # norm preservation over long random sequences
    for n in (3, 5, 6):
        amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        state = StateVector(n, amps / np.linalg.norm(amps))
        for _ in range(1000):
            state = apply_gate(state, random_gate(n, rng))
        assert abs(state.norm_sq() - 1.0) < 1e-10

    # gate-inverse round trips
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    state = StateVector(3, amps / np.linalg.norm(amps))
    theta = 0.9182
    pairs = [
        (GateOp("RX", 1, angle=theta), GateOp("RX", 1, angle=-theta)),
        (GateOp("RY", 0, angle=theta), GateOp("RY", 0, angle=-theta)),
        (GateOp("RZ", 2, angle=theta), GateOp("RZ", 2, angle=-theta)),
        (GateOp("H", 1), GateOp("H", 1)),
        (GateOp("CNOT", target=2, control=0), GateOp("CNOT", target=2, control=0)),
    ]
    for fwd, back in pairs:
        out = apply_gate(apply_gate(state, fwd), back)
        assert np.allclose(out.amplitudes, state.amplitudes, atol=1e-12)

    # variational bound on fresh solver traces
    from qroute.encode import IsingHamiltonian
    J = rng.normal(size=(3, 3))
    J = (J + J.T) / 2
    np.fill_diagonal(J, 0.0)
    ham = IsingHamiltonian(3, rng.normal(size=3), J, rng.normal())
    floor = ham.energies_all().min()
    trace_v = vqa.vqe_solve(ham, vqa.EntanglerAnsatzSpec(3, 2), steps=60,
                            seed=2, shots=256)
    trace_q = vqa.qaoa_solve(ham, p=2, steps=60, seed=2, shots=256)
    assert np.all(trace_v.energies >= floor - 1e-9)
    assert np.all(trace_q.energies >= floor - 1e-9)
    _report(4, "norm to 1e-10 over 1000-gate sequences, inverse round trips "
               "to 1e-12, variational bound on all traces")


def test_criterion_5_oracle_agreement(rng):
    for _ in range(50):
        n = int(rng.integers(3, 9))
        g = random_connected_graph(n, rng, integer_weights=False)
        s, d = rng.choice(n, size=2, replace=False)
        _, cost = oracle.dijkstra(g, int(s), int(d))
        assert cost == min(c for _, c in oracle.enumerate_simple_paths(
            g, int(s), int(d)))

    for _ in range(20):
        n = int(rng.integers(2, 9))
        g = random_connected_graph(n, rng)
        ground = build_maxcut_hamiltonian(g).energies_all().min()
        assert ground == -oracle.brute_force_maxcut(g).optimum
    _report(5, "Dijkstra == exhaustive minimum on 50 graphs; Max-Cut ground "
               "energy == -(brute-force cut) on 20 graphs")


def test_criterion_6_negative_result_harness(tmp_path, bench16):
    """Scenario-B completion and classification across 5 seeds per solver.

    The characteristic failure modes (convergence to invalid encodings,
    or no convergence at all) are seed-dependent and not asserted; what
    must hold is: full traces, lower-bounded energies, and decoder
    verdicts that agree with an independent QUBO-value recheck.
    """
    g, qubo, ham = bench16
    floor = oracle.brute_force_ising_min(ham).optimum  # = 11
    rates = {}
    for algo in ("vqe", "qaoa"):
        config = ExperimentConfig(scenario="B", algorithm=algo, seed=0,
                                  restarts=5, out=str(tmp_path / f"b_{algo}"))
        report = run_scenario_b(config)
        assert len(report.rows) == 5
        n_valid = 0
        for row in report.rows:
            seed = row["seed"]
            energies = _trace_energies(report.out_dir,
                                       f"{algo}_seed{seed}_trace.csv")
            assert energies.size == config.resolved().steps  # full trace
            assert np.all(energies >= floor - 1e-9)

            # independent recheck: a verdict of valid must coincide with a
            # penalty-free QUBO value (dominance: anything invalid costs
            # more than the worst valid path)
            b = int(row["bitstring"], 2)
            value = qubo.value(bits_from_index(b, 16))
            if int(row["valid"]):
                n_valid += 1
                assert value <= MAX_VALID_PATH_COST + 1e-9
                assert value == pytest.approx(float(row["cost"]), abs=1e-9)
                assert float(row["ratio"]) >= 1.0
            else:
                assert value > MAX_VALID_PATH_COST
                assert row["ratio"] == "Invalid"
        rates[algo] = n_valid / 5
        print(f"\n  scenario B {algo}: per-seed valid = "
              f"{[int(r['valid']) for r in report.rows]}, "
              f"validity rate {rates[algo]:.2f}")
    _report(6, f"5-seed 16-qubit runs complete and classify correctly "
               f"(validity rates: vqe {rates['vqe']:.2f}, "
               f"qaoa {rates['qaoa']:.2f})")


def test_criterion_7_qrl_pipeline(tmp_path):
    full_out = tmp_path / "c_full"
    config = ExperimentConfig(scenario="C", algorithm="qrl", seed=0,
                              episodes=3000, attach_m=2, discount=0.99,
                              out=str(full_out))
    report = run_scenario_c(config)

    for name in ("qrl_curve.csv", "random_curve.csv", "learning_curves.svg"):
        assert (full_out / name).exists()
    qrl_lines = (full_out / "qrl_curve.csv").read_text().splitlines()
    assert len(qrl_lines) == 3001

    by_algo = {r["algorithm"]: r for r in report.rows}
    assert by_algo["qrl"]["first_full_window_episode"] == 100
    gap = abs(float(by_algo["qrl"]["final_window_success_rate"])
              - float(by_algo["random"]["final_window_success_rate"]))
    assert any("final-window success" in line for line in report.header_lines)

    # determinism: a 300-episode run reproduces the first 300 rows exactly
    prefix_out = tmp_path / "c_prefix"
    run_scenario_c(ExperimentConfig(scenario="C", algorithm="qrl", seed=0,
                                    episodes=300, attach_m=2, discount=0.99,
                                    out=str(prefix_out)))
    prefix_lines = (prefix_out / "qrl_curve.csv").read_text().splitlines()
    assert prefix_lines == qrl_lines[:301]

    # agents-module invariants, checked live over an instrumented run
    base = netenv.barabasi_albert_generate(8, 2, seed=40)
    env = netenv.DynamicNetwork(base, seed=41)
    pc = agents.PolicyCircuit.initialize(8, seed=42)
    optimizer = vqa.AdamState.init(pc.params.size, 0.01)
    action_rng = np.random.default_rng(43)
    for episode in range(1, 101):
        states, actions, rewards = [], [], []
        state = netenv.reset(env, episode)
        while True:
            dist = agents.policy_distribution(pc, state)
            assert abs(dist.sum() - 1.0) < 1e-12  # policy normalization
            action = agents.sample_action(dist, action_rng)
            outcome = netenv.step(env, state, action)
            states.append(state)
            actions.append(action)
            rewards.append(outcome.reward)
            state = outcome.next_state
            if outcome.done:
                break
        traj = agents.Trajectory.from_episode(states, actions, rewards, 0.99)
        recomputed = agents.discounted_returns(rewards, 0.99)
        assert np.array_equal(traj.returns, recomputed)  # return recursion
        if episode % 20 == 0:  # zero score-function expectation
            dist = agents.policy_distribution(pc, states[0])
            acc = np.zeros(pc.params.size)
            for a in range(8):
                acc += dist[a] * agents.log_prob_gradient(pc, states[0], a)
            assert np.max(np.abs(acc)) < 1e-8
        pc, optimizer = agents.reinforce_update(pc, traj, optimizer)

    print(f"\n  scenario C: qrl final-window success "
          f"{by_algo['qrl']['final_window_success_rate']}, random "
          f"{by_algo['random']['final_window_success_rate']}, gap {gap:.4f}")
    _report(7, "3000-episode run deterministic with full windowed curves; "
               "invariants hold throughout an instrumented run")


def test_criterion_8_reproducibility(tmp_path):
    cases = [
        dict(scenario="A", algorithm="qaoa", seed=3, steps=25, shots=256,
             restarts=2),
        dict(scenario="B", algorithm="vqe", seed=1, steps=4, shots=128),
        dict(scenario="C", algorithm="qrl", seed=2, episodes=25, layers=2),
    ]
    for case in cases:
        outputs = []
        for tag in ("first", "second"):
            out = tmp_path / f"{case['scenario']}_{tag}"
            run(ExperimentConfig(out=str(out), **case))
            csvs = sorted(p for p in os.listdir(out) if p.endswith(".csv"))
            assert csvs
            outputs.append({p: (out / p).read_bytes() for p in csvs})
        assert outputs[0] == outputs[1], f"scenario {case['scenario']} differs"
    _report(8, "identical configs reproduce byte-identical CSVs in all "
               "three scenarios")
