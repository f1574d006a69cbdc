"""Dynamic routing with a quantum-circuit policy vs a random baseline.

Trains a small REINFORCE agent on the churning 8-node network and plots
both learning curves into an SVG.  The short budget here already shows
the characteristic picture: the windowed success rate wanders without a
sustained upward trend relative to the baseline.

Run:  python demos/dynamic_routing_agent.py          (~30 seconds)
"""

from qroute.agents import PolicyCircuit, random_baseline_curve, train
from qroute.netenv import DynamicNetwork, barabasi_albert_generate
from qroute.qsim import derive_seed
from qroute.svgplot import Series, emit_svg_plot

EPISODES = 600
SEED = 0

base = barabasi_albert_generate(8, m=2, seed=derive_seed(SEED, 1000))
print(f"base topology: 8 nodes, {base.n_edges} edges")

env = DynamicNetwork(base, seed=derive_seed(SEED, 1001))
policy = PolicyCircuit.initialize(8, n_layers=4, seed=derive_seed(SEED, 1002))
print(f"policy circuit: {policy.n_qubits} qubits, {policy.n_layers} layers, "
      f"{policy.params.size} parameters")

curve = train(env, policy, episodes=EPISODES, seed=SEED)

baseline_env = DynamicNetwork(base, seed=derive_seed(SEED, 1003))
baseline = random_baseline_curve(baseline_env, EPISODES, seed=derive_seed(SEED, 1004))

for name, c in (("agent", curve), ("random", baseline)):
    print(f"{name:>7}: final window success {c.final_window_success_rate:.2f}, "
          f"mean reward {c.window_mean_reward[-1]:+.1f}")
gap = abs(curve.final_window_success_rate - baseline.final_window_success_rate)
print(f"success-rate gap: {gap:.3f}")

out = emit_svg_plot(
    [
        Series("agent success", list(curve.episodes),
               list(curve.window_success_rate), "left"),
        Series("random success", list(baseline.episodes),
               list(baseline.window_success_rate), "left"),
        Series("agent reward", list(curve.episodes),
               list(curve.window_mean_reward), "right"),
    ],
    "dynamic_routing_curves.svg",
    title="100-episode windowed learning curves",
    xlabel="episode", ylabel="success rate", ylabel_right="mean reward",
)
print(f"wrote {out}")
