"""Quantum-circuit policy agent (REINFORCE) and the random-choice baseline.

The policy runs on ceil(log2 N) qubits: an angle-encoding layer writes
(current node, destination, degree of current node) into Y-rotations,
then an entangler-style variational circuit produces amplitudes whose
squared magnitudes (lightly smoothed) form the action distribution over
all 2^n basis states -- every node, neighbor or not; the environment's
invalid-action penalty is the only pressure against bad picks.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .netenv import DONE_REACHED, DynamicNetwork, EnvState, reset, step
from .qsim import (
    StateVector,
    apply_1q_inplace,
    apply_permutation_inplace,
    derive_seed,
    make_rng,
    parameter_shift_grad,
    ring_permutation,
    rotation_matrix,
)
from .vqa import AdamState, adam_step

SMOOTHING_EPS = 1e-3  # keeps log-prob gradients finite when |psi_a|^2 = 0
DEFAULT_POLICY_LAYERS = 4
DEFAULT_EPISODES = 3000
DEFAULT_DISCOUNT = 0.99
DEFAULT_AGENT_LR = 0.01
WINDOW = 100


@dataclass(frozen=True)
class PolicyCircuit:
    """State-encoding layer plus a trainable entangler-style circuit."""

    n_qubits: int
    n_layers: int
    params: np.ndarray
    rotation_axis: str = "X"

    def __post_init__(self):
        p = np.asarray(self.params, dtype=np.float64)
        if p.shape != (self.n_layers * self.n_qubits,):
            raise ValueError(
                f"expected {self.n_layers * self.n_qubits} parameters, got {p.size}"
            )
        object.__setattr__(self, "params", p)

    @classmethod
    def initialize(
        cls, n_nodes: int, n_layers: int = DEFAULT_POLICY_LAYERS, seed=0
    ) -> "PolicyCircuit":
        """Random-angle policy sized for an n-node network."""
        n_qubits = max(1, int(np.ceil(np.log2(n_nodes))))
        rng = make_rng(seed)
        params = rng.uniform(0.0, 2.0 * np.pi, n_layers * n_qubits)
        return cls(n_qubits, n_layers, params)

    @property
    def n_actions(self) -> int:
        return 1 << self.n_qubits


def _encoding_angles(state: EnvState, n_nodes: int) -> tuple[float, float, float]:
    degree = int(np.count_nonzero(state.adjacency[state.current]))
    return (
        np.pi * state.current / n_nodes,
        np.pi * state.dest / n_nodes,
        np.pi * degree / n_nodes,
    )


def _encode_inplace(amps: np.ndarray, n_qubits: int, state: EnvState):
    n_nodes = state.adjacency.shape[0]
    for feature_ix, angle in enumerate(_encoding_angles(state, n_nodes)):
        q = feature_ix % n_qubits
        apply_1q_inplace(amps, n_qubits, q, rotation_matrix("Y", angle))


def encode_state(state: EnvState, n_qubits: int) -> StateVector:
    """Angle-encode (u, d, deg(u)) as Y-rotations from |0...0>.

    Features are scaled to [0, pi) by the node count and assigned
    round-robin over qubits (one per qubit in the 3-qubit case).
    """
    n_nodes = state.adjacency.shape[0]
    if n_nodes > (1 << n_qubits):
        raise ValueError(f"{n_nodes} nodes need more than {n_qubits} qubits")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    _encode_inplace(amps, n_qubits, state)
    return StateVector(n_qubits, amps)


def _policy_amps(pc: PolicyCircuit, state: EnvState, params: np.ndarray) -> np.ndarray:
    n = pc.n_qubits
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    _encode_inplace(amps, n, state)
    perm = ring_permutation(n)
    scratch = np.empty_like(amps)
    for layer in range(pc.n_layers):
        for q in range(n):
            u = rotation_matrix(pc.rotation_axis, params[layer * n + q])
            apply_1q_inplace(amps, n, q, u)
        if n > 1:
            apply_permutation_inplace(amps, perm, scratch)
    return amps


def policy_distribution(pc: PolicyCircuit, state: EnvState) -> np.ndarray:
    """Smoothed basis-state probabilities over all 2^n actions.

    p~_a = (1 - eps) |psi_a|^2 + eps / 2^n: strictly positive, sums to 1.
    """
    amps = _policy_amps(pc, state, pc.params)
    probs = amps.real**2 + amps.imag**2
    return (1.0 - SMOOTHING_EPS) * probs + SMOOTHING_EPS / probs.size


def sample_action(dist: np.ndarray, rng) -> int:
    """Categorical draw from an action distribution; deterministic per rng state."""
    dist = np.asarray(dist, dtype=np.float64)
    if dist.min() < 0 or not np.isclose(dist.sum(), 1.0, atol=1e-9):
        raise ValueError("not a probability vector")
    rng = make_rng(rng)
    return int(rng.choice(dist.size, p=dist / dist.sum()))


def log_prob_gradient(pc: PolicyCircuit, state: EnvState, action: int) -> np.ndarray:
    """d/dtheta of log p~(action | state), by the parameter-shift rule.

    The shift rule differentiates the projector expectation |psi_a|^2 =
    <psi| |a><a| |psi>; the smoothing then gives
    grad log p~_a = (1 - eps) grad |psi_a|^2 / p~_a.
    """
    if not 0 <= action < pc.n_actions:
        raise ValueError(f"action {action} out of range")

    def projector_eval(params):
        amps = _policy_amps(pc, state, params)
        a = amps[action]
        return float(a.real**2 + a.imag**2)

    grad_prob = np.array([
        parameter_shift_grad(projector_eval, pc.params, j)
        for j in range(pc.params.size)
    ])
    prob = projector_eval(pc.params)
    smoothed = (1.0 - SMOOTHING_EPS) * prob + SMOOTHING_EPS / pc.n_actions
    return (1.0 - SMOOTHING_EPS) * grad_prob / smoothed


@dataclass(frozen=True)
class Trajectory:
    """One episode: (state, action, reward) per step plus discounted returns."""

    states: tuple[EnvState, ...]
    actions: tuple[int, ...]
    rewards: tuple[float, ...]
    returns: np.ndarray

    @classmethod
    def from_episode(cls, states, actions, rewards, discount: float) -> "Trajectory":
        return cls(tuple(states), tuple(actions), tuple(rewards),
                   discounted_returns(rewards, discount))

    def __len__(self) -> int:
        return len(self.actions)


def discounted_returns(rewards, discount: float) -> np.ndarray:
    """G_t = r_{t+1} + discount * G_{t+1}, computed backward."""
    out = np.empty(len(rewards))
    acc = 0.0
    for t in range(len(rewards) - 1, -1, -1):
        acc = rewards[t] + discount * acc
        out[t] = acc
    return out


def reinforce_update(pc: PolicyCircuit, trajectory: Trajectory, optimizer):
    """One episode's policy-gradient step.

    Accumulates sum_t G_t grad log pi(a_t | s_t) and feeds its negation to
    Adam (gradient ascent on expected return, expressed as descent).
    Returns the updated (policy, optimizer).
    """
    if len(trajectory) == 0:
        raise ValueError("empty trajectory")
    delta = np.zeros_like(pc.params)
    for s, a, g in zip(trajectory.states, trajectory.actions, trajectory.returns):
        delta += g * log_prob_gradient(pc, s, a)
    optimizer, new_params = adam_step(optimizer, pc.params, -delta)
    return replace(pc, params=new_params), optimizer


@dataclass
class LearningCurve:
    """Per-episode training metrics with trailing-window summaries.

    Window statistics cover the trailing `window` episodes; warm-up rows
    (fewer than `window` episodes seen) average what exists and are
    flagged False in `window_full`.  CSV columns:
    episode,total_reward,success,length,window_success_rate,window_mean_reward
    """

    episodes: np.ndarray
    total_rewards: np.ndarray
    successes: np.ndarray
    lengths: np.ndarray
    window_success_rate: np.ndarray
    window_mean_reward: np.ndarray
    window_full: np.ndarray
    window: int = WINDOW
    step_log: list | None = None

    def csv_text(self) -> str:
        lines = ["episode,total_reward,success,length,"
                 "window_success_rate,window_mean_reward"]
        for i in range(self.episodes.size):
            lines.append(
                f"{int(self.episodes[i])},{float(self.total_rewards[i])!r},"
                f"{int(self.successes[i])},{int(self.lengths[i])},"
                f"{float(self.window_success_rate[i])!r},"
                f"{float(self.window_mean_reward[i])!r}"
            )
        return "\n".join(lines) + "\n"

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.csv_text())

    @property
    def final_window_success_rate(self) -> float:
        return float(self.window_success_rate[-1])


def trailing_mean(values: np.ndarray, window: int) -> np.ndarray:
    """Mean over the trailing `window` entries (shorter during warm-up)."""
    values = np.asarray(values, dtype=np.float64)
    csum = np.concatenate([[0.0], np.cumsum(values)])
    k = np.arange(1, values.size + 1)
    lo = np.maximum(0, k - window)
    return (csum[k] - csum[lo]) / (k - lo)


def _curve_from_records(total_rewards, successes, lengths, window, step_log=None):
    total_rewards = np.asarray(total_rewards, dtype=np.float64)
    successes = np.asarray(successes, dtype=bool)
    lengths = np.asarray(lengths, dtype=np.int64)
    m = total_rewards.size
    return LearningCurve(
        episodes=np.arange(1, m + 1),
        total_rewards=total_rewards,
        successes=successes,
        lengths=lengths,
        window_success_rate=trailing_mean(successes.astype(float), window),
        window_mean_reward=trailing_mean(total_rewards, window),
        window_full=np.arange(1, m + 1) >= window,
        window=window,
        step_log=step_log,
    )


def _rollout(env, choose_action, episode_ix, reset_seed, log: list | None):
    states, actions, rewards = [], [], []
    state = reset(env, reset_seed)
    while True:
        action = choose_action(state)
        outcome = step(env, state, action)
        states.append(state)
        actions.append(action)
        rewards.append(outcome.reward)
        if log is not None:
            log.append((episode_ix, state.step_count + 1, state.current,
                        state.dest, action, outcome.reward, outcome.done_reason))
        state = outcome.next_state
        if outcome.done:
            return states, actions, rewards, outcome.done_reason


def train(
    env: DynamicNetwork,
    pc: PolicyCircuit,
    episodes: int = DEFAULT_EPISODES,
    discount: float = DEFAULT_DISCOUNT,
    learning_rate: float = DEFAULT_AGENT_LR,
    seed: int = 0,
    log_steps: bool = False,
) -> LearningCurve:
    """REINFORCE training loop: rollout, discounted returns, one Adam step
    per episode.  Fully deterministic per (env seed, policy seed, seed).
    """
    if episodes < 1:
        raise ValueError(f"episodes must be >= 1, got {episodes}")
    action_rng = make_rng(derive_seed(seed, 0))
    optimizer = AdamState.init(pc.params.size, learning_rate)
    totals, succ, lens = [], [], []
    step_log: list | None = [] if log_steps else None

    for ep in range(1, episodes + 1):
        policy = pc  # frozen during the episode; updated at the end

        def choose(state):
            return sample_action(policy_distribution(policy, state), action_rng)

        states, actions, rewards, done_reason = _rollout(
            env, choose, ep, derive_seed(seed, ep), step_log)
        trajectory = Trajectory.from_episode(states, actions, rewards, discount)
        pc, optimizer = reinforce_update(pc, trajectory, optimizer)
        totals.append(sum(rewards))
        succ.append(done_reason == DONE_REACHED)
        lens.append(len(rewards))

    return _curve_from_records(totals, succ, lens, WINDOW, step_log)


@dataclass(frozen=True)
class EpisodeRecord:
    total_reward: float
    success: bool
    length: int


def random_agent_episode(env: DynamicNetwork, seed) -> EpisodeRecord:
    """One episode choosing uniformly among the live neighbors of u.

    Same termination rules as the learned agent.  If churn isolates the
    packet's node, the agent picks its own node (an invalid action) and
    takes the penalty.
    """
    rng = make_rng(seed)

    def choose(state):
        neighbors = np.nonzero(state.adjacency[state.current])[0]
        if neighbors.size == 0:
            return state.current
        return int(rng.choice(neighbors))

    _, _, rewards, done_reason = _rollout(env, choose, 0, rng, None)
    return EpisodeRecord(sum(rewards), done_reason == DONE_REACHED, len(rewards))


def random_baseline_curve(
    env: DynamicNetwork, episodes: int, seed: int = 0
) -> LearningCurve:
    """Random-choice baseline over the same episode count and window format."""
    totals, succ, lens = [], [], []
    for ep in range(1, episodes + 1):
        rec = random_agent_episode(env, derive_seed(seed, ep))
        totals.append(rec.total_reward)
        succ.append(rec.success)
        lens.append(rec.length)
    return _curve_from_records(totals, succ, lens, WINDOW)
