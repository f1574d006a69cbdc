"""Dynamic routing environment: scale-free topology, edge churn, latency rewards.

An episode routes one packet from a random source to a random destination
on an 8-node (by default) preferential-attachment graph whose links churn
every `churn_interval` steps: one random existing edge disappears and one
random previously-absent pair gets a fresh uniformly-weighted link.

Reward for choosing next hop v from node u on topology E(t):

* `reach_reward`          if v is the destination and (u, v) is a live link
* -w_uv(t)                if (u, v) is a live link and v is not the destination
* `invalid_penalty`       otherwise (the packet stays put)

Choosing the destination without a live link to it counts as invalid: a
packet cannot teleport.  Episodes end on delivery or after `max_steps`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph
from .qsim import make_rng

logger = logging.getLogger(__name__)

DONE_REACHED = "REACHED"
DONE_TIMEOUT = "TIMEOUT"

WEIGHT_LOW = 1
WEIGHT_HIGH = 10


@dataclass(frozen=True)
class EpisodeConfig:
    """Episode rules; rewards must keep delivery preferable to wandering."""

    max_steps: int = 25
    churn_interval: int = 10
    reach_reward: float = 100.0
    invalid_penalty: float = -50.0


@dataclass(frozen=True)
class EnvState:
    """What the agent sees: (current node, destination, live adjacency)."""

    current: int
    dest: int
    adjacency: np.ndarray
    step_count: int = 0


@dataclass(frozen=True)
class StepOutcome:
    reward: float
    next_state: EnvState
    done: bool
    done_reason: str | None


def barabasi_albert_generate(n: int = 8, m: int = 2, seed=0) -> WeightedGraph:
    """Preferential-attachment graph with integer latencies in [1, 10].

    Starts from a complete graph on m+1 nodes; each further node attaches
    to m distinct existing nodes drawn (sequentially, renormalizing)
    proportionally to current degree.  Connected by construction; edge
    count is C(m+1, 2) + (n-m-1)*m.  Deterministic per seed.
    """
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    rng = make_rng(seed)
    edges: list[tuple[int, int, float]] = []
    degree = np.zeros(n, dtype=np.int64)

    def add_edge(i, j):
        w = float(rng.integers(WEIGHT_LOW, WEIGHT_HIGH + 1))
        edges.append((i, j, w))
        degree[i] += 1
        degree[j] += 1

    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            add_edge(i, j)

    for new in range(m + 1, n):
        chosen: list[int] = []
        for _ in range(m):
            avail = np.array([v for v in range(new) if v not in chosen])
            weights = degree[avail].astype(np.float64)
            target = int(rng.choice(avail, p=weights / weights.sum()))
            chosen.append(target)
        for target in chosen:
            add_edge(min(new, target), max(new, target))

    return WeightedGraph(n, tuple(edges))


class DynamicNetwork:
    """Mutable environment wrapper around a WeightedGraph.

    Churn accumulates within an episode; by default `reset` restores the
    base topology so every episode starts from the same graph (set
    `restore_on_reset=False` to let churn persist across episodes).
    One instance is a single-threaded state machine; run independent
    seeds in separate instances.
    """

    def __init__(
        self,
        graph: WeightedGraph,
        seed=0,
        config: EpisodeConfig = EpisodeConfig(),
        restore_on_reset: bool = True,
    ):
        self.base_graph = graph
        self.graph = graph
        self.rng = make_rng(seed)
        self.config = config
        self.restore_on_reset = restore_on_reset
        self.episode_active = False

    @property
    def n_nodes(self) -> int:
        return self.graph.n_nodes


def churn(net: DynamicNetwork) -> DynamicNetwork:
    """Drop one random existing edge, add one random previously-absent pair.

    The new link gets a fresh uniform integer weight in [1, 10].  Edge
    count is conserved, except on a complete graph where no pair is
    absent: then the addition is skipped with a warning.
    """
    g = net.graph
    edges = list(g.edges)
    if not edges:
        raise ValueError("cannot churn a graph with no edges")
    absent = [
        (i, j)
        for i in range(g.n_nodes)
        for j in range(i + 1, g.n_nodes)
        if not any(e[0] == i and e[1] == j for e in edges)
    ]
    drop = int(net.rng.integers(len(edges)))
    del edges[drop]
    if absent:
        i, j = absent[int(net.rng.integers(len(absent)))]
        w = float(net.rng.integers(WEIGHT_LOW, WEIGHT_HIGH + 1))
        edges.append((i, j, w))
    else:
        logger.warning("churn on a complete graph: edge removed, none added")
    net.graph = WeightedGraph(g.n_nodes, tuple(edges))
    return net


def reset(net: DynamicNetwork, seed) -> EnvState:
    """Start an episode with a uniformly random ordered (source, dest) pair."""
    if net.graph.n_nodes < 2:
        raise ValueError("need at least 2 nodes")
    if net.restore_on_reset:
        net.graph = net.base_graph
    rng = make_rng(seed)
    n = net.graph.n_nodes
    source = int(rng.integers(n))
    dest = int(rng.integers(n - 1))
    if dest >= source:
        dest += 1
    net.episode_active = True
    return EnvState(source, dest, net.graph.adjacency_matrix(), 0)


def step(net: DynamicNetwork, state: EnvState, action: int) -> StepOutcome:
    """Advance one hop; reward from the pre-step topology.

    Out-of-range actions fall into the invalid branch (a nonexistent node
    is not a live link), so 2^k-sized policy action spaces degrade
    gracefully when the node count is below 2^k.  Churn fires after steps
    that are multiples of `churn_interval` while the episode is live, so
    the next decision sees the post-churn adjacency.
    """
    if not net.episode_active:
        raise RuntimeError("step() called on a finished episode; reset first")
    cfg = net.config
    u = state.current
    adj = net.graph.adjacency_matrix()
    n = net.graph.n_nodes

    in_range = isinstance(action, (int, np.integer)) and 0 <= action < n
    w = float(adj[u, action]) if in_range else 0.0
    reached = in_range and action == state.dest and w > 0
    if reached:
        reward = cfg.reach_reward
        new_u = int(action)
    elif w > 0:
        reward = -w
        new_u = int(action)
    else:
        reward = cfg.invalid_penalty
        new_u = u

    step_count = state.step_count + 1
    done = reached or step_count >= cfg.max_steps
    done_reason = DONE_REACHED if reached else (DONE_TIMEOUT if done else None)
    if done:
        net.episode_active = False
    elif step_count % cfg.churn_interval == 0:
        churn(net)

    next_state = EnvState(new_u, state.dest, net.graph.adjacency_matrix(), step_count)
    return StepOutcome(reward, next_state, done, done_reason)


EPISODE_LOG_HEADER = "episode,step,u,dest,action,reward,done_reason"


def episode_log_csv(rows) -> str:
    """Serialize (episode, step, u, dest, action, reward, done_reason) rows."""
    lines = [EPISODE_LOG_HEADER]
    for (episode, step_ix, u, dest, action, reward, done_reason) in rows:
        lines.append(
            f"{episode},{step_ix},{u},{dest},{action},{float(reward)!r},"
            f"{done_reason or ''}"
        )
    return "\n".join(lines) + "\n"
