"""Undirected latency-weighted graphs and the shared edge-list text format.

Edge-list format: one edge per line, ``i j w`` (whitespace-separated),
``#`` starts a comment, node count inferred as max index + 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graphs or edge-list files."""


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph; every edge (i, j, w) has i < j and w > 0."""

    n_nodes: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if self.n_nodes < 1:
            raise GraphError(f"n_nodes must be positive, got {self.n_nodes}")
        seen = set()
        canon = []
        for (i, j, w) in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise GraphError(f"self-loop on node {i}")
            if i > j:
                i, j = j, i
            if not (0 <= i < self.n_nodes and 0 <= j < self.n_nodes):
                raise GraphError(f"edge ({i},{j}) out of range for {self.n_nodes} nodes")
            if (i, j) in seen:
                raise GraphError(f"duplicate edge ({i},{j})")
            if not w > 0:
                raise GraphError(f"edge ({i},{j}) has non-positive weight {w}")
            seen.add((i, j))
            canon.append((i, j, float(w)))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency_matrix(self) -> np.ndarray:
        """N x N symmetric weight matrix, 0 where there is no edge."""
        a = np.zeros((self.n_nodes, self.n_nodes))
        for (i, j, w) in self.edges:
            a[i, j] = w
            a[j, i] = w
        return a

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return any(i == u and j == v for (i, j, _) in self.edges)

    def weight(self, u: int, v: int) -> float:
        if u > v:
            u, v = v, u
        for (i, j, w) in self.edges:
            if i == u and j == v:
                return w
        raise GraphError(f"no edge ({u},{v})")

    def neighbors(self, u: int) -> list[int]:
        out = []
        for (i, j, _) in self.edges:
            if i == u:
                out.append(j)
            elif j == u:
                out.append(i)
        return sorted(out)

    def degree(self, u: int) -> int:
        return len(self.neighbors(u))

    def is_connected(self) -> bool:
        if self.n_nodes == 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n_nodes

    def to_edge_list_text(self) -> str:
        return "\n".join(f"{i} {j} {w:g}" for (i, j, w) in self.edges) + "\n"


def parse_edge_list_text(text: str) -> WeightedGraph:
    """Parse the ``i j w`` edge-list format; errors carry line numbers."""
    edges = []
    seen = set()
    max_node = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'i j w', got {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
        if i < 0 or j < 0:
            raise GraphError(f"line {lineno}: negative node index")
        if i == j:
            raise GraphError(f"line {lineno}: self-loop on node {i}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge ({key[0]},{key[1]})")
        if not w > 0:
            raise GraphError(f"line {lineno}: non-positive weight {w}")
        seen.add(key)
        edges.append((key[0], key[1], w))
        max_node = max(max_node, i, j)
    if not edges:
        raise GraphError("edge list is empty")
    return WeightedGraph(max_node + 1, tuple(edges))


def parse_edge_list(path) -> WeightedGraph:
    """Read a graph from an edge-list file (see module docstring)."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list_text(fh.read())
