"""Undirected simple graph with dense integer node ids.

Nodes are numbered 0..node_count-1 in insertion order; the growth model
appends nodes and never deletes, so ids double as the logical growth order.
"""

from __future__ import annotations

import numpy as np


class Graph:
    """Append-only undirected simple graph.

    Adjacency is kept as one Python set per node, so neighbor intersection
    costs O(min degree). Degrees are mirrored in a numpy array for cheap
    vectorized reads (the generator and the metrics both lean on this).
    """

    __slots__ = ("_adj", "_deg", "_n", "_edge_count", "_max_degree")

    def __init__(self, node_count: int = 0):
        self._adj: list[set[int]] = [set() for _ in range(node_count)]
        self._deg = np.zeros(max(node_count, 8), dtype=np.int64)
        self._n = node_count
        self._edge_count = 0
        self._max_degree = 0

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def degrees(self) -> np.ndarray:
        """Degrees of nodes 0..node_count-1. Treat as read-only."""
        return self._deg[: self._n]

    def add_node(self) -> int:
        """Append a new isolated node and return its id."""
        node = self._n
        self._adj.append(set())
        if node >= len(self._deg):
            grown = np.zeros(len(self._deg) * 2, dtype=np.int64)
            grown[: self._n] = self._deg[: self._n]
            self._deg = grown
        self._deg[node] = 0
        self._n += 1
        return node

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self._n:
            raise ValueError(f"unknown node id {i}")

    def add_edge(self, i: int, j: int) -> bool:
        """Insert edge (i, j); return False without mutating if it exists."""
        self._check_node(i)
        self._check_node(j)
        if i == j:
            raise ValueError(f"self-loop rejected at node {i}")
        if j in self._adj[i]:
            return False
        self._adj[i].add(j)
        self._adj[j].add(i)
        self._deg[i] += 1
        self._deg[j] += 1
        self._edge_count += 1
        if self._deg[i] > self._max_degree:
            self._max_degree = int(self._deg[i])
        if self._deg[j] > self._max_degree:
            self._max_degree = int(self._deg[j])
        return True

    def has_edge(self, i: int, j: int) -> bool:
        self._check_node(i)
        self._check_node(j)
        return j in self._adj[i]

    def neighbors(self, i: int) -> set[int]:
        """Neighbor set of node i. Treat as read-only."""
        self._check_node(i)
        return self._adj[i]

    def degree(self, i: int) -> int:
        self._check_node(i)
        return int(self._deg[i])

    def common_neighbors(self, i: int, j: int) -> int:
        """Number of shared neighbors of i and j (i, j themselves excluded)."""
        self._check_node(i)
        self._check_node(j)
        return len(self._adj[i] & self._adj[j])

    def max_degree(self) -> int:
        if self._n == 0:
            raise ValueError("max_degree on empty graph")
        return self._max_degree

    def edges(self):
        """Yield edges as (i, j) with i < j, ordered by (i, j)."""
        for i in range(self._n):
            for j in sorted(self._adj[i]):
                if j > i:
                    yield i, j

    @classmethod
    def from_edges(cls, node_count: int, edges) -> "Graph":
        g = cls(node_count)
        for i, j in edges:
            g.add_edge(i, j)
        return g

    def write_edgelist(self, path) -> None:
        """Write edges as `i<TAB>j` lines, i < j, sorted, LF, no header."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for i, j in self.edges():
                fh.write(f"{i}\t{j}\n")

    @classmethod
    def read_edgelist(cls, path, node_count: int | None = None) -> "Graph":
        """Read an edge-list file.

        Without an explicit node_count, trailing isolated nodes are
        unrecoverable and node_count defaults to max id + 1.
        """
        pairs: list[tuple[int, int]] = []
        max_id = -1
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise ValueError(f"{path}:{lineno}: expected 'i<TAB>j', got {line!r}")
                try:
                    i, j = int(parts[0]), int(parts[1])
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: non-integer node id") from exc
                pairs.append((i, j))
                max_id = max(max_id, i, j)
        n = node_count if node_count is not None else max_id + 1
        if max_id >= n:
            raise ValueError(f"edge references id {max_id} >= node_count {n}")
        return cls.from_edges(n, pairs)
