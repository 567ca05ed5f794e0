"""Brute-force reference implementations for cross-checking the library.

Everything here is deliberately independent of the sociogen implementation:
different algorithms (Floyd-Warshall instead of BFS, explicit triple
enumeration instead of degree formulas, raw-sum Pearson) over plain edge
lists.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np


def adjacency_sets(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    return adj


def fw_mean_geodesic(n: int, edges) -> float:
    """Floyd-Warshall mean distance over connected ordered pairs of the
    largest component."""
    big = float("inf")
    dist = [[0 if i == j else big for j in range(n)] for i in range(n)]
    for i, j in edges:
        dist[i][j] = dist[j][i] = 1
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == big:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    # Largest component = the largest group of mutually reachable nodes.
    unassigned = set(range(n))
    components = []
    while unassigned:
        seed_node = next(iter(unassigned))
        comp = {j for j in unassigned if dist[seed_node][j] < big}
        components.append(comp)
        unassigned -= comp
    comp = max(components, key=lambda c: (len(c), -min(c)))
    if len(comp) < 2:
        raise ValueError("largest component has no pairs")
    total = sum(dist[i][j] for i in comp for j in comp if i != j)
    return total / (len(comp) * (len(comp) - 1))


def transitivity_by_triples(n: int, edges) -> float | None:
    """3 * triangles / connected triples by explicit triple enumeration."""
    adj = adjacency_sets(n, edges)
    closed = 0
    triples = 0
    for a, b, c in combinations(range(n), 3):
        links = (b in adj[a]) + (c in adj[a]) + (c in adj[b])
        if links == 2:
            triples += 1
        elif links == 3:
            triples += 3
            closed += 3
    if triples == 0:
        return None
    return closed / triples


def pearson(xs, ys) -> float | None:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    if vx == 0 or vy == 0:
        return None
    return cov / math.sqrt(vx * vy)


def assortativity_by_pairs(n: int, edges) -> float | None:
    """Pearson over the explicit oriented endpoint-degree pair list."""
    deg = [0] * n
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
    xs, ys = [], []
    for i, j in edges:
        xs += [deg[i], deg[j]]
        ys += [deg[j], deg[i]]
    return pearson(xs, ys)


def numeric_homophily_by_pairs(edges, values) -> float | None:
    xs, ys = [], []
    for i, j in edges:
        xs += [values[i], values[j]]
        ys += [values[j], values[i]]
    return pearson(xs, ys)


def categorical_homophily_mixing(edges, labels) -> float | None:
    """Mixing-matrix assortativity built cell by cell."""
    cats = sorted(set(labels), key=str)
    index = {c: k for k, c in enumerate(cats)}
    k = len(cats)
    e = [[0.0] * k for _ in range(k)]
    for i, j in edges:
        e[index[labels[i]]][index[labels[j]]] += 1.0
        e[index[labels[j]]][index[labels[i]]] += 1.0
    total = sum(sum(row) for row in e)
    e = [[v / total for v in row] for row in e]
    trace = sum(e[d][d] for d in range(k))
    row_sums = [sum(e[i][j] for j in range(k)) for i in range(k)]
    col_sums = [sum(e[i][j] for i in range(k)) for j in range(k)]
    expected = sum(row_sums[i] * col_sums[i] for i in range(k))
    if expected == 1.0:
        return None
    return (trace - expected) / (1.0 - expected)


def random_graph(rng, n: int, p: float) -> list[tuple[int, int]]:
    """Simple seeded Erdos-Renyi edge list."""
    return [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p]


def sample_zeta_powerlaw(alpha: float, xmin: int, size: int, rng, cap: int = 2_000_000):
    """Exact discrete power-law sampler: pmf proportional to x**-alpha on
    xmin..cap, drawn by inverse CDF (truncation mass is ~1e-7 of the tail)."""
    support = np.arange(xmin, cap, dtype=np.float64)
    pmf = support ** (-alpha)
    cdf = np.cumsum(pmf)
    cdf /= cdf[-1]
    u = rng.random(size)
    picks = np.searchsorted(cdf, u, side="left")
    return support[np.minimum(picks, support.size - 1)].astype(np.int64)
