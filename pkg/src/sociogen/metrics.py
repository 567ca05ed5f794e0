"""Validation statistics for generated and ingested networks.

Density, global clustering (transitivity, with the mean-local coefficient as
a secondary figure), mean geodesic distance over the largest component,
degree assortativity, per-attribute homophily, and a discrete power-law fit
with KS-selected cutoff. Metrics that are undefined on a given graph (e.g.
assortativity of a degree-regular graph) are reported as None, never as 0.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize, special
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .attributes import CATEGORICAL, AttributeSchema, NodeProfile
from .graph import Graph

REPORT_VERSION = 1

_GEODESIC_CHUNK = 512


def _edge_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    heads, tails = [], []
    for i, j in g.edges():
        heads.append(i)
        tails.append(j)
    return np.array(heads, dtype=np.int64), np.array(tails, dtype=np.int64)


def density(g: Graph) -> float:
    """2E / n(n-1)."""
    n = g.node_count
    if n < 2:
        raise ValueError("density needs at least 2 nodes")
    return 2.0 * g.edge_count / (n * (n - 1))


def average_degree(g: Graph) -> float:
    if g.node_count == 0:
        raise ValueError("empty graph")
    return 2.0 * g.edge_count / g.node_count


def _triangle_counts(g: Graph) -> tuple[int, np.ndarray]:
    """(3 * triangle count, per-node triangle membership counts).

    One pass over edges; each triangle is seen once per edge, each time
    attributing its opposite vertex.
    """
    per_node = np.zeros(g.node_count, dtype=np.int64)
    closed = 0
    for i, j in g.edges():
        shared = g.neighbors(i) & g.neighbors(j)
        if shared:
            closed += len(shared)
            per_node[list(shared)] += 1
    return closed, per_node


def clustering_coefficient(g: Graph) -> float | None:
    """Global transitivity: 3 * triangles / connected triples.

    None when the graph has no connected triple.
    """
    degrees = g.degrees
    triples = int((degrees * (degrees - 1) // 2).sum())
    if triples == 0:
        return None
    closed, _ = _triangle_counts(g)
    return closed / triples


def local_clustering_mean(g: Graph) -> float | None:
    """Mean local clustering coefficient; nodes of degree < 2 count as 0."""
    if g.node_count == 0:
        return None
    _, per_node = _triangle_counts(g)
    degrees = g.degrees.astype(np.float64)
    eligible = degrees >= 2
    local = np.zeros(g.node_count)
    local[eligible] = 2.0 * per_node[eligible] / (degrees[eligible] * (degrees[eligible] - 1))
    return float(local.mean())


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components, each as a sorted id list, largest first."""
    seen = np.zeros(g.node_count, dtype=bool)
    components = []
    for start in range(g.node_count):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            v = stack.pop()
            members.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        members.sort()
        components.append(members)
    components.sort(key=len, reverse=True)
    return components


def avg_geodesic_distance(g: Graph) -> float:
    """Mean shortest-path length over connected ordered pairs in the largest
    component (BFS from every node, run in chunks)."""
    if g.node_count == 0:
        raise ValueError("empty graph")
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    component = max(connected_components(g), key=len)
    index = {v: k for k, v in enumerate(component)}
    size = len(component)
    rows, cols = [], []
    for v in component:
        for w in g.neighbors(v):
            rows.append(index[v])
            cols.append(index[w])
    adjacency = csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size)
    )
    total = 0.0
    for start in range(0, size, _GEODESIC_CHUNK):
        stop = min(start + _GEODESIC_CHUNK, size)
        dist = shortest_path(adjacency, method="D", unweighted=True,
                             indices=np.arange(start, stop))
        total += dist.sum()
    return total / (size * (size - 1))


def degree_assortativity(g: Graph) -> float | None:
    """Pearson correlation of endpoint degrees over both edge orientations.

    None when endpoint degrees carry no variance (regular graphs).
    """
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    heads, tails = _edge_arrays(g)
    degrees = g.degrees
    x = np.concatenate([degrees[heads], degrees[tails]]).astype(np.float64)
    y = np.concatenate([degrees[tails], degrees[heads]]).astype(np.float64)
    return _pearson(x, y)


def _pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    vx = x - x.mean()
    vy = y - y.mean()
    denom = np.sqrt((vx * vx).sum() * (vy * vy).sum())
    if denom == 0:
        return None
    return float((vx * vy).sum() / denom)


def attribute_homophily(
    g: Graph, profiles: list[NodeProfile], schema: AttributeSchema, attr_index: int
) -> float | None:
    """Assortativity of one attribute across edges.

    Categorical attributes use the mixing-matrix coefficient
    (trace(e) - sum(e @ e)) / (1 - sum(e @ e)); ordinal/numerical attributes
    use the Pearson correlation of endpoint values over both orientations.
    None when every endpoint carries the same value.
    """
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    heads, tails = _edge_arrays(g)
    values = [p[attr_index] for p in profiles]
    if schema.kind == CATEGORICAL:
        code_of = {level: k for k, level in enumerate(schema.levels)}
        codes = np.array([code_of[v] for v in values], dtype=np.int64)
        k = len(schema.levels)
        mixing = np.zeros((k, k))
        np.add.at(mixing, (codes[heads], codes[tails]), 1.0)
        np.add.at(mixing, (codes[tails], codes[heads]), 1.0)
        mixing /= mixing.sum()
        agreement = float(np.trace(mixing))
        expected = float((mixing @ mixing).sum())
        if expected == 1.0:
            return None
        return (agreement - expected) / (1.0 - expected)
    vals = np.array(values, dtype=np.float64)
    x = np.concatenate([vals[heads], vals[tails]])
    y = np.concatenate([vals[tails], vals[heads]])
    return _pearson(x, y)


def homophily_scores(
    g: Graph, profiles: list[NodeProfile], schemas: list[AttributeSchema]
) -> dict[str, float | None]:
    return {
        schema.name: attribute_homophily(g, profiles, schema, k)
        for k, schema in enumerate(schemas)
    }


def degree_histogram(g: Graph) -> list[tuple[int, int]]:
    """(degree, frequency) pairs in increasing degree order."""
    values, counts = np.unique(g.degrees, return_counts=True)
    return [(int(v), int(c)) for v, c in zip(values, counts)]


@dataclass(frozen=True)
class PowerlawFit:
    alpha: float
    xmin: int
    ks: float
    tail_size: int


def _discrete_mle_alpha(mean_log: float, xmin: float) -> float:
    """Exact discrete MLE exponent: solves d/da ln zeta(a, xmin) = -mean_log.

    The log-likelihood is strictly concave in a, so the score has a unique
    root; the bracket grows until it straddles it.
    """
    step = 1e-6
    asymptote = mean_log - np.log(xmin)  # positive: the tail has >=2 values

    def score(a: float) -> float:
        upper = special.zeta(a + step, xmin)
        lower = special.zeta(a - step, xmin)
        if upper <= 0 or lower <= 0:
            # zeta underflowed: a is far beyond the root, where the exact
            # score approaches mean_log - ln(xmin) from below.
            return asymptote
        return (np.log(upper) - np.log(lower)) / (2 * step) + mean_log

    lo, hi = 1.0001, 12.0
    while score(hi) < 0:
        hi *= 2
        if hi > 512:
            return hi  # effectively a point mass just above xmin
    return float(optimize.brentq(score, lo, hi, xtol=1e-9))


def powerlaw_fit(degrees) -> PowerlawFit | None:
    """Discrete power-law fit of a degree sample.

    For each cutoff candidate, alpha is the exact maximum-likelihood
    exponent of the zeta-normalized discrete model P(x) = x**-alpha /
    zeta(alpha, xmin) over the tail x >= xmin; the cutoff is chosen over all
    distinct sample values to minimize the KS distance between the empirical
    tail and the fitted survival function. The popular closed form
    1 + n / sum(ln(x / (xmin - 1/2))) approximates this estimate but is too
    biased at small cutoffs for the KS selection to land reliably.

    Returns None when fewer than 10 nonzero values exist or all values are
    equal; cutoff candidates whose tail has a single distinct value are
    skipped (their KS is degenerate).
    """
    x = np.sort(np.asarray([d for d in degrees if d > 0], dtype=np.float64))
    if x.size < 10:
        return None
    uniques = np.unique(x)
    if uniques.size < 2:
        return None
    n = x.size
    starts = np.searchsorted(x, uniques, side="left")
    # Suffix sums of log degrees make each candidate's mean log O(1).
    log_suffix = np.concatenate([np.cumsum(np.log(x[::-1]))[::-1], [0.0]])
    tail_sizes = n - starts
    best: PowerlawFit | None = None
    for m in range(uniques.size - 1):
        xmin = uniques[m]
        n_tail = int(tail_sizes[m])
        alpha = _discrete_mle_alpha(log_suffix[starts[m]] / n_tail, float(xmin))
        empirical = tail_sizes[m:] / n_tail
        with np.errstate(divide="ignore", invalid="ignore"):
            model = special.zeta(alpha, uniques[m:]) / special.zeta(alpha, xmin)
        ks = float(np.abs(empirical - model).max())
        if not np.isfinite(ks):
            continue
        if best is None or ks < best.ks:
            best = PowerlawFit(float(alpha), int(xmin), ks, n_tail)
    return best


@dataclass
class MetricsReport:
    """The validation statistics for one graph, plus homophily per attribute
    when node profiles are available. Undefined values are None."""

    nodes: int
    edges: int
    density: float
    avg_degree: float
    clustering_coefficient: float | None
    clustering_local_mean: float | None
    avg_geodesic_distance: float | None
    powerlaw_alpha: float | None
    powerlaw_xmin: int | None
    degree_assortativity: float | None
    homophily: dict[str, float | None] = field(default_factory=dict)

    SCALAR_FIELDS = (
        "nodes",
        "edges",
        "density",
        "avg_degree",
        "clustering_coefficient",
        "clustering_local_mean",
        "avg_geodesic_distance",
        "powerlaw_alpha",
        "powerlaw_xmin",
        "degree_assortativity",
    )

    def csv_columns(self) -> list[str]:
        return list(self.SCALAR_FIELDS) + [f"homophily_{name}" for name in self.homophily]

    def csv_values(self) -> list:
        values = [getattr(self, name) for name in self.SCALAR_FIELDS]
        values.extend(self.homophily.values())
        return values


def measure_graph(
    g: Graph,
    profiles: list[NodeProfile] | None = None,
    schemas: list[AttributeSchema] | None = None,
) -> MetricsReport:
    """Compute the full MetricsReport; homophily only when profiles given."""
    fit = powerlaw_fit(g.degrees) if g.edge_count else None
    has_edges = g.edge_count > 0
    closed, per_node = _triangle_counts(g)
    degrees = g.degrees.astype(np.float64)
    triples = float((degrees * (degrees - 1) / 2).sum())
    transitivity = closed / triples if triples > 0 else None
    eligible = degrees >= 2
    local = np.zeros(g.node_count)
    if eligible.any():
        local[eligible] = 2.0 * per_node[eligible] / (degrees[eligible] * (degrees[eligible] - 1))
    local_mean = float(local.mean()) if g.node_count else None
    report = MetricsReport(
        nodes=g.node_count,
        edges=g.edge_count,
        density=density(g),
        avg_degree=average_degree(g),
        clustering_coefficient=transitivity,
        clustering_local_mean=local_mean,
        avg_geodesic_distance=avg_geodesic_distance(g) if has_edges else None,
        powerlaw_alpha=fit.alpha if fit else None,
        powerlaw_xmin=fit.xmin if fit else None,
        degree_assortativity=degree_assortativity(g) if has_edges else None,
    )
    if profiles is not None and schemas is not None and has_edges:
        report.homophily = homophily_scores(g, profiles, schemas)
    return report


# ---------------------------------------------------------------------------
# Serialization

UNDEFINED = "undefined"


def _format_value(value) -> str:
    if value is None:
        return UNDEFINED
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.10g}"


def report_kv(report: MetricsReport) -> str:
    lines = [f"report_version = {REPORT_VERSION}"]
    for name in MetricsReport.SCALAR_FIELDS:
        lines.append(f"{name} = {_format_value(getattr(report, name))}")
    for attr, value in report.homophily.items():
        lines.append(f"homophily.{attr} = {_format_value(value)}")
    return "\n".join(lines) + "\n"


def write_report_kv(path, report: MetricsReport) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(report_kv(report))


def read_report_kv(path) -> MetricsReport:
    raw: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            key, _, value = line.partition(" = ")
            raw[key] = value
    version = raw.pop("report_version", None)
    if version != str(REPORT_VERSION):
        raise ValueError(f"{path}: unsupported report version {version!r}")

    def parse(key, caster=float):
        text = raw.get(key, UNDEFINED)
        return None if text == UNDEFINED else caster(text)

    homophily = {
        key.split(".", 1)[1]: (None if value == UNDEFINED else float(value))
        for key, value in raw.items()
        if key.startswith("homophily.")
    }
    return MetricsReport(
        nodes=parse("nodes", int),
        edges=parse("edges", int),
        density=parse("density"),
        avg_degree=parse("avg_degree"),
        clustering_coefficient=parse("clustering_coefficient"),
        clustering_local_mean=parse("clustering_local_mean"),
        avg_geodesic_distance=parse("avg_geodesic_distance"),
        powerlaw_alpha=parse("powerlaw_alpha"),
        powerlaw_xmin=parse("powerlaw_xmin", int),
        degree_assortativity=parse("degree_assortativity"),
        homophily=homophily,
    )


def report_csv(report: MetricsReport) -> str:
    """Single-row CSV rendering with a stable column order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.csv_columns())
    writer.writerow(["" if v is None else _format_value(v) for v in report.csv_values()])
    return buf.getvalue()


def write_degree_histogram(path, g: Graph) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["degree", "frequency"])
        for deg, freq in degree_histogram(g):
            writer.writerow([deg, freq])


def compare_reports(a: MetricsReport, b: MetricsReport) -> list[tuple[str, str, str, str]]:
    """Side-by-side rows (metric, a, b, delta); delta is undefined when
    either side is."""
    rows = []
    keys = list(MetricsReport.SCALAR_FIELDS)
    keys += [f"homophily.{name}" for name in {**a.homophily, **b.homophily}]
    for key in keys:
        if key.startswith("homophily."):
            attr = key.split(".", 1)[1]
            va, vb = a.homophily.get(attr), b.homophily.get(attr)
        else:
            va, vb = getattr(a, key), getattr(b, key)
        delta = UNDEFINED if va is None or vb is None else _format_value(vb - va)
        rows.append((key, _format_value(va), _format_value(vb), delta))
    return rows
