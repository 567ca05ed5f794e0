"""Growth model: seed triad, then per-node iterations that add edges by
similarity sampling, probabilistic triad formation, and triad linkage.

Construction walks the initialized nodes in id order. Nodes 0-2 are wired
into a triangle unconditionally. Every later node n gets one iteration with
an edge budget m drawn uniformly from [min_edges, max_edges]; while the
budget is open, three steps repeat:

  1. similarity link: score every non-adjacent existing node, keep those
     whose score exceeds the threshold, sample one proportionally to score
     and connect n to it;
  2. triad formation (probability p_triad_formation, only after step 1
     linked): connect n to one neighbor of the node just chosen, sampled
     proportionally to degree**gamma;
  3. triad linkage (probability p_triad_linkage): close up to linkage_count
     wedges anywhere in the network by connecting two neighbors of a
     randomly chosen node of degree >= 2.

All edges created in steps 1-3 consume the iteration's budget, including
linkage edges that do not touch n. A full pass that adds no edge ends the
iteration early. One seeded random generator drives everything in a fixed
order (profile assignment node-major/attribute-minor, then per node: budget
draw, then per pass: similarity pick, formation coin+pick, linkage
coin+picks), so runs are reproducible bit-for-bit.
"""

from __future__ import annotations

import configparser
import csv
from dataclasses import dataclass, field, replace
from pathlib import Path
from random import Random

import numpy as np

from .attributes import (
    AttributeSchema,
    NodeProfile,
    assign_profiles,
    attribute_columns,
    demographic_distance_vector,
    load_schemas,
)
from .graph import Graph
from .similarity import SimilarityParams, combined_score_vector

STEP_SEED = "seed"
STEP_SIMILARITY = "similarity"
STEP_TRIAD_FORMATION = "triad_formation"
STEP_TRIAD_LINKAGE = "triad_linkage"


@dataclass(frozen=True)
class TraceRecord:
    """One generated edge: the iteration (id of the node being grown, or 2
    for the seed triad), the step that created it, and its endpoints."""

    iteration: int
    step: str
    i: int
    j: int


@dataclass
class GenerationConfig:
    """All model parameters for one generation run."""

    n: int
    min_edges: int
    max_edges: int
    p_triad_formation: float
    p_triad_linkage: float
    linkage_count: int
    gamma: float
    threshold: float
    schemas: list[AttributeSchema]
    similarity: SimilarityParams = field(default_factory=SimilarityParams)
    seed: int = 0

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be >= 3")
        if not 1 <= self.min_edges <= self.max_edges:
            raise ValueError("need 1 <= min_edges <= max_edges")
        if self.max_edges >= self.n:
            raise ValueError("max_edges must be < n")
        for name in ("p_triad_formation", "p_triad_linkage", "threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.linkage_count < 0:
            raise ValueError("linkage_count must be >= 0")
        if not self.schemas:
            raise ValueError("at least one attribute schema is required")


def similarity_link_step(
    g: Graph,
    node: int,
    candidates,
    scores,
    threshold: float,
    rng: Random,
    trace: list[TraceRecord] | None = None,
    iteration: int = -1,
) -> int | None:
    """Sample one candidate with score > threshold, proportionally to score,
    and connect node to it. Returns the chosen id, or None if no candidate
    clears the threshold (the node is left as is)."""
    candidates = np.asarray(candidates, dtype=np.int64)
    scores = np.asarray(scores, dtype=np.float64)
    eligible = np.flatnonzero(scores > threshold)
    if eligible.size == 0:
        return None
    weights = np.cumsum(scores[eligible])
    pick = np.searchsorted(weights, rng.random() * weights[-1], side="right")
    chosen = int(candidates[eligible[min(pick, eligible.size - 1)]])
    g.add_edge(node, chosen)
    if trace is not None:
        trace.append(TraceRecord(iteration, STEP_SIMILARITY, node, chosen))
    return chosen


def triad_formation_step(
    g: Graph,
    node: int,
    anchor: int,
    gamma: float,
    rng: Random,
    trace: list[TraceRecord] | None = None,
    iteration: int = -1,
) -> int | None:
    """Connect node to one neighbor of anchor, sampled with probability
    proportional to degree**gamma. Neighbors already adjacent to node (and
    node itself) are excluded; returns None when none remain."""
    eligible = g.neighbors(anchor) - g.neighbors(node) - {node}
    if not eligible:
        return None
    pool = np.fromiter(eligible, dtype=np.int64, count=len(eligible))
    pool.sort()
    if gamma == 0.0:
        chosen = int(pool[int(rng.random() * pool.size) % pool.size])
    else:
        degrees = g.degrees[pool]
        assert degrees.min() >= 1, "anchor neighbors always have degree >= 1"
        weights = np.cumsum(np.power(degrees.astype(np.float64), gamma))
        pick = np.searchsorted(weights, rng.random() * weights[-1], side="right")
        chosen = int(pool[min(pick, pool.size - 1)])
    g.add_edge(node, chosen)
    if trace is not None:
        trace.append(TraceRecord(iteration, STEP_TRIAD_FORMATION, node, chosen))
    return chosen


def triad_linkage_step(
    g: Graph,
    count: int,
    rng: Random,
    trace: list[TraceRecord] | None = None,
    iteration: int = -1,
) -> int:
    """Close up to count wedges: pick a random node with degree >= 2 and
    connect two of its neighbors. An already-closed pair triggers a retry
    with another node, capped at node_count retries per wedge so a
    near-complete graph still terminates. Returns edges actually added."""
    added = 0
    for _ in range(count):
        hubs = np.flatnonzero(g.degrees >= 2)
        if hubs.size == 0:
            break
        for _ in range(g.node_count):
            hub = int(hubs[rng.randrange(hubs.size)])
            neigh = g.neighbors(hub)
            pool = np.fromiter(neigh, dtype=np.int64, count=len(neigh))
            pool.sort()
            first = rng.randrange(pool.size)
            second = rng.randrange(pool.size - 1)
            if second >= first:
                second += 1
            a, b = int(pool[first]), int(pool[second])
            if g.has_edge(a, b):
                continue
            g.add_edge(a, b)
            if trace is not None:
                trace.append(TraceRecord(iteration, STEP_TRIAD_LINKAGE, min(a, b), max(a, b)))
            added += 1
            break
    return added


class _CandidateState:
    """Incremental per-iteration view of the growing node's surroundings:
    adjacency mask and shared-neighbor counts against all older nodes."""

    def __init__(self, n: int):
        self.adjacent = np.zeros(n, dtype=bool)
        self.common = np.zeros(n, dtype=np.int64)
        self.upto = 0

    def reset(self, upto: int) -> None:
        self.adjacent[:upto] = False
        self.common[:upto] = 0
        self.upto = upto

    def on_node_edge(self, g: Graph, other: int) -> None:
        """The growing node gained `other` as a neighbor."""
        self.adjacent[other] = True
        neigh = g.neighbors(other)
        idx = np.fromiter(neigh, dtype=np.int64, count=len(neigh))
        # Everything except the growing node itself (id == upto) is older.
        self.common[idx[idx < self.upto]] += 1

    def on_remote_edge(self, g: Graph, node: int, a: int, b: int) -> None:
        """Edge (a, b) appeared elsewhere; update counts relative to node."""
        if a == node:
            self.on_node_edge(g, b)
        elif b == node:
            self.on_node_edge(g, a)
        else:
            if a < self.upto and b in g.neighbors(node):
                self.common[a] += 1
            if b < self.upto and a in g.neighbors(node):
                self.common[b] += 1


def generate(config: GenerationConfig) -> tuple[Graph, list[NodeProfile], list[TraceRecord]]:
    """Run one full generation; returns (graph, profiles, trace).

    Deterministic given config.seed: identical configs produce identical
    edge lists byte for byte.
    """
    rng = Random(config.seed)
    profiles = assign_profiles(config.schemas, config.n, rng)
    columns = attribute_columns(profiles, config.schemas)
    params = config.similarity

    g = Graph()
    trace: list[TraceRecord] = []
    for _ in range(3):
        g.add_node()
    for i, j in ((0, 1), (0, 2), (1, 2)):
        g.add_edge(i, j)
        trace.append(TraceRecord(2, STEP_SEED, i, j))

    state = _CandidateState(config.n)

    for node in range(3, config.n):
        g.add_node()
        budget = rng.randint(config.min_edges, config.max_edges)
        state.reset(node)
        demographic = demographic_distance_vector(columns, node, node)
        added = 0
        while added < budget:
            pass_added = 0

            scores = combined_score_vector(
                g.degrees[:node],
                g.max_degree(),
                state.common[:node],
                g.degree(node),
                demographic,
                params,
            )
            open_ids = np.flatnonzero(~state.adjacent[:node])
            anchor = similarity_link_step(
                g, node, open_ids, scores[open_ids], config.threshold, rng, trace, node
            )
            if anchor is not None:
                state.on_node_edge(g, anchor)
                added += 1
                pass_added += 1

            if anchor is not None and added < budget and rng.random() < config.p_triad_formation:
                friend = triad_formation_step(g, node, anchor, config.gamma, rng, trace, node)
                if friend is not None:
                    state.on_node_edge(g, friend)
                    added += 1
                    pass_added += 1

            if added < budget and config.linkage_count > 0 and rng.random() < config.p_triad_linkage:
                allowed = min(config.linkage_count, budget - added)
                before = len(trace)
                closed = triad_linkage_step(g, allowed, rng, trace, node)
                for record in trace[before:]:
                    state.on_remote_edge(g, node, record.i, record.j)
                added += closed
                pass_added += closed

            if pass_added == 0:
                break

    return g, profiles, trace


# ---------------------------------------------------------------------------
# File formats

def write_trace(path, trace: list[TraceRecord]) -> None:
    """Trace CSV: iteration, step kind, endpoint ids, in creation order."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["iteration", "step", "i", "j"])
        for record in trace:
            writer.writerow([record.iteration, record.step, record.i, record.j])


def read_trace(path) -> list[TraceRecord]:
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            records.append(TraceRecord(int(row[0]), row[1], int(row[2]), int(row[3])))
    return records


def load_config(path) -> GenerationConfig:
    """Read a generation config (key/value file) plus its schema file.

    The [generation] section mirrors GenerationConfig fields and names the
    schema file (resolved relative to the config file); the optional
    [similarity] section sets alpha, beta, weight_pa, weight_fof.
    """
    parser = configparser.ConfigParser()
    with open(path, "r", encoding="utf-8") as fh:
        parser.read_file(fh)
    if "generation" not in parser:
        raise ValueError(f"{path}: missing [generation] section")
    gen = parser["generation"]
    for key in ("n", "min_edges", "max_edges", "schema_file"):
        if key not in gen:
            raise ValueError(f"{path}: [generation] is missing required key {key!r}")
    schema_path = Path(path).parent / gen["schema_file"]
    schemas = load_schemas(schema_path)
    sim = SimilarityParams()
    if "similarity" in parser:
        opts = parser["similarity"]
        sim = SimilarityParams(
            alpha=opts.getfloat("alpha", 1.0),
            beta=opts.getfloat("beta", 1.0),
            weight_pa=opts.getfloat("weight_pa", 1.0),
            weight_fof=opts.getfloat("weight_fof", 1.0),
        )
    return GenerationConfig(
        n=gen.getint("n"),
        min_edges=gen.getint("min_edges"),
        max_edges=gen.getint("max_edges"),
        p_triad_formation=gen.getfloat("p_triad_formation", 0.0),
        p_triad_linkage=gen.getfloat("p_triad_linkage", 0.0),
        linkage_count=gen.getint("linkage_count", 0),
        gamma=gen.getfloat("gamma", 0.0),
        threshold=gen.getfloat("threshold", 0.5),
        schemas=schemas,
        similarity=sim,
        seed=gen.getint("seed", 0),
    )


def save_config(path, config: GenerationConfig, schema_file: str) -> None:
    """Write a config file; schemas go to schema_file next to it."""
    from .attributes import save_schemas

    save_schemas(Path(path).parent / schema_file, config.schemas)
    sim = config.similarity
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("[generation]\n")
        fh.write(f"n = {config.n}\n")
        fh.write(f"min_edges = {config.min_edges}\n")
        fh.write(f"max_edges = {config.max_edges}\n")
        fh.write(f"p_triad_formation = {config.p_triad_formation:.12g}\n")
        fh.write(f"p_triad_linkage = {config.p_triad_linkage:.12g}\n")
        fh.write(f"linkage_count = {config.linkage_count}\n")
        fh.write(f"gamma = {config.gamma:.12g}\n")
        fh.write(f"threshold = {config.threshold:.12g}\n")
        fh.write(f"seed = {config.seed}\n")
        fh.write(f"schema_file = {schema_file}\n\n")
        fh.write("[similarity]\n")
        fh.write(f"alpha = {sim.alpha:.12g}\n")
        fh.write(f"beta = {sim.beta:.12g}\n")
        fh.write(f"weight_pa = {sim.weight_pa:.12g}\n")
        fh.write(f"weight_fof = {sim.weight_fof:.12g}\n")


def with_overrides(config: GenerationConfig, **changes) -> GenerationConfig:
    """Copy a config, changing GenerationConfig or SimilarityParams fields."""
    sim_fields = {"alpha", "beta", "weight_pa", "weight_fof"}
    sim_changes = {k: v for k, v in changes.items() if k in sim_fields}
    cfg_changes = {k: v for k, v in changes.items() if k not in sim_fields}
    unknown = [k for k in cfg_changes if k not in GenerationConfig.__dataclass_fields__]
    if unknown:
        raise ValueError(f"unknown config field(s): {', '.join(unknown)}")
    if sim_changes:
        cfg_changes["similarity"] = replace(config.similarity, **sim_changes)
    return replace(config, **cfg_changes)
