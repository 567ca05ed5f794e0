"""Demographic attribute schemas, random assignment, and distance functions.

Each attribute is categorical, ordinal or numerical. Per-attribute distances
are normalized to [0, 1]; the combined demographic distance is the
weight-normalized mean of the per-attribute distances, so it stays in [0, 1]
regardless of how many attributes a schema declares.
"""

from __future__ import annotations

import configparser
import csv
from dataclasses import dataclass

import numpy as np

CATEGORICAL = "categorical"
ORDINAL = "ordinal"
NUMERICAL = "numerical"
KINDS = (CATEGORICAL, ORDINAL, NUMERICAL)


@dataclass
class AttributeSchema:
    """Declares one demographic attribute.

    levels lists the admissible values (for numerical attributes, the
    admissible integer values). proportions are sampling weights, one per
    level. rho is the normalization span for ordinal/numerical distances and
    must cover the largest possible |difference| between admissible values.
    """

    name: str
    kind: str
    levels: tuple
    proportions: tuple[float, ...]
    rho: float | None = None
    weight: float = 1.0

    def __post_init__(self):
        self.levels = tuple(self.levels)
        self.proportions = tuple(float(p) for p in self.proportions)
        if self.kind not in KINDS:
            raise ValueError(f"attribute {self.name!r}: unknown kind {self.kind!r}")
        if not self.levels:
            raise ValueError(f"attribute {self.name!r}: no admissible levels")
        if len(self.proportions) != len(self.levels):
            raise ValueError(
                f"attribute {self.name!r}: {len(self.proportions)} proportions "
                f"for {len(self.levels)} levels"
            )
        if any(p < 0 for p in self.proportions) or sum(self.proportions) <= 0:
            raise ValueError(f"attribute {self.name!r}: proportions must be nonnegative with positive sum")
        if self.weight < 0:
            raise ValueError(f"attribute {self.name!r}: negative weight")
        if self.kind in (ORDINAL, NUMERICAL):
            span = max(self.levels) - min(self.levels)
            if self.rho is None:
                self.rho = float(span) if span > 0 else 1.0
            if self.rho <= 0:
                raise ValueError(f"attribute {self.name!r}: rho must be positive")
            if self.rho < span:
                raise ValueError(
                    f"attribute {self.name!r}: rho {self.rho} < max level difference {span}"
                )

    def distance(self, a, b) -> float:
        if self.kind == CATEGORICAL:
            return categorical_distance(a, b)
        return ordinal_distance(a, b, self.rho)


@dataclass(frozen=True)
class NodeProfile:
    """One node's attribute values, in schema order."""

    values: tuple

    def __getitem__(self, k):
        return self.values[k]


def categorical_distance(a, b) -> float:
    """0 for equal values, 1 otherwise."""
    return 0.0 if a == b else 1.0


def ordinal_distance(a: float, b: float, rho: float) -> float:
    """Normalized rank difference |a - b| / rho, in [0, 1]."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    return abs(a - b) / rho


def numerical_distance(a: float, b: float, rho: float) -> float:
    """Normalized value difference; same formula as ordinal_distance."""
    return ordinal_distance(a, b, rho)


def demographic_distance(p: NodeProfile, q: NodeProfile, schemas: list[AttributeSchema]) -> float:
    """Weighted mean per-attribute distance between two profiles, in [0, 1].

    Weight-normalized so that scaling all attribute weights by a common
    factor leaves the result unchanged.
    """
    total_weight = sum(s.weight for s in schemas)
    if total_weight <= 0:
        raise ValueError("all attribute weights are zero")
    acc = 0.0
    for k, schema in enumerate(schemas):
        acc += schema.weight * schema.distance(p[k], q[k])
    return acc / total_weight


def assign_profiles(schemas: list[AttributeSchema], n: int, rng) -> list[NodeProfile]:
    """Draw n profiles, each attribute sampled independently by proportion.

    Sampling is i.i.d. with replacement (expected counts proportional to the
    declared proportions, not exact quotas). Consumes rng node-major,
    attribute-minor, so results are reproducible for a given seed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not schemas:
        raise ValueError("no attribute schemas")
    pick = rng.choices
    per_attr = [(s.levels, s.proportions) for s in schemas]
    profiles = []
    for _ in range(n):
        values = tuple(pick(levels, weights=props)[0] for levels, props in per_attr)
        profiles.append(NodeProfile(values))
    return profiles


@dataclass
class AttributeColumn:
    """Column-major numeric view of one attribute across all profiles.

    Categorical levels are integer-coded; ordinal/numerical values are kept
    as floats with their rho. Used for vectorized distance computation.
    """

    categorical: bool
    codes: np.ndarray
    rho: float
    weight: float


def attribute_columns(profiles: list[NodeProfile], schemas: list[AttributeSchema]) -> list[AttributeColumn]:
    """Build per-attribute numeric columns for vectorized distances."""
    columns = []
    for k, schema in enumerate(schemas):
        raw = [p[k] for p in profiles]
        if schema.kind == CATEGORICAL:
            code_of = {level: idx for idx, level in enumerate(schema.levels)}
            codes = np.array([code_of[v] for v in raw], dtype=np.int64)
            columns.append(AttributeColumn(True, codes, 1.0, schema.weight))
        else:
            codes = np.array(raw, dtype=np.float64)
            columns.append(AttributeColumn(False, codes, float(schema.rho), schema.weight))
    return columns


def demographic_distance_vector(columns: list[AttributeColumn], node: int, upto: int) -> np.ndarray:
    """Distances from `node` to every node id < upto, vectorized.

    Matches demographic_distance applied pairwise.
    """
    total_weight = sum(c.weight for c in columns)
    if total_weight <= 0:
        raise ValueError("all attribute weights are zero")
    acc = np.zeros(upto)
    for col in columns:
        if col.weight == 0:
            continue
        if col.categorical:
            d = (col.codes[:upto] != col.codes[node]).astype(np.float64)
        else:
            d = np.abs(col.codes[:upto] - col.codes[node]) / col.rho
        acc += col.weight * d
    acc /= total_weight
    return acc


# ---------------------------------------------------------------------------
# File formats

def _parse_level(text: str):
    """Schema/profile values: ints stay ints, floats stay floats, else str."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def load_schemas(path) -> list[AttributeSchema]:
    """Read attribute schemas from a key/value (INI-style) file.

    One section per attribute; section name is the attribute name. Keys:
    kind, levels (or min/max for numerical ranges), proportions, rho, weight.
    """
    parser = configparser.ConfigParser()
    with open(path, "r", encoding="utf-8") as fh:
        parser.read_file(fh)
    schemas = []
    for section in parser.sections():
        opts = parser[section]
        kind = opts.get("kind", CATEGORICAL).strip()
        if "levels" in opts:
            levels = tuple(_parse_level(v.strip()) for v in opts["levels"].split(","))
        elif "min" in opts and "max" in opts:
            lo, hi = int(opts["min"]), int(opts["max"])
            levels = tuple(range(lo, hi + 1))
        else:
            raise ValueError(f"attribute {section!r}: need either levels or min/max")
        if "proportions" in opts:
            proportions = tuple(float(v) for v in opts["proportions"].split(","))
        else:
            proportions = tuple(1.0 for _ in levels)
        rho = float(opts["rho"]) if "rho" in opts else None
        weight = float(opts.get("weight", "1"))
        schemas.append(AttributeSchema(section, kind, levels, proportions, rho, weight))
    if not schemas:
        raise ValueError(f"no attribute sections in {path}")
    return schemas


def save_schemas(path, schemas: list[AttributeSchema]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for schema in schemas:
            fh.write(f"[{schema.name}]\n")
            fh.write(f"kind = {schema.kind}\n")
            fh.write("levels = " + ",".join(str(v) for v in schema.levels) + "\n")
            fh.write("proportions = " + ",".join(f"{p:.12g}" for p in schema.proportions) + "\n")
            if schema.kind in (ORDINAL, NUMERICAL):
                fh.write(f"rho = {schema.rho:.12g}\n")
            fh.write(f"weight = {schema.weight:.12g}\n\n")


def write_profiles(path, profiles: list[NodeProfile], schemas: list[AttributeSchema]) -> None:
    """Write profiles as CSV: header of attribute names, one row per node id."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([s.name for s in schemas])
        for profile in profiles:
            writer.writerow(list(profile.values))


def read_profiles(path, schemas: list[AttributeSchema] | None = None) -> list[NodeProfile]:
    """Read a profiles CSV written by write_profiles.

    Values are re-typed by simple parsing (int, then float, then string),
    which round-trips the level types this package emits.
    """
    profiles = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: empty profiles file")
        if schemas is not None and [s.name for s in schemas] != header:
            raise ValueError(f"{path}: header {header} does not match schemas")
        width = len(header)
        for row_no, row in enumerate(reader, 2):
            if len(row) != width:
                raise ValueError(f"{path}:{row_no}: ragged row")
            profiles.append(NodeProfile(tuple(_parse_level(v) for v in row)))
    return profiles
