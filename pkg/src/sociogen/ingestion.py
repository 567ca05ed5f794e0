"""Load external datasets (edge list + attribute CSV) for comparison runs.

The attribute CSV carries a header `id,attr1,attr2,...`; ids are densified
to 0..n-1 preserving file order, and the edge file must reference only ids
present in the attribute file. Zero-coded values in categorical columns are
a missing-data convention and map to an explicit "unknown" level.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .attributes import CATEGORICAL, NUMERICAL, AttributeSchema, NodeProfile
from .graph import Graph

UNKNOWN_LEVEL = "unknown"

_NUMERICAL_NAME_HINTS = ("year", "age")


@dataclass
class DatasetBundle:
    """A real network plus its node attributes and derived schemas."""

    graph: Graph
    profiles: list[NodeProfile]
    schemas: list[AttributeSchema]
    name: str


def _infer_kind(column: str, values: list, override: str | None) -> str:
    """Numerical only for year/age-like integer columns without zero codes
    (zero marks missing data, which a numerical distance cannot carry);
    everything else is categorical. An explicit override always wins."""
    if override is not None:
        return override
    lowered = column.lower()
    if any(hint in lowered for hint in _NUMERICAL_NAME_HINTS):
        if all(isinstance(v, int) for v in values) and 0 not in values:
            return NUMERICAL
    return CATEGORICAL


def _parse_cell(text: str):
    try:
        return int(text)
    except ValueError:
        return text.strip()


def load_dataset(edge_path, attribute_path, name: str = "dataset",
                 kinds: dict[str, str] | None = None) -> DatasetBundle:
    """Build a DatasetBundle from an edge-list file and an attribute CSV.

    kinds optionally forces the kind ("categorical"/"numerical"/"ordinal")
    per column name.
    """
    kinds = kinds or {}
    with open(attribute_path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0].strip().lower() != "id":
            raise ValueError(f"{attribute_path}: expected header starting with 'id'")
        columns = [h.strip() for h in header[1:]]
        if not columns:
            raise ValueError(f"{attribute_path}: no attribute columns")
        id_map: dict[int, int] = {}
        rows: list[list] = []
        for row_no, row in enumerate(reader, 2):
            if len(row) != len(header):
                raise ValueError(f"{attribute_path}:{row_no}: ragged row")
            try:
                raw_id = int(row[0])
            except ValueError as exc:
                raise ValueError(f"{attribute_path}:{row_no}: non-integer id {row[0]!r}") from exc
            if raw_id in id_map:
                raise ValueError(f"{attribute_path}:{row_no}: duplicate id {raw_id}")
            id_map[raw_id] = len(rows)
            rows.append([_parse_cell(cell) for cell in row[1:]])
    if not rows:
        raise ValueError(f"{attribute_path}: no data rows")

    n = len(rows)
    graph = Graph(n)
    with open(edge_path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{edge_path}:{lineno}: expected 'i<TAB>j'")
            try:
                raw_i, raw_j = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"{edge_path}:{lineno}: non-integer node id") from exc
            if raw_i not in id_map or raw_j not in id_map:
                missing = raw_i if raw_i not in id_map else raw_j
                raise ValueError(f"{edge_path}:{lineno}: id {missing} absent from attribute file")
            graph.add_edge(id_map[raw_i], id_map[raw_j])

    schemas = []
    typed_rows = [list(r) for r in rows]
    for col_idx, column in enumerate(columns):
        observed = [r[col_idx] for r in rows]
        kind = _infer_kind(column, observed, kinds.get(column))
        if kind == CATEGORICAL:
            for r in typed_rows:
                if r[col_idx] == 0:
                    r[col_idx] = UNKNOWN_LEVEL
            observed = [r[col_idx] for r in typed_rows]
        levels = sorted(set(observed)) if kind != CATEGORICAL else sorted(set(observed), key=str)
        counts = {level: 0 for level in levels}
        for v in observed:
            counts[v] += 1
        proportions = tuple(counts[level] / n for level in levels)
        rho = float(max(levels) - min(levels)) if kind != CATEGORICAL and len(levels) > 1 else None
        schemas.append(AttributeSchema(column, kind, tuple(levels), proportions, rho))

    profiles = [NodeProfile(tuple(r)) for r in typed_rows]
    return DatasetBundle(graph, profiles, schemas, name)


def extract_proportions(bundle: DatasetBundle) -> list[AttributeSchema]:
    """Re-derive per-attribute empirical proportions from the bundle's
    profiles; these are the proportions a generation run should replicate."""
    if not bundle.profiles:
        raise ValueError("empty bundle")
    n = len(bundle.profiles)
    schemas = []
    for k, schema in enumerate(bundle.schemas):
        observed = [p[k] for p in bundle.profiles]
        counts = {level: 0 for level in schema.levels}
        for v in observed:
            counts[v] += 1
        proportions = tuple(counts[level] / n for level in schema.levels)
        schemas.append(
            AttributeSchema(
                schema.name, schema.kind, schema.levels, proportions, schema.rho, schema.weight
            )
        )
    return schemas
