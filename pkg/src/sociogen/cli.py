"""Command-line interface: generate, measure, compare, sweep, stability,
ingest. All outputs are UTF-8 with LF line endings and stable column order.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiments, metrics
from .attributes import load_schemas, read_profiles, save_schemas, write_profiles
from .generator import GenerationConfig, generate, load_config, with_overrides, write_trace
from .graph import Graph
from .ingestion import extract_proportions, load_dataset
from .metrics import (
    MetricsReport,
    compare_reports,
    measure_graph,
    read_report_kv,
    report_csv,
    report_kv,
    write_degree_histogram,
    write_report_kv,
)


def _write_report(report: MetricsReport, out: str | None, fmt: str) -> None:
    text = report_csv(report) if fmt == "csv" else report_kv(report)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = with_overrides(config, seed=args.seed)
    graph, profiles, trace = generate(config)
    prefix = args.out
    graph.write_edgelist(f"{prefix}.edges")
    write_profiles(f"{prefix}.profiles.csv", profiles, config.schemas)
    write_trace(f"{prefix}.trace.csv", trace)
    report = measure_graph(graph, profiles, config.schemas)
    if args.format == "csv":
        Path(f"{prefix}.report.csv").write_text(report_csv(report), encoding="utf-8")
    else:
        write_report_kv(f"{prefix}.report.kv", report)
    print(f"generated {graph.node_count} nodes, {graph.edge_count} edges -> {prefix}.*")
    return 0


def _load_attributes_for_measure(path, schema_path=None):
    """Accept either a dataset CSV (leading id column) or a profiles CSV."""
    from .attributes import AttributeSchema, CATEGORICAL, NUMERICAL, NodeProfile

    if schema_path:
        schemas = load_schemas(schema_path)
        return read_profiles(path, schemas), schemas
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
    if header and header[0].strip().lower() == "id":
        return None, None  # caller goes through load_dataset
    profiles = read_profiles(path)
    schemas = []
    for k, name in enumerate(header):
        observed = sorted({p[k] for p in profiles}, key=str)
        numeric = all(isinstance(v, (int, float)) for v in observed)
        kind = NUMERICAL if numeric else CATEGORICAL
        levels = sorted(observed) if numeric else observed
        schemas.append(
            AttributeSchema(name, kind, tuple(levels), tuple(1.0 for _ in levels))
        )
    return profiles, schemas


def cmd_measure(args) -> int:
    profiles = schemas = None
    if args.attrs:
        profiles, schemas = _load_attributes_for_measure(args.attrs, args.schema)
        if profiles is None:
            bundle = load_dataset(args.edges, args.attrs)
            graph, profiles, schemas = bundle.graph, bundle.profiles, bundle.schemas
        else:
            graph = Graph.read_edgelist(args.edges, node_count=len(profiles))
    else:
        graph = Graph.read_edgelist(args.edges, node_count=args.nodes)
    report = measure_graph(graph, profiles, schemas)
    _write_report(report, args.out, args.format)
    if args.histogram:
        write_degree_histogram(args.histogram, graph)
    return 0


def cmd_compare(args) -> int:
    a = read_report_kv(args.report_a)
    b = read_report_kv(args.report_b)
    rows = compare_reports(a, b)
    lines = ["metric,a,b,delta"]
    lines += [",".join(row) for row in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    width = max(len(r[0]) for r in rows)
    print(f"{'metric':<{width}}  {'a':>14}  {'b':>14}  {'delta':>14}")
    for name, va, vb, delta in rows:
        print(f"{name:<{width}}  {va:>14}  {vb:>14}  {delta:>14}")
    return 0


def _parse_vary(raw: str) -> tuple[str, list]:
    name, _, values = raw.partition("=")
    if not values:
        raise ValueError(f"--vary expects name=v1,v2,... got {raw!r}")
    parsed = []
    for piece in values.split(","):
        piece = piece.strip()
        try:
            parsed.append(int(piece))
        except ValueError:
            parsed.append(float(piece))
    return name.strip(), parsed


def cmd_sweep(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = with_overrides(config, seed=args.seed)
    varied = [_parse_vary(raw) for raw in args.vary]
    spec = experiments.SweepSpec(config, varied, replicates=args.replicates)
    cells = experiments.run_sweep(spec)
    text = experiments.sweep_csv(spec, cells)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_stability(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = with_overrides(config, seed=args.seed)
    table = experiments.stability_table(config, runs=args.runs)
    text = experiments.stability_csv(table)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_ingest(args) -> int:
    bundle = load_dataset(args.edges, args.attrs, name=args.name)
    schemas = extract_proportions(bundle)
    prefix = args.out
    bundle.graph.write_edgelist(f"{prefix}.edges")
    write_profiles(f"{prefix}.profiles.csv", bundle.profiles, schemas)
    save_schemas(f"{prefix}.schema", schemas)
    print(
        f"ingested {bundle.graph.node_count} nodes, {bundle.graph.edge_count} edges, "
        f"{len(schemas)} attributes -> {prefix}.*"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sociogen",
        description="Generate synthetic social networks from demographic "
        "attribute distributions and measure their structure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="run one generation from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--format", choices=("kv", "csv"), default="kv")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("measure", help="measure an edge-list file")
    p.add_argument("--edges", required=True)
    p.add_argument("--attrs", default=None, help="profiles CSV or dataset CSV (id column)")
    p.add_argument("--schema", default=None, help="schema file describing --attrs")
    p.add_argument("--nodes", type=int, default=None, help="node count when isolated ids trail the edge list")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("kv", "csv"), default="kv")
    p.add_argument("--histogram", default=None, help="also write a degree histogram CSV")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("compare", help="compare two kv reports")
    p.add_argument("report_a")
    p.add_argument("report_b")
    p.add_argument("--out", default=None, help="write the comparison CSV here")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="replicate generations over a parameter grid")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--vary", action="append", required=True, metavar="NAME=V1,V2,...")
    p.add_argument("--replicates", type=int, default=10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stability", help="std dev of metrics across seeded runs")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("ingest", help="normalize an external dataset")
    p.add_argument("--edges", required=True)
    p.add_argument("--attrs", required=True)
    p.add_argument("--name", default="dataset")
    p.add_argument("--out", required=True, help="output path prefix")
    p.set_defaults(func=cmd_ingest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
