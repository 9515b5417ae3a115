"""Pipeline stages: ingest -> build -> analyze -> rank -> report.

Each stage takes the effective RunConfig, reads its upstream artifacts
from the output directory, writes its own artifacts atomically, and
updates the manifest (config echo, timings, graph stats, file digests).
Stage outputs are fully computed before anything is written, so a
failing stage leaves no partial files behind.
"""

from __future__ import annotations

import csv
import io
import sys
import time
from pathlib import Path

import numpy as np

from . import canonical, exports
from .centrality import compute_centralities
from .community import detect_communities, summarize_communities
from .config import RunConfig
from .graph import WeightedGraph, build_co_network, graph_stats
from .manifest import RunManifest, atomic_write_text, output_lock
from .records import BiblioRecord, EntityKind
from .topsis import CriteriaSpec, DecisionMatrix, rank as topsis_rank
from .wos import parse_wos_export

RECORDS_FILE = "records.jsonl"
DOC_TYPES_FILE = "report_doc_types.csv"
YEARS_FILE = "report_years.csv"
REPORT_FILE = "report.md"

SUMMARY_TOP_K = 5


class PipelineInputError(RuntimeError):
    """Missing or unreadable upstream artifact."""


def _edge_file(kind: EntityKind) -> str:
    return f"edges_{kind.value}.csv"


def _node_file(kind: EntityKind) -> str:
    return f"nodes_{kind.value}.csv"


def _gexf_file(kind: EntityKind) -> str:
    return f"graph_{kind.value}.gexf"


def _centrality_file(kind: EntityKind) -> str:
    return f"centrality_{kind.value}.csv"


def _communities_file(kind: EntityKind) -> str:
    return f"communities_{kind.value}.csv"


def _summary_file(kind: EntityKind) -> str:
    return f"community_summary_{kind.value}.csv"


def _ranking_file(kind: EntityKind) -> str:
    return f"ranking_{kind.value}.csv"


def _commit_stage(
    config: RunConfig,
    stage: str,
    outputs: dict[str, str],
    info: dict,
    graphs: dict | None,
    seconds: float,
) -> None:
    out_dir = Path(config.out_dir)
    for name, text in outputs.items():
        atomic_write_text(out_dir / name, text)
    manifest = RunManifest.load_or_new(out_dir)
    manifest.data["config"] = config.echo()
    if graphs:
        manifest.data["graphs"].update(graphs)
    manifest.record_stage(stage, seconds, info)
    manifest.refresh_files(out_dir)
    manifest.save(out_dir)


def _read_text(config: RunConfig, name: str) -> str:
    path = Path(config.out_dir) / name
    if not path.exists():
        raise PipelineInputError(f"missing artifact: {path}")
    return path.read_text(encoding="utf-8")


def cmd_ingest(config: RunConfig) -> dict:
    """Parse the input corpus, filter it, and write canonical records
    plus the doc-type and per-year count reports."""
    started = time.perf_counter()
    if not config.input_path:
        raise PipelineInputError("ingest requires an input path")
    path = Path(config.input_path)
    if not path.exists():
        raise PipelineInputError(f"input file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        if config.input_format == "wos":
            records = parse_wos_export(fh)
        else:
            records = canonical.parse_canonical_records(fh)
    kept = [r for r in records if config.corpus_filter().matches(r)]

    doc_counts: dict[str, int] = {}
    year_counts: dict[int | None, int] = {}
    for r in kept:
        doc_counts[r.doc_type.value] = doc_counts.get(r.doc_type.value, 0) + 1
        year_counts[r.year] = year_counts.get(r.year, 0) + 1

    doc_buf = io.StringIO()
    writer = csv.writer(doc_buf, lineterminator="\n")
    writer.writerow(["doc_type", "count"])
    for doc_type in sorted(doc_counts):
        writer.writerow([doc_type, doc_counts[doc_type]])

    year_buf = io.StringIO()
    writer = csv.writer(year_buf, lineterminator="\n")
    writer.writerow(["year", "count"])
    for year in sorted((y for y in year_counts if y is not None)):
        writer.writerow([year, year_counts[year]])
    if None in year_counts:
        writer.writerow(["unknown", year_counts[None]])

    outputs = {
        RECORDS_FILE: canonical.serialize_canonical(kept),
        DOC_TYPES_FILE: doc_buf.getvalue(),
        YEARS_FILE: year_buf.getvalue(),
    }
    info = {
        "records_read": len(records),
        "records_kept": len(kept),
        "keyword_fields": "DE+ID",
    }
    with output_lock(config.out_dir):
        _commit_stage(
            config, "ingest", outputs, info, None, time.perf_counter() - started
        )
    return info


def _load_records(config: RunConfig) -> list[BiblioRecord]:
    return canonical.parse_canonical_records(
        _read_text(config, RECORDS_FILE).splitlines()
    )


def cmd_build(config: RunConfig) -> dict:
    """Construct the co-occurrence network per requested entity kind and
    export edge/node CSV plus GEXF."""
    started = time.perf_counter()
    records = _load_records(config)
    outputs: dict[str, str] = {}
    graphs: dict[str, dict] = {}
    for kind in config.kinds:
        g = build_co_network(records, kind)
        if g.n == 0:
            print(
                f"warning: {kind.value} network is empty", file=sys.stderr
            )
        stats = graph_stats(g)
        outputs[_edge_file(kind)] = exports.edge_csv(g)
        outputs[_node_file(kind)] = exports.node_csv(g)
        outputs[_gexf_file(kind)] = exports.gexf(
            g, {"degree": [g.degree(i) for i in range(g.n)]}
        )
        graphs[kind.value] = {
            "n": stats.n,
            "m": stats.m,
            "density": stats.density,
            "average_degree": stats.average_degree,
            "giant_component_size": stats.giant_component_size,
            "component_count": stats.component_count,
        }
    info = {"records": len(records), "kinds": [k.value for k in config.kinds]}
    with output_lock(config.out_dir):
        _commit_stage(
            config, "build", outputs, info, graphs, time.perf_counter() - started
        )
    return graphs


def _load_graph(config: RunConfig, kind: EntityKind) -> WeightedGraph:
    return exports.read_graph_csv(
        _read_text(config, _node_file(kind)), _read_text(config, _edge_file(kind))
    )


def cmd_analyze(config: RunConfig) -> dict:
    """Centralities, community partition, and per-community summaries
    for every requested kind; the GEXF gains the computed attributes."""
    started = time.perf_counter()
    outputs: dict[str, str] = {}
    info: dict[str, dict] = {}
    for kind in config.kinds:
        g = _load_graph(config, kind)
        table = compute_centralities(
            g,
            betweenness_norm=config.betweenness_norm,
            closeness_mode=config.closeness_mode,
            eigenvector_weighted=config.eigenvector_mode == "weighted",
            threads=config.threads,
        )
        outputs[_centrality_file(kind)] = exports.centrality_csv(table)
        kind_info: dict = {
            "modes": table.modes,
            "eigen_lambda": table.eigen_lambda,
            "eigen_iterations": table.eigen_iterations,
        }
        if g.n > 0:
            partition = detect_communities(
                g, seed=config.seed, resolution=config.resolution
            )
            summaries = summarize_communities(g, partition, k=SUMMARY_TOP_K)
            outputs[_communities_file(kind)] = exports.community_csv(g, partition)
            outputs[_summary_file(kind)] = exports.community_summary_csv(summaries)
            outputs[_gexf_file(kind)] = exports.gexf(
                g,
                {
                    "degree": [int(x) for x in table.degree],
                    "strength": [int(x) for x in table.strength],
                    "closeness": [float(x) for x in table.closeness],
                    "betweenness": [float(x) for x in table.betweenness],
                    "eigenvector": [float(x) for x in table.eigenvector],
                    "community": list(partition.assignment),
                },
            )
            kind_info.update(
                {
                    "algorithm": partition.algorithm,
                    "seed": partition.seed,
                    "resolution": partition.resolution,
                    "modularity": partition.modularity,
                    "community_count": partition.community_count,
                }
            )
        else:
            outputs[_communities_file(kind)] = "id,label,community\n"
            outputs[_summary_file(kind)] = (
                "community,nodes,edges,density,top_members\n"
            )
        info[kind.value] = kind_info
    with output_lock(config.out_dir):
        _commit_stage(
            config, "analyze", outputs, info, None, time.perf_counter() - started
        )
    return info


def cmd_rank(config: RunConfig) -> dict:
    """TOPSIS top-k ranking from the centrality tables."""
    started = time.perf_counter()
    outputs: dict[str, str] = {}
    info: dict[str, dict] = {}
    spec = CriteriaSpec(
        weights=config.normalized_weights(), directions=config.directions
    )
    for kind in config.kinds:
        names, cols = exports.read_centrality_csv(
            _read_text(config, _centrality_file(kind))
        )
        prov_extra = {
            "betweenness_norm": config.betweenness_norm,
            "closeness_mode": config.closeness_mode,
            "eigenvector_mode": config.eigenvector_mode,
            "seed": config.seed,
        }
        if not names:
            result_text = _empty_ranking(spec, prov_extra)
            outputs[_ranking_file(kind)] = result_text
            info[kind.value] = {"ranked": 0}
            continue
        matrix = DecisionMatrix(
            values=np.column_stack(
                [
                    np.asarray(cols["degree"], dtype=np.float64),
                    np.asarray(cols["closeness"], dtype=np.float64),
                    np.asarray(cols["betweenness"], dtype=np.float64),
                    np.asarray(cols["eigenvector"], dtype=np.float64),
                ]
            ),
            row_labels=tuple(names),
            column_labels=("degree", "closeness", "betweenness", "eigenvector"),
        )
        result = topsis_rank(matrix, spec)
        result.provenance.update(prov_extra)
        k = config.top_k
        if k > len(names):
            print(
                f"warning: top-k {k} exceeds node count {len(names)}; "
                "returning all nodes",
                file=sys.stderr,
            )
            k = len(names)
        ids = {name: i for i, name in enumerate(names)}
        outputs[_ranking_file(kind)] = exports.ranking_csv(result, ids, top_k=k)
        info[kind.value] = {"ranked": k}
    with output_lock(config.out_dir):
        _commit_stage(
            config, "rank", outputs, info, None, time.perf_counter() - started
        )
    return info


def _empty_ranking(spec: CriteriaSpec, prov_extra: dict) -> str:
    meta = [
        f"weights={','.join(exports.fmt(w) for w in spec.weights)}",
        f"directions={','.join(spec.directions)}",
        "criteria=degree,closeness,betweenness,eigenvector",
    ]
    meta.extend(f"{k}={v}" for k, v in prov_extra.items())
    return (
        "# "
        + " ".join(meta)
        + "\n"
        + "rank,id,label,C,degree,closeness,betweenness,eigenvector\n"
    )


def cmd_report(config: RunConfig) -> str:
    """Aggregate the run's artifacts into one human-readable report."""
    started = time.perf_counter()
    out_dir = Path(config.out_dir)
    try:
        manifest = RunManifest.load(out_dir)
    except FileNotFoundError as exc:
        raise PipelineInputError(str(exc)) from exc

    needed = [DOC_TYPES_FILE, YEARS_FILE]
    for kind in config.kinds:
        needed.extend(
            [_centrality_file(kind), _summary_file(kind), _ranking_file(kind)]
        )
    missing = [name for name in needed if not (out_dir / name).exists()]
    if missing:
        raise PipelineInputError(
            "missing artifacts for report: " + ", ".join(sorted(missing))
        )

    lines: list[str] = ["# Network analysis run report", ""]

    lines.append("## 1. Configuration")
    lines.append("")
    # paths are run-local; the manifest carries them, the report stays
    # byte-stable across output directories
    for key, value in sorted(config.echo().items()):
        if key in ("input", "out"):
            continue
        lines.append(f"- {key}: {value}")
    lines.append("")

    lines.append("## 2. Corpus")
    lines.append("")
    ingest_info = manifest.data["stages"].get("ingest", {})
    if "records_kept" in ingest_info:
        lines.append(f"Records after filtering: {ingest_info['records_kept']}")
        lines.append("")
    lines.extend(_csv_as_table(out_dir / DOC_TYPES_FILE))
    lines.append("")
    lines.extend(_csv_as_table(out_dir / YEARS_FILE))
    lines.append("")

    lines.append("## 3. Networks")
    lines.append("")
    lines.append("| level | nodes | edges | density | avg degree | giant component | components |")
    lines.append("| --- | --- | --- | --- | --- | --- | --- |")
    for kind in config.kinds:
        stats = manifest.data["graphs"].get(kind.value, {})
        lines.append(
            "| {level} | {n} | {m} | {density} | {avg} | {giant} | {comps} |".format(
                level=kind.value,
                n=stats.get("n", "?"),
                m=stats.get("m", "?"),
                density=exports.fmt(stats["density"]) if "density" in stats else "?",
                avg=exports.fmt(stats["average_degree"])
                if "average_degree" in stats
                else "?",
                giant=stats.get("giant_component_size", "?"),
                comps=stats.get("component_count", "?"),
            )
        )
    lines.append("")

    lines.append("## 4. Communities")
    lines.append("")
    for kind in config.kinds:
        lines.append(f"### {kind.value}")
        lines.append("")
        lines.extend(_csv_as_table(out_dir / _summary_file(kind)))
        lines.append("")

    lines.append("## 5. Top-ranked entities")
    lines.append("")
    for kind in config.kinds:
        lines.append(f"### {kind.value}")
        lines.append("")
        lines.extend(_csv_as_table(out_dir / _ranking_file(kind)))
        lines.append("")

    text = "\n".join(lines)
    with output_lock(config.out_dir):
        _commit_stage(
            config,
            "report",
            {REPORT_FILE: text},
            {"sections": 5},
            None,
            time.perf_counter() - started,
        )
    return text


def _csv_as_table(path: Path) -> list[str]:
    rows = []
    comments = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            if raw.startswith("#"):
                comments.append(raw.rstrip("\n"))
                continue
            rows.append(next(csv.reader([raw])))
    if not rows:
        return ["(empty)"]
    out = [f"> {c}" for c in comments]
    out.append("| " + " | ".join(rows[0]) + " |")
    out.append("|" + " --- |" * len(rows[0]))
    for row in rows[1:]:
        out.append("| " + " | ".join(row) + " |")
    return out
