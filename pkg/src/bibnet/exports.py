"""File formats: edge/node/centrality/community/ranking CSV and GEXF.

All writers produce byte-deterministic output: fixed header order,
"\n" line endings, and floats at 12 significant digits.
"""

from __future__ import annotations

import csv
import io
from xml.sax.saxutils import escape, quoteattr

from .centrality import CentralityTable
from .community import CommunityPartition, CommunitySummary
from .graph import WeightedGraph
from .topsis import RankingResult


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _csv_writer(buf: io.StringIO) -> "csv.writer":
    return csv.writer(buf, lineterminator="\n")


def edge_csv(g: WeightedGraph) -> str:
    """Rows "source,target,weight", source < target by name, sorted."""
    rows = []
    for u, v, w in g.edges():
        a, b = sorted((g.names[u], g.names[v]))
        rows.append((a, b, w))
    rows.sort()
    buf = io.StringIO()
    writer = _csv_writer(buf)
    writer.writerow(["source", "target", "weight"])
    writer.writerows(rows)
    return buf.getvalue()


def node_csv(g: WeightedGraph) -> str:
    buf = io.StringIO()
    writer = _csv_writer(buf)
    writer.writerow(["id", "label", "degree"])
    for i, name in enumerate(g.names):
        writer.writerow([i, name, g.degree(i)])
    return buf.getvalue()


def read_graph_csv(node_text: str, edge_text: str) -> WeightedGraph:
    """Rebuild a graph from the node/edge CSV pair, preserving ids."""
    node_rows = list(csv.reader(io.StringIO(node_text)))
    _expect_header(node_rows, ["id", "label", "degree"], "node CSV")
    names: list[str] = []
    for row in node_rows[1:]:
        if int(row[0]) != len(names):
            raise ValueError(f"node ids must be dense, got {row[0]}")
        names.append(row[1])
    index = {name: i for i, name in enumerate(names)}
    edge_rows = list(csv.reader(io.StringIO(edge_text)))
    _expect_header(edge_rows, ["source", "target", "weight"], "edge CSV")
    edges = [
        (index[row[0]], index[row[1]], int(row[2])) for row in edge_rows[1:]
    ]
    return WeightedGraph.from_edges(names, edges)


def centrality_csv(table: CentralityTable) -> str:
    buf = io.StringIO()
    writer = _csv_writer(buf)
    writer.writerow(
        ["id", "label", "degree", "strength", "closeness", "betweenness", "eigenvector"]
    )
    for i, name in enumerate(table.names):
        writer.writerow(
            [
                i,
                name,
                int(table.degree[i]),
                int(table.strength[i]),
                fmt(table.closeness[i]),
                fmt(table.betweenness[i]),
                fmt(table.eigenvector[i]),
            ]
        )
    return buf.getvalue()


def read_centrality_csv(text: str) -> tuple[list[str], dict[str, list[float]]]:
    """Names plus per-measure columns, in file row order."""
    rows = list(csv.reader(io.StringIO(text)))
    header = ["id", "label", "degree", "strength", "closeness", "betweenness", "eigenvector"]
    _expect_header(rows, header, "centrality CSV")
    names = []
    cols: dict[str, list[float]] = {c: [] for c in header[2:]}
    for row in rows[1:]:
        names.append(row[1])
        for c, value in zip(header[2:], row[2:]):
            cols[c].append(float(value))
    return names, cols


def community_csv(g: WeightedGraph, partition: CommunityPartition) -> str:
    buf = io.StringIO()
    writer = _csv_writer(buf)
    writer.writerow(["id", "label", "community"])
    for i, name in enumerate(g.names):
        writer.writerow([i, name, partition.assignment[i]])
    return buf.getvalue()


def community_summary_csv(summaries: list[CommunitySummary]) -> str:
    buf = io.StringIO()
    writer = _csv_writer(buf)
    writer.writerow(["community", "nodes", "edges", "density", "top_members"])
    for s in summaries:
        writer.writerow(
            [s.community, s.size, s.internal_edges, fmt(s.density), ";".join(s.top_members)]
        )
    return buf.getvalue()


def ranking_csv(
    result: RankingResult, ids: dict[str, int], top_k: int | None = None
) -> str:
    """Top-k rows with a leading provenance comment line."""
    prov = result.provenance
    meta = [
        f"weights={','.join(fmt(w) for w in prov.get('weights', ()))}",
        f"directions={','.join(prov.get('directions', ()))}",
        f"criteria={','.join(prov.get('criteria', ()))}",
    ]
    for key in ("betweenness_norm", "closeness_mode", "eigenvector_mode", "seed"):
        if key in prov:
            meta.append(f"{key}={prov[key]}")
    buf = io.StringIO()
    buf.write("# " + " ".join(meta) + "\n")
    writer = _csv_writer(buf)
    writer.writerow(
        ["rank", "id", "label", "C", "degree", "closeness", "betweenness", "eigenvector"]
    )
    entries = result.entries if top_k is None else result.entries[:top_k]
    criteria = prov.get("criteria", ())
    for rank_pos, name, closeness, raw in entries:
        by_criterion = dict(zip(criteria, raw))
        writer.writerow(
            [
                rank_pos,
                ids[name],
                name,
                fmt(closeness),
                fmt(by_criterion.get("degree", 0.0)),
                fmt(by_criterion.get("closeness", 0.0)),
                fmt(by_criterion.get("betweenness", 0.0)),
                fmt(by_criterion.get("eigenvector", 0.0)),
            ]
        )
    return buf.getvalue()


def _expect_header(rows: list[list[str]], header: list[str], what: str) -> None:
    if not rows or rows[0] != header:
        raise ValueError(f"{what} must start with header {','.join(header)}")


def gexf(g: WeightedGraph, node_attrs: dict[str, list] | None = None) -> str:
    """GEXF 1.2 static undirected graph for Gephi.

    ``node_attrs`` maps attribute names to per-node value lists (ints or
    floats); they land in the node attvalues block.
    """
    attrs = node_attrs or {}
    for name, values in attrs.items():
        if len(values) != g.n:
            raise ValueError(f"attribute {name!r} has {len(values)} values for {g.n} nodes")
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<gexf xmlns="http://www.gexf.net/1.2draft" version="1.2">',
        '  <graph mode="static" defaultedgetype="undirected">',
    ]
    attr_ids = {name: i for i, name in enumerate(attrs)}
    if attrs:
        lines.append('    <attributes class="node">')
        for name, i in attr_ids.items():
            kind = "integer" if all(isinstance(v, int) for v in attrs[name]) else "double"
            lines.append(
                f'      <attribute id="{i}" title={quoteattr(name)} type="{kind}"/>'
            )
        lines.append("    </attributes>")
    lines.append("    <nodes>")
    for i, name in enumerate(g.names):
        if attrs:
            lines.append(f'      <node id="{i}" label={quoteattr(name)}>')
            lines.append("        <attvalues>")
            for attr_name, aid in attr_ids.items():
                value = attrs[attr_name][i]
                text = str(value) if isinstance(value, int) else fmt(value)
                lines.append(f'          <attvalue for="{aid}" value="{escape(text)}"/>')
            lines.append("        </attvalues>")
            lines.append("      </node>")
        else:
            lines.append(f'      <node id="{i}" label={quoteattr(name)}/>')
    lines.append("    </nodes>")
    lines.append("    <edges>")
    for eid, (u, v, w) in enumerate(g.edges()):
        lines.append(
            f'      <edge id="{eid}" source="{u}" target="{v}" weight="{w}"/>'
        )
    lines.append("    </edges>")
    lines.append("  </graph>")
    lines.append("</gexf>")
    return "\n".join(lines) + "\n"
