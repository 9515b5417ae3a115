"""Co-occurrence network analysis for bibliographic corpora."""

from .canonical import parse_canonical_records, serialize_canonical
from .centrality import (
    CentralityTable,
    ConvergenceError,
    betweenness_centrality,
    closeness_centrality,
    clustering_coefficient,
    compute_centralities,
    degree_centrality,
    eigenvector_centrality,
    strength_centrality,
)
from .community import (
    CommunityPartition,
    CommunitySummary,
    detect_communities,
    modularity,
    summarize_communities,
)
from .graph import (
    GraphStats,
    WeightedGraph,
    average_degree,
    build_co_network,
    connected_components,
    density,
    graph_stats,
    induced_subgraph,
    shortest_path_length,
)
from .records import (
    BiblioRecord,
    CorpusFilter,
    DocType,
    EntityKind,
    InvalidNameError,
    extract_entities,
    filter_corpus,
    normalize_author_name,
)
from .topsis import (
    CriteriaSpec,
    DecisionMatrix,
    RankingResult,
    TopsisTableau,
    build_decision_matrix,
    rank,
)
from .wos import ParseError, parse_wos_export

__version__ = "0.1.0"

__all__ = [
    "BiblioRecord",
    "CentralityTable",
    "CommunityPartition",
    "CommunitySummary",
    "ConvergenceError",
    "CorpusFilter",
    "CriteriaSpec",
    "DecisionMatrix",
    "DocType",
    "EntityKind",
    "GraphStats",
    "InvalidNameError",
    "ParseError",
    "RankingResult",
    "TopsisTableau",
    "WeightedGraph",
    "average_degree",
    "betweenness_centrality",
    "build_co_network",
    "build_decision_matrix",
    "closeness_centrality",
    "clustering_coefficient",
    "compute_centralities",
    "connected_components",
    "degree_centrality",
    "density",
    "detect_communities",
    "eigenvector_centrality",
    "extract_entities",
    "filter_corpus",
    "graph_stats",
    "induced_subgraph",
    "modularity",
    "normalize_author_name",
    "parse_canonical_records",
    "parse_wos_export",
    "rank",
    "serialize_canonical",
    "shortest_path_length",
    "strength_centrality",
    "summarize_communities",
]
