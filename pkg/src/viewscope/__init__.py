"""Viewpoint discovery and explanation for social endorsement networks.

Build an interaction graph from endorsement triples, split it with multilevel
graph partitioning, keep the clusters whose conductance stays below a
threshold as viewpoints, and explain each viewpoint with iterative
rank-difference term analysis.
"""

from .evaluation import EvalReport, MetricsError, evaluate, load_truth, nmi, purity
from .graph import (
    DatasetMeta,
    IngestError,
    IngestReport,
    InteractionGraph,
    InteractionRecord,
    Post,
    build_graph,
    connected_components,
    graph_from_dict,
    graph_stats,
    graph_to_dict,
    ingest_interactions,
    ingest_posts,
    write_graphml,
)
from .ird import (
    DegenerateSplitError,
    IRDError,
    RankDiffEntry,
    RankDiffResult,
    TermDrilldown,
    ViewpointCorpus,
    ViewpointDescription,
    build_viewpoint_corpus,
    describe_viewpoint,
    drill_terms,
    rank_difference,
)
from .partition import (
    CoarseGraph,
    Partition,
    PartitionError,
    PartitionParams,
    WorkGraph,
    coarsen_level,
    edge_cut,
    initial_bisection,
    kway_partition,
    multilevel_bisect,
    project_partition,
    refine,
)
from .selection import (
    ClusterQuality,
    ConductanceProfile,
    SelectionError,
    ViewpointSelection,
    conductance,
    cut_weight,
    profile,
    select_viewpoints,
    sweep_from_csv,
    sweep_to_csv,
    volume,
)
from .text import RankedTermList, Tokenizer, load_stopwords, term_frequencies, tokenize_normalize, top_n

__version__ = "0.1.0"
