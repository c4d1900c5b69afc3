"""toposcope: centrality, rank agreement and attack vulnerability of
router-level network topologies."""

from .attacksim import (
    AttackPlan,
    AttackTrace,
    ConnectivitySnapshot,
    EnvelopeReport,
    connectivity_metrics,
    envelope,
    if_pmf,
    impact_factor,
    run_attack,
)
from .centrality import (
    CentralityVector,
    GraphCentralitySummary,
    IndexKind,
    betweenness_centrality,
    closeness_centrality,
    compute_all,
    degree_centrality,
    degree_distribution,
    eccentricity_centrality,
    eigenvector_centrality,
    graph_summary,
    harmonic_centrality,
    pagerank,
)
from .errors import ComputeError, IngestError, ToposcopeError
from .flowcap import CapacityTrace, aggregate_max_flow, max_flow, run_capacity_attack
from .graph import (
    ComponentLabeling,
    DistanceRow,
    Topology,
    bfs_row,
    build_topology,
    connected_components,
    dijkstra_row,
    extract_gcc,
    induced_subgraph,
)
from .ingest import (
    IngestConfig,
    IngestReport,
    load_topology,
    parse_edgelist,
    parse_graphml,
    write_edgelist,
)
from .rankstats import (
    CorrelationMatrix,
    Ranking,
    aggregate_matrices,
    bottom_rank_diagnostics,
    correlation_matrix,
    damping_sweep,
    kendall,
    pearson,
    rank,
    spearman,
    top_k_overlap,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
