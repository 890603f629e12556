"""Bipartite-network centrality from Hellinger distances between
neighbor-degree distributions, with baseline centralities, a random-graph
null model, and rank-agreement statistics."""

from .graph import (
    BipartiteGraph,
    EdgeListParseError,
    NeighborDegreeVector,
    Side,
    UnipartiteGraph,
    UnknownNodeError,
    load_edge_list,
    load_node_list,
    neighbor_degree_vector,
    project,
    weighted_neighbor_degree_vector,
)
from .hellinger import (
    DistanceMatrix,
    DistanceMode,
    distance_bounds,
    distance_matrix,
    hellinger_distance,
    hellrank,
    node_distance,
    threshold_graph,
    weighted_node_distance,
)
from .scores import CentralityScores, normalize_scores
from .baselines import (
    PageRankConfig,
    bipartite_betweenness,
    bipartite_closeness,
    bipartite_degree,
    eigenvector_centrality,
    latapy_cc,
    latapy_pair_cc,
    opsahl_cc,
    opsahl_path_counts,
    pagerank,
    projected_centrality,
)
from .nullmodel import (
    DistanceMoments,
    NullModelParams,
    expected_distance_moments,
    monte_carlo_distance,
    poisson_hellinger_sq,
    similarity_threshold,
)
from .rankeval import RankVector, kendall_tau, spearman_rho, sweep_k, top_k_vector
from .datasets import builtin_names, load_builtin

__version__ = "0.1.0"
