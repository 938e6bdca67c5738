"""Similarity network fusion for article classification from citations and content."""
from ._backend import NAME as KERNEL_BACKEND
from .assoc import (
    adjusted_rand,
    cramers_v,
    distance_correlation,
    embed_rows,
    partial_distance_correlation,
)
from .cluster import WeightedGraph, graph_from_similarity, louvain, modularity
from .fusion import (
    SnfConfig,
    boyack_alpha,
    convex_combination,
    full_kernel,
    glanzel_combination,
    knn_kernel,
    snf,
)
from .ingest import CountTable, filter_vocabulary, read_citation_edges, read_count_table, read_distribution_table
from .model import (
    BipartiteIncidence,
    DistributionMatrix,
    MultiplexBundle,
    Partition,
    SimilarityMatrix,
    symmetrize,
    validate_similarity,
    zero_diagonal,
)
from .similarity import jaccard_layer, relative_frequencies, total_variation_layer
from .synth import PlantedSpec, LayerNoise, complementary_pair, planted_multiplex
from .topics import LdaConfig, fit_lda

__version__ = "0.1.0"
