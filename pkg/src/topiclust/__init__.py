"""Linear-time clustering of topic distributions.

Groups documents represented as probability vectors over topics by deriving
a cluster key from each vector alone (trend strings, top-n rankings, or
cumulative-weight rankings), so that expensive pairwise similarity scores
only have to be computed inside each group.
"""

from topiclust.distributions import (
    DatasetSpec,
    HyperParams,
    TopicDistribution,
    load_dataset,
    sample_dataset,
    save_dataset,
    suggest_hyperparams,
    validate,
)
from topiclust.similarity import (
    ComparisonCounter,
    Measure,
    hellinger,
    js_divergence,
    sim_he,
    sim_js,
    similarity,
)
from topiclust.clustering import (
    Clustering,
    CrdcConfig,
    RdcConfig,
    TdcConfig,
    assign_clusters,
    crdc_key,
    intra_cluster_pair_count,
    intra_cluster_pairs,
    rdc_key,
    tdc_key,
)
from topiclust.baselines import (
    DbscanConfig,
    KMeansConfig,
    RandomConfig,
    dbscan,
    kmeans,
    random_partition,
)
from topiclust.evaluation import (
    EvaluationReport,
    GoldStandard,
    SimilarityHistogram,
    build_gold,
    cost,
    effectiveness,
    efficiency,
    estimate_threshold,
    evaluate,
    load_gold,
    precision_recall,
    run_algorithm,
    save_gold,
)

__all__ = [
    "ComparisonCounter",
    "Clustering",
    "CrdcConfig",
    "DatasetSpec",
    "DbscanConfig",
    "EvaluationReport",
    "GoldStandard",
    "HyperParams",
    "KMeansConfig",
    "Measure",
    "RandomConfig",
    "RdcConfig",
    "SimilarityHistogram",
    "TdcConfig",
    "TopicDistribution",
    "assign_clusters",
    "build_gold",
    "cost",
    "crdc_key",
    "dbscan",
    "effectiveness",
    "efficiency",
    "estimate_threshold",
    "evaluate",
    "hellinger",
    "intra_cluster_pair_count",
    "intra_cluster_pairs",
    "js_divergence",
    "kmeans",
    "load_dataset",
    "load_gold",
    "precision_recall",
    "random_partition",
    "rdc_key",
    "run_algorithm",
    "sample_dataset",
    "save_dataset",
    "save_gold",
    "sim_he",
    "sim_js",
    "similarity",
    "suggest_hyperparams",
    "tdc_key",
    "validate",
]
