"""Agglomerative likelihood clustering of correlated time series.

Clusters N series from their Pearson correlation matrix by greedily
merging whichever pair of clusters most increases a Potts-style partition
likelihood, stopping when no merge helps.  The number of clusters is an
output, not an input.  Companion tools generate planted-cluster data,
filter estimation noise by bootstrap resampling, and score or benchmark
the results.
"""

__version__ = "0.1.0"

from .bootstrap import (
    BootstrapConfig,
    BootstrapResult,
    BootstrapState,
    bootstrap_iteration,
    components_partition,
    probability_matrix,
    run_bootstrap,
    threshold_ordinal,
)
from .engine import ClusterResult, EngineConfig, EngineState, apply_merge, best_merge, init, run
from .errors import (
    AlclustError,
    ClampWarning,
    ConstraintViolationError,
    DegenerateSeriesError,
    InputError,
    InternalError,
    UndefinedCouplingError,
)
from .evaluation import (
    AriReport,
    NoiseReport,
    ScalingReport,
    adjusted_rand_index,
    benchmark_scaling,
    compare_labelfile,
    exhaustive_oracle,
    mst_edges,
    noise_statistics,
)
from .likelihood import (
    ClusterStats,
    cluster_coupling,
    cluster_likelihood,
    delta_merge_case1,
    delta_merge_case2,
    merge_stats,
    total_likelihood,
    validate_correlation_matrix,
)
from .partitions import canonicalize_labels, labels_to_clusters
from .synthetic import GeneratorSpec, estimate_correlation, gen_correlated, gen_white_noise

__all__ = [
    "__version__",
    "AlclustError",
    "AriReport",
    "BootstrapConfig",
    "BootstrapResult",
    "BootstrapState",
    "ClampWarning",
    "ClusterResult",
    "ClusterStats",
    "ConstraintViolationError",
    "DegenerateSeriesError",
    "EngineConfig",
    "EngineState",
    "GeneratorSpec",
    "InputError",
    "InternalError",
    "NoiseReport",
    "ScalingReport",
    "UndefinedCouplingError",
    "adjusted_rand_index",
    "apply_merge",
    "benchmark_scaling",
    "best_merge",
    "bootstrap_iteration",
    "canonicalize_labels",
    "cluster_coupling",
    "cluster_likelihood",
    "compare_labelfile",
    "components_partition",
    "delta_merge_case1",
    "delta_merge_case2",
    "estimate_correlation",
    "exhaustive_oracle",
    "gen_correlated",
    "gen_white_noise",
    "init",
    "labels_to_clusters",
    "merge_stats",
    "mst_edges",
    "noise_statistics",
    "probability_matrix",
    "run",
    "run_bootstrap",
    "threshold_ordinal",
    "total_likelihood",
    "validate_correlation_matrix",
]
