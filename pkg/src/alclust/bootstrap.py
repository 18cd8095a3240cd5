"""Bootstrap noise filtering for low signal-to-noise clustering.

When the series are short relative to the number of objects (quality
ratio D/N at or below 1), a single clustering of the estimated
correlation matrix is dominated by estimation noise.  The filter instead
clusters many random subsamples of n objects chosen so the subproblem's
quality ratio D/n is acceptable, accumulates how often each pair is
drawn together and how often it lands in the same cluster, and turns the
ratio of those counts into a co-clustering probability matrix.
Thresholding that matrix at omega gives an adjacency whose connected
components are the filtered partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import engine
from .errors import InputError
from .evaluation import adjusted_rand_index
from .partitions import labels_to_clusters
from .synthetic import estimate_correlation
from .union_find import DisjointSet


@dataclass(frozen=True)
class BootstrapConfig:
    """Subsampling, thresholding, and stopping knobs.

    Exactly one of sample_quality (target D/n ratio, from which the
    sample size is derived as round(D / q)) or sample_size must be set.
    ari_stop defaults to 0.9 whenever ground truth is supplied; pass a
    value above 1 to disable early stopping.  plateau_stop is an extra
    convenience for unlabeled data: stop once the thresholded graph's
    edge count has stabilized.
    """

    sample_quality: float | None = None
    sample_size: int | None = None
    omega: float = 0.75
    max_iterations: int = 2200
    seed: int = 0
    ground_truth: Optional[np.ndarray] = None
    ari_stop: float | None = None
    record_every: int = 50
    plateau_stop: bool = False
    plateau_window: int = 100
    plateau_tol: float = 1e-3

    def __post_init__(self):
        if self.sample_quality is None and self.sample_size is None:
            raise InputError("set sample_quality (q) or sample_size (n)")
        if self.sample_quality is not None and self.sample_quality <= 0:
            raise InputError("sample_quality must be positive")
        if not 0.0 <= self.omega <= 1.0:
            raise InputError(f"omega must lie in [0, 1], got {self.omega}")
        if self.max_iterations < 1:
            raise InputError("max_iterations must be at least 1")
        if self.record_every < 1:
            raise InputError("record_every must be at least 1")

    def resolve_sample_size(self, n_objects: int, length: int | None) -> int:
        """Concrete subsample size for a data set of n_objects series."""
        if self.sample_size is not None:
            n = int(self.sample_size)
        else:
            if length is None:
                raise InputError(
                    "sample_quality needs the series length; supply sample_size instead"
                )
            n = round(length / self.sample_quality)
        if not 2 <= n <= n_objects:
            raise InputError(
                f"sample size {n} outside [2, {n_objects}]"
            )
        return n


@dataclass
class BootstrapState:
    """Pairwise co-sampling and co-clustering counts (zero diagonals)."""

    co_sampled: np.ndarray
    co_clustered: np.ndarray
    iterations_done: int = 0

    @classmethod
    def zeros(cls, n_objects: int) -> "BootstrapState":
        return cls(
            co_sampled=np.zeros((n_objects, n_objects), dtype=np.int64),
            co_clustered=np.zeros((n_objects, n_objects), dtype=np.int64),
        )


@dataclass(frozen=True)
class TrajectoryPoint:
    """One recorded checkpoint of the bootstrap run."""

    iteration: int
    ari: float | None
    edge_count: int
    cluster_count: int


@dataclass(frozen=True)
class BootstrapResult:
    labels: np.ndarray
    probabilities: np.ndarray
    state: BootstrapState
    trajectory: tuple[TrajectoryPoint, ...]
    stop_reason: str
    sample_size: int

    @property
    def stopped_early(self) -> bool:
        return self.stop_reason != "max_iterations"


def bootstrap_iteration(corr: np.ndarray, state: BootstrapState, sample_size: int,
                        seed: int, iteration: int) -> None:
    """Draw one subsample, cluster it, and accumulate the pair counts.

    All randomness for iteration k derives from (seed, k), so iterations
    are order-independent and the accumulated counts do not depend on
    scheduling.
    """
    n = corr.shape[0]
    if sample_size > n:
        raise InputError(f"sample size {sample_size} exceeds {n} objects")
    rng = np.random.default_rng([seed, iteration])
    idx = rng.choice(n, size=sample_size, replace=False)
    engine_seed = int(rng.integers(0, 2**63))
    sub = corr[np.ix_(idx, idx)]
    result = engine.run(sub, engine.EngineConfig(seed=engine_seed), validate=False)
    grid = np.ix_(idx, idx)
    state.co_sampled[grid] += 1
    state.co_sampled[idx, idx] -= 1
    for members in labels_to_clusters(result.labels).values():
        if len(members) < 2:
            continue
        group = idx[members]
        block = np.ix_(group, group)
        state.co_clustered[block] += 1
        state.co_clustered[group, group] -= 1
    state.iterations_done += 1


def probability_matrix(state: BootstrapState) -> np.ndarray:
    """Co-clustering probability: clustered count over sampled count.

    Pairs never drawn together carry probability 0 (no evidence).
    """
    p = np.zeros_like(state.co_sampled, dtype=float)
    mask = state.co_sampled > 0
    p[mask] = state.co_clustered[mask] / state.co_sampled[mask]
    return p


def threshold_ordinal(p: np.ndarray, omega: float) -> np.ndarray:
    """Binary adjacency: 1 where p - omega is strictly positive."""
    if not 0.0 <= omega <= 1.0:
        raise InputError(f"omega must lie in [0, 1], got {omega}")
    adjacency = (p - omega > 0).astype(np.int8)
    np.fill_diagonal(adjacency, 0)
    return adjacency


def components_partition(adjacency: np.ndarray) -> np.ndarray:
    """Partition whose clusters are the connected components of the graph."""
    adj = np.asarray(adjacency)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise InputError("adjacency must be square")
    n = adj.shape[0]
    forest = DisjointSet(n)
    rows, cols = np.nonzero(np.triu(adj, k=1))
    for i, j in zip(rows.tolist(), cols.tolist()):
        forest.union(i, j)
    return forest.labels()


def run_bootstrap(data, cfg: BootstrapConfig, *, corr: np.ndarray | None = None) -> BootstrapResult:
    """Full bootstrap filter: iterate, checkpoint, stop, extract components.

    Checkpoints happen every record_every iterations and at the final
    iteration; the early-stop conditions (ARI against ground truth, or
    the plateau heuristic) are evaluated at checkpoints only.
    """
    length = None
    if corr is None:
        if data is None:
            raise InputError("supply a data matrix or a correlation matrix")
        arr = np.asarray(data, dtype=float)
        corr = estimate_correlation(arr)
        length = arr.shape[1]
    elif data is not None:
        length = np.asarray(data).shape[1]
    n_objects = corr.shape[0]
    sample_size = cfg.resolve_sample_size(n_objects, length)
    truth = None
    ari_target = None
    if cfg.ground_truth is not None:
        truth = np.asarray(cfg.ground_truth)
        if truth.size != n_objects:
            raise InputError("ground truth does not cover the objects")
        ari_target = 0.9 if cfg.ari_stop is None else float(cfg.ari_stop)

    state = BootstrapState.zeros(n_objects)
    trajectory: list[TrajectoryPoint] = []
    stop_reason = "max_iterations"
    labels = np.arange(n_objects, dtype=np.int64)
    p = probability_matrix(state)
    for k in range(1, cfg.max_iterations + 1):
        bootstrap_iteration(corr, state, sample_size, cfg.seed, k)
        if k % cfg.record_every != 0 and k != cfg.max_iterations:
            continue
        p = probability_matrix(state)
        adjacency = threshold_ordinal(p, cfg.omega)
        labels = components_partition(adjacency)
        edge_count = int(adjacency.sum()) // 2
        ari = None
        if truth is not None:
            ari = adjusted_rand_index(truth, labels).ari
        trajectory.append(
            TrajectoryPoint(k, ari, edge_count, int(labels.max()) + 1)
        )
        if ari is not None and ari >= ari_target:
            stop_reason = "ari_stop"
            break
        if cfg.plateau_stop and _plateaued(trajectory, cfg):
            stop_reason = "plateau"
            break
    return BootstrapResult(
        labels=labels,
        probabilities=p,
        state=state,
        trajectory=tuple(trajectory),
        stop_reason=stop_reason,
        sample_size=sample_size,
    )


def _plateaued(trajectory: list[TrajectoryPoint], cfg: BootstrapConfig) -> bool:
    latest = trajectory[-1]
    reference = None
    for point in trajectory:
        if latest.iteration - point.iteration >= cfg.plateau_window:
            reference = point
    if reference is None:
        return False
    change = abs(latest.edge_count - reference.edge_count)
    return change / max(reference.edge_count, 1) < cfg.plateau_tol
