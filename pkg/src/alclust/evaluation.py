"""Scoring and experiment harness: agreement indices, noise statistics,
spanning trees, an exhaustive small-instance oracle, and runtime scaling.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from statistics import median
from typing import Mapping, Sequence

import numpy as np
from scipy import stats as sp_stats

from . import engine
from .errors import InputError
from .likelihood import _evaluate, validate_correlation_matrix
from .partitions import canonicalize_labels, labels_to_clusters
from .synthetic import GeneratorSpec, estimate_correlation, gen_correlated
from .union_find import DisjointSet


@dataclass(frozen=True)
class AriReport:
    """Adjusted Rand index plus the pair-counting table behind it.

    The four counts classify every unordered object pair by whether the
    two partitions place it together or apart.
    """

    ari: float
    together_together: int
    together_apart: int
    apart_together: int
    apart_apart: int


def _comb2(x: np.ndarray) -> np.ndarray:
    return x * (x - 1) // 2


def adjusted_rand_index(a, b) -> AriReport:
    """Chance-corrected agreement between two partitions of the same objects.

    Computed from the pair-counting contingency table.  When the
    adjustment denominator vanishes (both partitions trivial in the same
    direction) the index is 1 for identical partitions and 0 otherwise.
    """
    la = np.asarray(a)
    lb = np.asarray(b)
    if la.ndim != 1 or lb.ndim != 1 or la.size != lb.size:
        raise InputError("partitions must label the same objects")
    if la.size == 0:
        raise InputError("partitions are empty")
    n = la.size
    if n == 1:
        return AriReport(1.0, 0, 0, 0, 0)
    _, ia = np.unique(la, return_inverse=True)
    _, ib = np.unique(lb, return_inverse=True)
    n_b = int(ib.max()) + 1
    table = np.bincount(ia * n_b + ib, minlength=(int(ia.max()) + 1) * n_b)
    table = table.reshape(-1, n_b)
    index = int(_comb2(table).sum())
    sum_a = int(_comb2(table.sum(axis=1)).sum())
    sum_b = int(_comb2(table.sum(axis=0)).sum())
    total = n * (n - 1) // 2
    tt = index
    ta = sum_a - index
    at = sum_b - index
    aa = total - sum_a - sum_b + index
    expected = sum_a * sum_b / total
    max_index = (sum_a + sum_b) / 2.0
    if max_index == expected:
        identical = bool(
            np.array_equal(canonicalize_labels(la), canonicalize_labels(lb))
        )
        ari = 1.0 if identical else 0.0
    else:
        ari = (index - expected) / (max_index - expected)
    return AriReport(float(ari), tt, ta, at, aa)


@dataclass(frozen=True)
class NoiseReport:
    """Cluster-count behavior of clusterless data across data-set sizes."""

    sizes: tuple[int, ...]
    mean_clusters: tuple[float, ...]
    mean_normalized: tuple[float, ...]
    histogram: dict[int, int]
    mode_size: int
    spearman_normalized: float


def noise_statistics(partitions_by_size: Mapping[int, Sequence]) -> NoiseReport:
    """Summarize partitions of noise data: counts, counts/N, size histogram.

    The histogram pools cluster sizes over every partition supplied; its
    mode breaks ties toward the smaller size.
    """
    if not partitions_by_size:
        raise InputError("no partitions supplied")
    sizes = tuple(sorted(int(s) for s in partitions_by_size))
    mean_clusters = []
    mean_normalized = []
    pooled: Counter = Counter()
    for n in sizes:
        counts = []
        for labels in partitions_by_size[n]:
            arr = np.asarray(labels)
            if arr.size != n:
                raise InputError(f"partition of size {arr.size} filed under N={n}")
            groups = labels_to_clusters(arr)
            counts.append(len(groups))
            pooled.update(len(mem) for mem in groups.values())
        mean_clusters.append(float(np.mean(counts)))
        mean_normalized.append(float(np.mean(counts)) / n)
    mode_size = min(
        pooled, key=lambda size: (-pooled[size], size)
    )
    if len(sizes) >= 2 and len(set(mean_normalized)) > 1:
        rho = float(sp_stats.spearmanr(sizes, mean_normalized).statistic)
    else:
        # rank correlation is undefined for a single size or a flat trend
        rho = float("nan")
    return NoiseReport(
        sizes=sizes,
        mean_clusters=tuple(mean_clusters),
        mean_normalized=tuple(mean_normalized),
        histogram=dict(sorted(pooled.items())),
        mode_size=int(mode_size),
        spearman_normalized=rho,
    )


def mst_edges(corr) -> list[tuple[int, int, float]]:
    """Minimum spanning tree of the distance 1 - correlation.

    Returns N-1 edges (i, j, distance) in selection order; equal-weight
    edges are taken in lexicographic (i, j) order so the tree is unique.
    """
    mat = validate_correlation_matrix(corr)
    n = mat.shape[0]
    if n < 2:
        raise InputError("need at least two objects for a spanning tree")
    ii, jj = np.triu_indices(n, k=1)
    dd = 1.0 - mat[ii, jj]
    order = np.lexsort((jj, ii, dd))
    forest = DisjointSet(n)
    edges: list[tuple[int, int, float]] = []
    for k in order.tolist():
        i = int(ii[k])
        j = int(jj[k])
        if forest.union(i, j):
            edges.append((i, j, float(dd[k])))
            if len(edges) == n - 1:
                break
    return edges


def exhaustive_oracle(corr, max_n: int = 8) -> tuple[np.ndarray, float]:
    """Globally best partition by enumerating every set partition.

    Partitions containing a cluster whose correlation sum falls below its
    size are infeasible and skipped.  Ties prefer more clusters, so
    structureless input resolves to all singletons.  Intended as a test
    oracle; cost grows with the Bell number of N.
    """
    mat = validate_correlation_matrix(corr)
    n = mat.shape[0]
    if n > max_n:
        raise InputError(f"oracle limited to {max_n} objects, got {n}")
    rows = mat.tolist()
    members: list[list[int]] = [[] for _ in range(n)]
    csum = [0.0] * n
    best_like = 0.0
    best_k = n
    best_labels = list(range(n))

    def evaluate(k: int) -> float | None:
        total = 0.0
        for s in range(k):
            m = len(members[s])
            if m < 2:
                continue
            c = csum[s]
            if c < m:
                return None
            total += _evaluate(m, c)[0]
        return total

    def place(i: int, k: int) -> None:
        nonlocal best_like, best_k, best_labels
        if i == n:
            total = evaluate(k)
            if total is None:
                return
            if total > best_like or (total == best_like and k > best_k):
                best_like = total
                best_k = k
                labels = [0] * n
                for s in range(k):
                    for obj in members[s]:
                        labels[obj] = s
                best_labels = labels
            return
        row = rows[i]
        for s in range(k + 1):
            mem = members[s]
            cross = 0.0
            for j in mem:
                cross += row[j]
            csum[s] += 1.0 + 2.0 * cross
            mem.append(i)
            place(i + 1, k + 1 if s == k else k)
            mem.pop()
            csum[s] -= 1.0 + 2.0 * cross

    place(0, 0)
    return canonicalize_labels(best_labels), float(best_like)


@dataclass(frozen=True)
class ScalingReport:
    """Runtime-vs-size measurements and the fitted power-law exponent."""

    sizes: tuple[int, ...]
    median_seconds: tuple[float, ...]
    rep_seconds: tuple[tuple[float, ...], ...]
    fitted_exponent: float
    intercept: float
    clusters: int
    length: int
    reps: int
    coupling: float
    seed: int
    consistent: bool


def _split_sizes(total: int, clusters: int) -> list[int]:
    if total < clusters:
        raise InputError(f"cannot split {total} objects into {clusters} clusters")
    base, extra = divmod(total, clusters)
    return [base + 1] * extra + [base] * (clusters - extra)


def benchmark_scaling(sizes: Sequence[int], clusters: int = 10, length: int = 250,
                      reps: int = 3, coupling: float = 1.0, df: float | None = None,
                      seed: int = 0) -> ScalingReport:
    """Time the clustering engine on planted data over a size grid.

    Data generation and correlation estimation happen outside the timed
    region; the fitted exponent is the least-squares slope of log median
    runtime against log size.
    """
    size_list = [int(s) for s in sizes]
    if len(size_list) < 2:
        raise InputError("need at least two sizes to fit an exponent")
    if reps < 1:
        raise InputError("reps must be positive")
    medians = []
    all_times = []
    consistent = True
    for n in size_list:
        spec = GeneratorSpec(
            _split_sizes(n, clusters), coupling, length, df=df,
            seed=int(np.random.SeedSequence([seed, n]).generate_state(1)[0]),
        )
        data, _ = gen_correlated(spec)
        corr = estimate_correlation(data)
        cfg = engine.EngineConfig(
            seed=int(np.random.SeedSequence([seed, n, 1]).generate_state(1)[0])
        )
        times = []
        reference = None
        for _ in range(reps):
            started = time.perf_counter()
            result = engine.run(corr, cfg, validate=False)
            times.append(time.perf_counter() - started)
            if reference is None:
                reference = result.labels
            elif not np.array_equal(reference, result.labels):
                consistent = False
        medians.append(float(median(times)))
        all_times.append(tuple(times))
    slope, intercept = np.polyfit(np.log(size_list), np.log(medians), 1)
    return ScalingReport(
        sizes=tuple(size_list),
        median_seconds=tuple(medians),
        rep_seconds=tuple(all_times),
        fitted_exponent=float(slope),
        intercept=float(intercept),
        clusters=clusters,
        length=length,
        reps=reps,
        coupling=float(coupling),
        seed=seed,
        consistent=consistent,
    )


def compare_labelfile(labels, path) -> AriReport:
    """ARI between a partition and an externally produced label file."""
    from . import fileio

    external = fileio.read_labelfile_array(path, n_objects=len(np.asarray(labels)))
    return adjusted_rand_index(labels, external)
