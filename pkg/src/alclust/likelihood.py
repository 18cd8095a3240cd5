"""Potts cluster likelihood on correlation matrices.

A cluster is summarized by two numbers: its size ``n`` and the sum ``c``
of the correlation matrix over all ordered member pairs, diagonal
included (a singleton therefore has ``c == 1`` exactly).  The likelihood
contribution of one cluster is

    L(n, c) = 0.5 * (ln(n / c) + (n - 1) * ln((n^2 - n) / (n^2 - c)))

for ``n >= 2``, and zero for singletons.  The feasible band is
``n <= c < n^2``: the value is exactly zero at ``c == n`` (no internal
structure) and diverges as ``c -> n^2`` (perfectly correlated members).
Sums at or above ``n^2`` are clamped to ``n^2 * (1 - UPPER_CLAMP)`` so
duplicated series score as an overwhelmingly good merge instead of
erroring out; callers are notified through ClampWarning.

The total likelihood of a partition is the sum of the per-cluster terms,
so merge gains can be evaluated locally from cluster statistics alone.
"""

from __future__ import annotations

import math
import warnings
from typing import NamedTuple

import numpy as np

from .errors import (
    ClampWarning,
    ConstraintViolationError,
    InputError,
    UndefinedCouplingError,
)
from .partitions import labels_to_clusters

UPPER_CLAMP = 1e-12


class ClusterStats(NamedTuple):
    """Cluster size and internal correlation sum (diagonal included)."""

    size: int
    corr_sum: float


def _evaluate(size: float, corr_sum: float) -> tuple[float, bool]:
    """Likelihood of one cluster, assuming size >= 2 and corr_sum >= size.

    Returns (value, clamped); clamped is True when corr_sum had to be
    pulled inside the strict upper bound size**2.
    """
    n = float(size)
    c = float(corr_sum)
    nn = n * n
    clamped = False
    if c >= nn:
        c = nn * (1.0 - UPPER_CLAMP)
        clamped = True
    if c == n:
        return 0.0, clamped
    value = 0.5 * (math.log(n / c) + (n - 1.0) * math.log((nn - n) / (nn - c)))
    return value, clamped


def cluster_coupling(stats: ClusterStats) -> float:
    """Shared-factor coupling strength implied by (size, corr_sum).

    Computed as sqrt((c - n) / (n^2 - n)); 0 means no internal structure,
    values near 1 mean the members are almost perfectly correlated.
    """
    n = int(stats[0])
    c = float(stats[1])
    if n < 2:
        raise UndefinedCouplingError("coupling is undefined for a singleton")
    if c < n:
        raise ConstraintViolationError(
            f"corr_sum {c} below cluster size {n}; coupling undefined"
        )
    c = min(c, n * n * (1.0 - UPPER_CLAMP))
    return math.sqrt((c - n) / (n * n - n))


def cluster_likelihood(stats: ClusterStats) -> float:
    """Likelihood contribution of a single cluster.

    Singletons contribute exactly 0.  For size >= 2 the value is zero at
    corr_sum == size, strictly positive inside the feasible band, and
    clamped (with a ClampWarning) at or above size**2.
    """
    n = int(stats[0])
    c = float(stats[1])
    if n < 1:
        raise InputError("cluster size must be at least 1")
    if n == 1:
        return 0.0
    if c < n:
        raise ConstraintViolationError(
            f"corr_sum {c} below cluster size {n}; outside the likelihood domain"
        )
    value, clamped = _evaluate(n, c)
    if clamped:
        warnings.warn(
            ClampWarning(f"corr_sum {c} at upper bound {n * n} for size {n}; clamped"),
            stacklevel=2,
        )
    return value


def merge_stats(a: ClusterStats, b: ClusterStats, cross_sum: float) -> ClusterStats:
    """Statistics of the union of two disjoint clusters.

    cross_sum is the sum of correlations over pairs (i in a, j in b),
    each unordered pair counted once; the doubling happens here.
    """
    return ClusterStats(int(a[0]) + int(b[0]), float(a[1]) + float(b[1]) + 2.0 * float(cross_sum))


def delta_merge_case2(a: ClusterStats, b: ClusterStats, cross_sum: float) -> float:
    """Likelihood gain of a merge relative to the two clusters kept apart.

    This is the merge criterion used by the engine: the union must beat
    the sum of its parts.
    """
    merged = merge_stats(a, b, cross_sum)
    return cluster_likelihood(merged) - cluster_likelihood(a) - cluster_likelihood(b)


def delta_merge_case1(a: ClusterStats, b: ClusterStats, cross_sum: float) -> float:
    """Gain of a merge relative to the better of the two clusters.

    A weaker acceptance rule than delta_merge_case2, exposed for
    experimentation; the engine does not use it.
    """
    merged = merge_stats(a, b, cross_sum)
    return cluster_likelihood(merged) - max(cluster_likelihood(a), cluster_likelihood(b))


def validate_correlation_matrix(corr) -> np.ndarray:
    """Check correlation-matrix invariants and return a cleaned copy.

    Requires a finite, symmetric square matrix with unit diagonal and
    entries in [-1, 1] (all up to a small tolerance, which is then
    snapped exactly).
    """
    arr = np.asarray(corr, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"correlation matrix must be square, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise InputError("correlation matrix is empty")
    if not np.all(np.isfinite(arr)):
        raise InputError("correlation matrix contains non-finite entries")
    if not np.allclose(arr, arr.T, atol=1e-8, rtol=0.0):
        raise InputError("correlation matrix is not symmetric")
    if np.any(np.abs(arr) > 1.0 + 1e-8):
        raise InputError("correlation entries must lie in [-1, 1]")
    if not np.allclose(np.diag(arr), 1.0, atol=1e-8, rtol=0.0):
        raise InputError("correlation matrix must have a unit diagonal")
    out = (arr + arr.T) / 2.0
    np.clip(out, -1.0, 1.0, out=out)
    np.fill_diagonal(out, 1.0)
    return out


def stats_from_members(corr: np.ndarray, members) -> ClusterStats:
    """ClusterStats of an explicit member set, summed from the matrix."""
    idx = np.asarray(list(members), dtype=np.intp)
    block = corr[np.ix_(idx, idx)]
    return ClusterStats(idx.size, float(block.sum()))


def total_likelihood(labels, corr) -> float:
    """Likelihood of a whole partition, each cluster summed from scratch.

    ``labels`` maps object index to cluster label and must cover exactly
    the index set of ``corr``.  The all-singleton partition scores 0.
    """
    mat = validate_correlation_matrix(corr)
    arr = np.asarray(labels)
    if arr.ndim != 1 or arr.size != mat.shape[0]:
        raise InputError(
            f"labels cover {arr.size} objects but the matrix has {mat.shape[0]}"
        )
    total = 0.0
    for members in labels_to_clusters(arr).values():
        if len(members) < 2:
            continue
        total += cluster_likelihood(stats_from_members(mat, members))
    return total
