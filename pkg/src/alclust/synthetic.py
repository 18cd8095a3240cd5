"""Synthetic time-series generators and correlation estimation.

Correlated sets follow a one-factor model per cluster: with coupling g,
series i in cluster s has returns

    x_i(t) = (sqrt(g) * eta_s(t) + eps_i(t)) / sqrt(1 + g)

where eta (one row per cluster) and eps (one row per series) are i.i.d.
unit-variance innovations.  Each series then has unit variance and the
correlation between two members of the same cluster is g / (1 + g);
cross-cluster correlations are zero.  Innovations are standard normal
by default; a student-t option (rescaled to unit variance) produces the
fat-tailed variant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateSeriesError, InputError


def _innovations(rng: np.random.Generator, shape, df: float | None) -> np.ndarray:
    if df is None:
        return rng.standard_normal(shape)
    # Rescaled so the variance is 1 regardless of df.
    return rng.standard_t(df, size=shape) * np.sqrt((df - 2.0) / df)


def _check_df(df: float | None) -> None:
    if df is not None and df <= 2:
        raise InputError(f"student-t degrees of freedom must exceed 2, got {df}")


@dataclass(frozen=True, init=False)
class GeneratorSpec:
    """Recipe for a planted-cluster data set.

    couplings may be a single value (broadcast over every cluster) or a
    sequence matching cluster_sizes; df=None selects normal innovations.
    """

    cluster_sizes: tuple[int, ...]
    couplings: tuple[float, ...]
    length: int
    df: float | None = None
    seed: int = 0

    def __init__(self, cluster_sizes: Sequence[int], couplings, length: int,
                 df: float | None = None, seed: int = 0):
        sizes = tuple(int(s) for s in cluster_sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise InputError("cluster_sizes must be positive integers")
        if np.isscalar(couplings):
            gs = (float(couplings),) * len(sizes)
        else:
            gs = tuple(float(g) for g in couplings)
        if len(gs) != len(sizes):
            raise InputError(
                f"{len(gs)} couplings for {len(sizes)} clusters"
            )
        if any(g < 0 for g in gs):
            raise InputError("couplings must be non-negative")
        if length < 1:
            raise InputError("series length must be positive")
        _check_df(df)
        object.__setattr__(self, "cluster_sizes", sizes)
        object.__setattr__(self, "couplings", gs)
        object.__setattr__(self, "length", int(length))
        object.__setattr__(self, "df", df)
        object.__setattr__(self, "seed", int(seed))

    @property
    def n_objects(self) -> int:
        return sum(self.cluster_sizes)

    @property
    def n_clusters(self) -> int:
        return len(self.cluster_sizes)

    def ground_truth(self) -> np.ndarray:
        """Planted partition: cluster index per object."""
        return np.repeat(np.arange(self.n_clusters, dtype=np.int64), self.cluster_sizes)


def gen_white_noise(n_series: int, length: int, df: float | None = None,
                    seed: int = 0) -> np.ndarray:
    """I.i.d. noise matrix with unit-variance innovations, one series per row."""
    if n_series < 1 or length < 1:
        raise InputError("n_series and length must be positive")
    _check_df(df)
    rng = np.random.default_rng(seed)
    return _innovations(rng, (n_series, length), df)


def gen_correlated(spec: GeneratorSpec) -> tuple[np.ndarray, np.ndarray]:
    """Planted-cluster returns matrix plus its ground-truth partition.

    The cluster factor matrix is materialized first and each row's noise
    stream is seeded independently from (seed, row), so the output does
    not depend on generation order.
    """
    streams = np.random.SeedSequence(spec.seed).spawn(spec.n_objects + 1)
    factor_rng = np.random.default_rng(streams[0])
    factors = _innovations(factor_rng, (spec.n_clusters, spec.length), spec.df)
    labels = spec.ground_truth()
    data = np.empty((spec.n_objects, spec.length), dtype=float)
    for i in range(spec.n_objects):
        g = spec.couplings[labels[i]]
        noise = _innovations(np.random.default_rng(streams[i + 1]), spec.length, spec.df)
        data[i] = (np.sqrt(g) * factors[labels[i]] + noise) / np.sqrt(1.0 + g)
    return data, labels


def estimate_correlation(data) -> np.ndarray:
    """Pearson correlation of the rows, cleaned against round-off.

    Entries are clipped to [-1, 1] and the diagonal snapped to 1; a row
    with zero sample variance is rejected by name.
    """
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2:
        raise InputError(f"expected a 2-d data matrix, got ndim={arr.ndim}")
    if arr.shape[1] < 2:
        raise InputError("need at least two features per series to correlate")
    if not np.all(np.isfinite(arr)):
        raise InputError("data matrix contains non-finite values")
    stds = arr.std(axis=1)
    dead = np.flatnonzero(stds == 0.0)
    if dead.size:
        raise DegenerateSeriesError(
            f"series {int(dead[0])} has zero variance; correlation undefined"
        )
    corr = np.corrcoef(arr)
    corr = (corr + corr.T) / 2.0
    np.clip(corr, -1.0, 1.0, out=corr)
    np.fill_diagonal(corr, 1.0)
    return corr
