"""Shared helpers for the test suite."""

import numpy as np
import pytest


def factor_correlation(rng, n, length=400, weight=0.4):
    """Random but valid correlation matrix from factor-structured data.

    A common factor keeps most entries positive so randomly chosen merges
    stay inside the likelihood's feasible band.
    """
    common = rng.standard_normal(length)
    data = weight * common + rng.standard_normal((n, length))
    data += rng.standard_normal((n, 1)) * 0.05
    corr = np.corrcoef(data)
    corr = (corr + corr.T) / 2.0
    np.clip(corr, -1.0, 1.0, out=corr)
    np.fill_diagonal(corr, 1.0)
    return corr


def block_correlation(sizes, within=0.9, cross=0.0):
    """Exact planted block-diagonal correlation matrix."""
    n = sum(sizes)
    corr = np.full((n, n), cross, dtype=float)
    start = 0
    for size in sizes:
        corr[start:start + size, start:start + size] = within
        start += size
    np.fill_diagonal(corr, 1.0)
    return corr


def block_labels(sizes):
    return np.repeat(np.arange(len(sizes)), sizes)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
