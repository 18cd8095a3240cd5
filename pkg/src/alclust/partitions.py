"""Label-array utilities shared by the engine, the evaluator, and the CLI.

A partition of N objects is represented as an integer array of length N
mapping each object index to its cluster label.  Canonical form relabels
clusters by first occurrence so labels run contiguously from 0.
"""

from __future__ import annotations

from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import InputError


def canonicalize_labels(labels) -> np.ndarray:
    """Relabel clusters by first occurrence; labels become 0..K-1."""
    arr = np.asarray(labels)
    if arr.ndim != 1:
        raise InputError("labels must be a one-dimensional sequence")
    out = np.empty(arr.size, dtype=np.int64)
    seen: dict = {}
    for i, value in enumerate(arr.tolist()):
        code = seen.setdefault(value, len(seen))
        out[i] = code
    return out


def labels_to_clusters(labels) -> dict[int, list[int]]:
    """Group object indices by label, in first-occurrence order."""
    arr = np.asarray(labels)
    clusters: dict[int, list[int]] = {}
    for i, value in enumerate(arr.tolist()):
        clusters.setdefault(int(value), []).append(i)
    return clusters


def clusters_to_labels(clusters: Mapping[int, Sequence[int]], n_objects: int) -> np.ndarray:
    """Inverse of labels_to_clusters; members must partition 0..n_objects-1."""
    out = np.full(n_objects, -1, dtype=np.int64)
    for label, members in clusters.items():
        for i in members:
            if not 0 <= i < n_objects:
                raise InputError(f"member index {i} outside [0, {n_objects})")
            if out[i] != -1:
                raise InputError(f"object {i} assigned to more than one cluster")
            out[i] = int(label)
    if np.any(out == -1):
        missing = int(np.flatnonzero(out == -1)[0])
        raise InputError(f"object {missing} not assigned to any cluster")
    return out


def iter_set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Yield every partition of range(n) as a restricted-growth label tuple."""
    if n < 0:
        raise InputError("n must be non-negative")
    if n == 0:
        yield ()
        return
    current = [0] * n

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(current)
            return
        for label in range(used + 1):
            current[i] = label
            yield from rec(i + 1, used + 1 if label == used else used)

    yield from rec(1, 1)
