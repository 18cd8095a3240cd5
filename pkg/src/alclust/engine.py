"""Greedy agglomerative maximizer of the partition likelihood.

The optimizer starts from singletons and repeatedly lets an initiator
cluster look for the partner whose merge yields the largest likelihood
gain; the merge is applied when that gain is positive, otherwise the
initiator is retired.  Cluster-to-cluster correlation sums are kept
incrementally, so scanning the partners of one initiator costs O(K) in
the current cluster count K and a merge costs O(K) bookkeeping.

Scheduling: the initiator queue starts with every singleton.  A label
that finds no positive merge leaves the queue for good but remains a
candidate partner for later scans; every merged cluster gets a fresh
label and joins the queue.  The loop therefore terminates after at most
2N - 1 scans.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import log

import numpy as np

from .errors import InputError, InternalError
from .likelihood import UPPER_CLAMP, ClusterStats, _evaluate, validate_correlation_matrix
from .partitions import canonicalize_labels

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class EngineConfig:
    """Reproducibility and acceptance knobs for one clustering run.

    seed drives initiator selection; deterministic_order replaces random
    selection with ascending label order; epsilon_merge is the strict
    threshold a merge gain must exceed, suppressing round-off merges.
    """

    seed: int = 0
    deterministic_order: bool = False
    epsilon_merge: float = 1e-12

    def __post_init__(self):
        if self.epsilon_merge < 0:
            raise InputError("epsilon_merge must be non-negative")


@dataclass
class ClusterResult:
    """Outcome of a clustering run."""

    labels: np.ndarray
    likelihood: float
    merges: int
    warnings: tuple[str, ...]
    elapsed: float

    @property
    def n_clusters(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    @property
    def clusters(self) -> dict[int, tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(self.labels.tolist()):
            groups.setdefault(int(lab), []).append(i)
        return {lab: tuple(mem) for lab, mem in groups.items()}


class EngineState:
    """Mutable optimizer state over a validated correlation matrix.

    Internally clusters live in compacted slots 0..live-1 of a fixed
    N x N array of pairwise correlation sums whose diagonal holds each
    cluster's internal sum; labels map onto slots through a dict so the
    public face speaks labels only.
    """

    def __init__(self, corr: np.ndarray, config: EngineConfig):
        n = corr.shape[0]
        if n < 2:
            raise InputError("need at least two objects to cluster")
        self.config = config
        self.n_objects = n
        self.sums = corr.astype(float, copy=True)
        self.sizes = [1] * n
        self.corr_self = [1.0] * n
        self.likes = [0.0] * n
        self.label_of_slot = list(range(n))
        self.slot_of_label = {i: i for i in range(n)}
        self.members: dict[int, list[int]] = {i: [i] for i in range(n)}
        self.live = n
        self.queue = list(range(n))
        self.queue_pos = {i: i for i in range(n)}
        self.next_label = n
        self.merges = 0
        self.clamped_merges = 0
        self.rng = random.Random(config.seed)

    # -- views used by callers and tests --------------------------------

    @property
    def tracker(self) -> dict[int, tuple[int, ...]]:
        """Current label -> member objects mapping."""
        return {lab: tuple(mem) for lab, mem in self.members.items()}

    @property
    def active_queue(self) -> tuple[int, ...]:
        """Labels still eligible to initiate merges."""
        return tuple(self.queue)

    def labels(self) -> np.ndarray:
        """Per-object current label array (not canonicalized)."""
        out = np.empty(self.n_objects, dtype=np.int64)
        for lab, mem in self.members.items():
            out[mem] = lab
        return out

    def cluster_stats(self, label: int) -> ClusterStats:
        slot = self._slot(label)
        return ClusterStats(self.sizes[slot], self.corr_self[slot])

    def aggregated(self, a: int, b: int) -> float:
        """Correlation sum between clusters a and b (internal sum if a == b)."""
        return float(self.sums[self._slot(a), self._slot(b)])

    def current_likelihood(self) -> float:
        return float(sum(self.likes))

    # -- internals -------------------------------------------------------

    def _slot(self, label: int) -> int:
        try:
            return self.slot_of_label[label]
        except KeyError:
            raise InternalError(f"label {label} is not a current cluster") from None

    def _queue_discard(self, label: int) -> None:
        pos = self.queue_pos.pop(label, None)
        if pos is None:
            return
        last = self.queue.pop()
        if last != label:
            self.queue[pos] = last
            self.queue_pos[last] = pos

    def _queue_append(self, label: int) -> None:
        self.queue_pos[label] = len(self.queue)
        self.queue.append(label)


def init(corr, config: EngineConfig | None = None, *, validate: bool = True) -> EngineState:
    """Singleton starting state: every object is its own cluster."""
    cfg = config if config is not None else EngineConfig()
    mat = validate_correlation_matrix(corr) if validate else np.asarray(corr, dtype=float)
    return EngineState(mat, cfg)


def _scan(state: EngineState, slot: int) -> tuple[int, float] | None:
    """Best partner slot for 'slot' by merge gain; ties go to the smaller label.

    Every current cluster is a candidate partner.  Candidates whose
    merged statistics fall below the feasible band are skipped (scored
    as -inf); merged sums at the upper bound are clamped, which makes
    duplicates irresistible partners.
    """
    live = state.live
    if live < 2:
        return None
    sizes = state.sizes
    selfs = state.corr_self
    likes = state.likes
    labels = state.label_of_slot
    row = state.sums[slot, :live].tolist()
    na = sizes[slot]
    ca = selfs[slot]
    la = likes[slot]
    shrink = 1.0 - UPPER_CLAMP
    best_delta = _NEG_INF
    best_slot = -1
    best_label = -1
    for j in range(live):
        if j == slot:
            continue
        n = na + sizes[j]
        c = ca + selfs[j] + 2.0 * row[j]
        if c < n:
            continue
        nn = n * n
        if c >= nn:
            c = nn * shrink
        if c == n:
            gain = 0.0
        else:
            gain = 0.5 * (log(n / c) + (n - 1.0) * log((nn - n) / (nn - c)))
        delta = gain - la - likes[j]
        if delta > best_delta:
            best_delta = delta
            best_slot = j
            best_label = labels[j]
        elif delta == best_delta and best_slot >= 0 and labels[j] < best_label:
            best_slot = j
            best_label = labels[j]
    if best_slot < 0:
        return None
    return best_slot, best_delta


def best_merge(state: EngineState, initiator: int) -> tuple[int, float] | None:
    """Best (partner label, gain) for an initiator, or None.

    Returns None when no candidate's gain exceeds the configured
    epsilon_merge threshold.
    """
    slot = state._slot(initiator)
    found = _scan(state, slot)
    if found is None:
        return None
    partner_slot, delta = found
    if delta <= state.config.epsilon_merge:
        return None
    return state.label_of_slot[partner_slot], delta


def _merge_slots(state: EngineState, i: int, j: int) -> int:
    """Merge the clusters in slots i and j; returns the new label.

    The merged cluster takes the lower slot; the freed slot is refilled
    by the last live slot so live slots stay contiguous.
    """
    live = state.live
    sums = state.sums
    new_self = float(sums[i, i] + sums[j, j] + 2.0 * sums[i, j])
    row = sums[i, :live] + sums[j, :live]
    lo, hi = (i, j) if i < j else (j, i)
    sums[lo, :live] = row
    sums[:live, lo] = row
    sums[lo, lo] = new_self

    label_a = state.label_of_slot[i]
    label_b = state.label_of_slot[j]
    new_label = state.next_label
    state.next_label += 1
    state.members[new_label] = state.members.pop(label_a) + state.members.pop(label_b)
    del state.slot_of_label[label_a]
    del state.slot_of_label[label_b]

    merged_size = state.sizes[i] + state.sizes[j]
    if new_self < merged_size:
        # Infeasible union (possible only through direct apply_merge
        # calls; the run loop never selects one): carries zero weight.
        value = 0.0
    else:
        value, clamped = _evaluate(merged_size, new_self)
        if clamped:
            state.clamped_merges += 1
    state.sizes[lo] = merged_size
    state.corr_self[lo] = new_self
    state.likes[lo] = value
    state.label_of_slot[lo] = new_label
    state.slot_of_label[new_label] = lo

    last = live - 1
    if hi != last:
        moved = sums[last, :live].copy()
        sums[hi, :live] = moved
        sums[:live, hi] = moved
        sums[hi, hi] = moved[last]
        state.sizes[hi] = state.sizes[last]
        state.corr_self[hi] = state.corr_self[last]
        state.likes[hi] = state.likes[last]
        moved_label = state.label_of_slot[last]
        state.label_of_slot[hi] = moved_label
        state.slot_of_label[moved_label] = hi
    state.sizes.pop()
    state.corr_self.pop()
    state.likes.pop()
    state.label_of_slot.pop()
    state.live = live - 1
    state.merges += 1

    state._queue_discard(label_a)
    state._queue_discard(label_b)
    state._queue_append(new_label)
    return new_label


def apply_merge(state: EngineState, a: int, b: int) -> int:
    """Merge current labels a and b, returning the fresh merged label."""
    if a == b:
        raise InternalError("cannot merge a cluster with itself")
    return _merge_slots(state, state._slot(a), state._slot(b))


def run(corr, config: EngineConfig | None = None, *, validate: bool = True) -> ClusterResult:
    """Cluster a correlation matrix by greedy likelihood merging.

    Initiators are drawn from the queue (seeded random order, or
    ascending labels when deterministic_order is set) until the queue
    empties.  The returned partition is canonicalized; its likelihood is
    the sum of the per-cluster terms maintained during the run.
    """
    cfg = config if config is not None else EngineConfig()
    started = time.perf_counter()
    state = init(corr, cfg, validate=validate)
    rng = state.rng
    eps = cfg.epsilon_merge
    deterministic = cfg.deterministic_order
    queue = state.queue
    slot_of_label = state.slot_of_label
    while queue:
        if deterministic:
            label = min(queue)
        else:
            label = queue[rng.randrange(len(queue))]
        found = _scan(state, slot_of_label[label])
        if found is not None and found[1] > eps:
            _merge_slots(state, slot_of_label[label], found[0])
        else:
            state._queue_discard(label)
    labels = canonicalize_labels(state.labels())
    notes: tuple[str, ...] = ()
    if state.clamped_merges:
        notes = (
            f"likelihood-clamp: {state.clamped_merges} merge(s) evaluated at "
            "the perfect-correlation bound",
        )
    return ClusterResult(
        labels=labels,
        likelihood=state.current_likelihood(),
        merges=state.merges,
        warnings=notes,
        elapsed=time.perf_counter() - started,
    )
