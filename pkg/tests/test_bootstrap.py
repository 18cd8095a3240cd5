"""Bootstrap-filter tests: counts, thresholding, components, full runs."""

import numpy as np
import pytest

from alclust import (
    BootstrapConfig,
    BootstrapState,
    GeneratorSpec,
    InputError,
    bootstrap_iteration,
    components_partition,
    gen_correlated,
    probability_matrix,
    run_bootstrap,
    threshold_ordinal,
)

from conftest import block_correlation


class TestConfig:
    def test_requires_q_or_n(self):
        with pytest.raises(InputError):
            BootstrapConfig()

    def test_omega_range(self):
        with pytest.raises(InputError):
            BootstrapConfig(sample_size=5, omega=1.2)

    def test_sample_size_from_quality(self):
        cfg = BootstrapConfig(sample_quality=0.1)
        assert cfg.resolve_sample_size(2000, 20) == 200
        assert cfg.resolve_sample_size(2000, 10) == 100
        assert cfg.resolve_sample_size(2000, 30) == 300

    def test_sample_size_bounds(self):
        with pytest.raises(InputError):
            BootstrapConfig(sample_size=300).resolve_sample_size(100, None)
        with pytest.raises(InputError):
            BootstrapConfig(sample_quality=0.001).resolve_sample_size(100, 20)

    def test_quality_needs_length(self):
        with pytest.raises(InputError):
            BootstrapConfig(sample_quality=0.1).resolve_sample_size(100, None)


class TestIteration:
    def test_count_invariants(self, rng):
        corr = block_correlation([4, 4], within=0.9)
        state = BootstrapState.zeros(8)
        n = 5
        for k in range(1, 11):
            bootstrap_iteration(corr, state, n, seed=3, iteration=k)
            f, d = state.co_sampled, state.co_clustered
            assert np.all(d <= f)
            assert np.all(np.diag(f) == 0)
            assert np.all(np.diag(d) == 0)
            assert np.array_equal(f, f.T)
            assert np.array_equal(d, d.T)
            # each iteration adds exactly n(n-1)/2 sampled pairs
            assert f[np.triu_indices(8, 1)].sum() == k * n * (n - 1) // 2

    def test_full_sample_hits_every_pair(self):
        corr = np.eye(3)
        state = BootstrapState.zeros(3)
        bootstrap_iteration(corr, state, 3, seed=0, iteration=1)
        off = state.co_sampled[np.triu_indices(3, 1)]
        assert np.all(off == 1)

    def test_identity_correlation_never_coclusters(self):
        corr = np.eye(6)
        state = BootstrapState.zeros(6)
        for k in range(1, 6):
            bootstrap_iteration(corr, state, 4, seed=1, iteration=k)
        assert state.co_clustered.sum() == 0

    def test_oversized_sample_rejected(self):
        state = BootstrapState.zeros(4)
        with pytest.raises(InputError):
            bootstrap_iteration(np.eye(4), state, 5, seed=0, iteration=1)


class TestProbabilityAndThreshold:
    def build_state(self, f, d):
        state = BootstrapState.zeros(2)
        state.co_sampled[0, 1] = state.co_sampled[1, 0] = f
        state.co_clustered[0, 1] = state.co_clustered[1, 0] = d
        return state

    def test_ratio(self):
        assert probability_matrix(self.build_state(4, 3))[0, 1] == 0.75

    def test_always_clustered(self):
        assert probability_matrix(self.build_state(5, 5))[0, 1] == 1.0

    def test_never_sampled_is_zero(self):
        assert probability_matrix(self.build_state(0, 0))[0, 1] == 0.0

    def test_threshold_boundary_strict(self):
        p = np.array([[0.0, 0.5], [0.5, 0.0]])
        assert threshold_ordinal(p, 0.5)[0, 1] == 0

    def test_threshold_above(self):
        p = np.array([[0.0, 0.76], [0.76, 0.0]])
        assert threshold_ordinal(p, 0.75)[0, 1] == 1

    def test_zero_probability_never_edges(self):
        p = np.zeros((3, 3))
        assert threshold_ordinal(p, 0.0).sum() == 0

    def test_omega_validated(self):
        with pytest.raises(InputError):
            threshold_ordinal(np.zeros((2, 2)), -0.1)

    def test_monotone_in_omega(self, rng):
        # raising the threshold can only remove edges, so the partition
        # gets finer (every cluster is contained in a lower-omega cluster)
        p = rng.uniform(0, 1, size=(20, 20))
        p = (p + p.T) / 2
        np.fill_diagonal(p, 0.0)
        for low, high in [(0.2, 0.5), (0.5, 0.75), (0.75, 0.9)]:
            loose = threshold_ordinal(p, low)
            tight = threshold_ordinal(p, high)
            assert np.all(tight <= loose)
            coarse = components_partition(loose)
            fine = components_partition(tight)
            for lab in np.unique(fine):
                members = np.flatnonzero(fine == lab)
                assert np.unique(coarse[members]).size == 1


class TestComponents:
    def test_empty_graph_all_singletons(self):
        assert components_partition(np.zeros((4, 4))).tolist() == [0, 1, 2, 3]

    def test_complete_graph_one_cluster(self):
        adj = np.ones((4, 4)) - np.eye(4)
        assert components_partition(adj).tolist() == [0, 0, 0, 0]

    def test_two_triangles(self):
        adj = np.zeros((6, 6))
        for a, b in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]:
            adj[a, b] = adj[b, a] = 1
        assert components_partition(adj).tolist() == [0, 0, 0, 1, 1, 1]


class TestRunBootstrap:
    def planted(self, seed=0):
        spec = GeneratorSpec([5, 5, 5], 1.0, 4000, seed=seed)
        data, truth = gen_correlated(spec)
        return data, truth

    def test_immediate_stop_on_full_sample(self):
        # a full-sample iteration of a cleanly separable set recovers the
        # planted partition, so the ARI stop fires at the first checkpoint
        data, truth = self.planted()
        cfg = BootstrapConfig(
            sample_size=15, omega=0.75, max_iterations=50, seed=1,
            ground_truth=truth, record_every=1,
        )
        result = run_bootstrap(data, cfg)
        assert result.stop_reason == "ari_stop"
        assert result.stopped_early
        assert len(result.trajectory) == 1
        assert result.trajectory[0].iteration == 1
        assert result.trajectory[0].ari == 1.0

    def test_block_probabilities_separate(self):
        # sample 12 of 15 so every block keeps at least two members per
        # draw; lone members can otherwise pair with noise and depress p
        data, truth = self.planted(seed=3)
        cfg = BootstrapConfig(sample_size=12, omega=0.75, max_iterations=60, seed=2)
        result = run_bootstrap(data, cfg)
        p = result.probabilities
        evidence = result.state.co_sampled > 0
        same = truth[:, None] == truth[None, :]
        off = ~np.eye(15, dtype=bool)
        within = p[same & off & evidence]
        across = p[~same & evidence]
        assert within.min() > 0.9
        assert across.max() < 0.1

    def test_determinism(self):
        data, truth = self.planted(seed=5)
        cfg = BootstrapConfig(sample_size=8, omega=0.5, max_iterations=30, seed=9)
        first = run_bootstrap(data, cfg)
        second = run_bootstrap(data, cfg)
        assert np.array_equal(first.labels, second.labels)
        assert first.trajectory == second.trajectory
        assert np.array_equal(first.state.co_sampled, second.state.co_sampled)

    def test_trajectory_checkpoints(self):
        data, _ = self.planted(seed=6)
        cfg = BootstrapConfig(sample_size=8, omega=0.75, max_iterations=25,
                              seed=4, record_every=10)
        result = run_bootstrap(data, cfg)
        assert [p.iteration for p in result.trajectory] == [10, 20, 25]
        assert result.stop_reason == "max_iterations"

    def test_needs_input(self):
        with pytest.raises(InputError):
            run_bootstrap(None, BootstrapConfig(sample_size=5))

    def test_plateau_stop(self):
        # perfectly separable blocks saturate the thresholded graph quickly
        data, _ = self.planted(seed=7)
        cfg = BootstrapConfig(
            sample_size=15, omega=0.75, max_iterations=2000, seed=3,
            record_every=10, plateau_stop=True, plateau_window=50,
        )
        result = run_bootstrap(data, cfg)
        assert result.stop_reason == "plateau"
        assert result.state.iterations_done < 2000
