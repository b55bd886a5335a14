from collections import Counter

import numpy as np
import pytest

from topiclust.baselines import (
    DbscanConfig,
    KMeansConfig,
    RandomConfig,
    dbscan,
    kmeans,
    random_partition,
)
from topiclust.distributions import DatasetSpec, TopicDistribution, sample_dataset
from topiclust.errors import InvalidArgumentError
from topiclust.similarity import ComparisonCounter, Measure, hellinger, js_divergence


def planted_modes_dataset(n_per_mode=10, seed=0):
    """4 tight, well-separated Dirichlet modes in 8 dimensions."""
    rng = np.random.default_rng(seed)
    docs, truth = [], []
    for mode in range(4):
        base = np.full(8, 0.01)
        base[mode * 2] = 0.93
        base /= base.sum()
        for i in range(n_per_mode):
            w = rng.dirichlet(base * 3000)
            docs.append(TopicDistribution(f"m{mode}_{i}", w))
            truth.append(mode)
    return docs, truth


class TestKMeans:
    def test_k1_single_cluster(self):
        ds = sample_dataset(DatasetSpec(n=20, k=4, alpha=1.0, seed=0))
        c = kmeans(ds, KMeansConfig(k=1, seed=0))
        assert c.cluster_count == 1
        assert len(next(iter(c.groups.values()))) == 20

    def test_k_equals_n(self):
        ds = sample_dataset(DatasetSpec(n=12, k=4, alpha=1.0, seed=1))
        c = kmeans(ds, KMeansConfig(k=12, seed=0))
        assert c.cluster_count == 12
        assert all(len(g) == 1 for g in c.groups.values())

    def test_k_greater_than_n_rejected(self):
        ds = sample_dataset(DatasetSpec(n=5, k=4, alpha=1.0, seed=0))
        with pytest.raises(InvalidArgumentError):
            kmeans(ds, KMeansConfig(k=6))

    def test_recovers_planted_modes(self):
        # brute-force check at n=40: recovered partition == planted partition
        docs, truth = planted_modes_dataset()
        c = kmeans(docs, KMeansConfig(k=4, seed=0))
        recovered = {frozenset(g) for g in c.groups.values()}
        planted = {
            frozenset(d.doc_id for d, t in zip(docs, truth) if t == mode)
            for mode in range(4)
        }
        assert recovered == planted

    def test_counter_is_k_times_n_times_iterations(self):
        ds = sample_dataset(DatasetSpec(n=60, k=5, alpha=0.5, seed=2))
        counter = ComparisonCounter()
        c = kmeans(ds, KMeansConfig(k=7, seed=3), counter)
        iters = c.params["iterations"]
        assert 1 <= iters <= 50
        assert counter.count == 7 * 60 * iters
        assert c.assignment_comparisons == counter.count

    def test_objective_non_increasing(self):
        ds = sample_dataset(DatasetSpec(n=80, k=6, alpha=0.5, seed=5))
        x = np.stack([d.weights for d in ds])
        rng = np.random.default_rng(1)
        from topiclust.baselines import _kmeans_pp_seed

        centroids = _kmeans_pp_seed(x, 6, rng)
        objectives = []
        for _ in range(20):
            d2 = ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
            labels = np.argmin(d2, axis=1)
            objectives.append(float(d2[np.arange(len(x)), labels].sum()))
            for j in range(6):
                if (labels == j).any():
                    centroids[j] = x[labels == j].mean(axis=0)
        assert all(b <= a + 1e-12 for a, b in zip(objectives, objectives[1:]))

    def test_deterministic_for_seed(self):
        ds = sample_dataset(DatasetSpec(n=50, k=4, alpha=0.7, seed=6))
        assert kmeans(ds, KMeansConfig(k=5, seed=9)) == kmeans(ds, KMeansConfig(k=5, seed=9))

    def test_partition_property(self):
        ds = sample_dataset(DatasetSpec(n=70, k=5, alpha=0.5, seed=7))
        c = kmeans(ds, KMeansConfig(k=6, seed=0))
        assert sorted(c.doc_ids()) == sorted(d.doc_id for d in ds)


def reference_dbscan(docs, eps, min_pts, measure):
    """Naive DBSCAN: python-loop distances, cores, then cluster expansion.

    Border points join the earliest-formed cluster that reaches them,
    matching the deterministic scan order of the library implementation.
    """
    n = len(docs)
    dist = js_divergence if measure is Measure.JS else hellinger
    d = [[dist(docs[i].weights, docs[j].weights) for j in range(n)] for i in range(n)]
    neighborhoods = [[j for j in range(n) if d[i][j] <= eps] for i in range(n)]
    core = [len(nb) >= min_pts for nb in neighborhoods]
    labels = [None] * n
    cluster = 0
    for i in range(n):
        if labels[i] is not None or not core[i]:
            continue
        labels[i] = cluster
        frontier = list(neighborhoods[i])
        while frontier:
            j = frontier.pop(0)
            if labels[j] is not None:
                continue
            labels[j] = cluster
            if core[j]:
                frontier.extend(neighborhoods[j])
        cluster += 1
    groups = {}
    for i in range(n):
        key = labels[i] if labels[i] is not None else f"noise{i}"
        groups.setdefault(key, []).append(docs[i].doc_id)
    return {frozenset(g) for g in groups.values()}


class TestDbscan:
    def test_all_noise_when_sparse(self):
        ds = sample_dataset(DatasetSpec(n=10, k=6, alpha=0.2, seed=0))
        c = dbscan(ds, DbscanConfig(eps=1e-6, min_pts=5), Measure.JS)
        assert c.cluster_count == 10
        assert all(len(g) == 1 for g in c.groups.values())

    def test_identical_points_one_cluster(self):
        ds = [TopicDistribution(f"d{i}", [0.3, 0.7]) for i in range(8)]
        c = dbscan(ds, DbscanConfig(eps=0.1, min_pts=4), Measure.HE)
        assert c.cluster_count == 1

    def test_two_tight_far_groups(self):
        rng = np.random.default_rng(0)
        docs = []
        for mode, peak in enumerate([0, 5]):
            base = np.full(10, 0.005)
            base[peak] = 0.955
            for i in range(60):
                docs.append(TopicDistribution(f"m{mode}_{i}", rng.dirichlet(base * 2000)))
        c = dbscan(docs, DbscanConfig(eps=0.1, min_pts=50), Measure.JS)
        assert c.cluster_count == 2
        assert reference_dbscan(docs, 0.1, 50, Measure.JS) == {
            frozenset(g) for g in c.groups.values()
        }

    @pytest.mark.parametrize("measure", [Measure.JS, Measure.HE])
    def test_oracle_equivalence_random_data(self, measure):
        for seed in range(3):
            ds = sample_dataset(DatasetSpec(n=150, k=4, alpha=0.3, seed=seed))
            eps = 0.15
            c = dbscan(ds, DbscanConfig(eps=eps, min_pts=6), measure)
            assert reference_dbscan(ds, eps, 6, measure) == {
                frozenset(g) for g in c.groups.values()
            }

    def test_counter_counts_all_pairs(self):
        ds = sample_dataset(DatasetSpec(n=30, k=4, alpha=0.5, seed=1))
        counter = ComparisonCounter()
        c = dbscan(ds, DbscanConfig(eps=0.1, min_pts=3), Measure.HE, counter)
        assert counter.count == 900
        assert c.assignment_comparisons == 900

    def test_deterministic(self):
        ds = sample_dataset(DatasetSpec(n=80, k=4, alpha=0.4, seed=2))
        a = dbscan(ds, DbscanConfig(eps=0.2, min_pts=5), Measure.JS)
        b = dbscan(list(ds), DbscanConfig(eps=0.2, min_pts=5), Measure.JS)
        assert a == b

    def test_partition_property(self):
        ds = sample_dataset(DatasetSpec(n=90, k=5, alpha=0.4, seed=3))
        c = dbscan(ds, DbscanConfig(eps=0.15, min_pts=4), Measure.HE)
        assert sorted(c.doc_ids()) == sorted(d.doc_id for d in ds)


class TestRandomPartition:
    def test_m1(self):
        ds = sample_dataset(DatasetSpec(n=15, k=3, alpha=1.0, seed=0))
        c = random_partition(ds, 1, seed=0)
        assert c.cluster_count == 1

    def test_m_equals_n(self):
        ds = sample_dataset(DatasetSpec(n=9, k=3, alpha=1.0, seed=0))
        c = random_partition(ds, 9, seed=0)
        assert all(len(g) == 1 for g in c.groups.values())

    def test_reference_configuration_sizes(self):
        ds = sample_dataset(DatasetSpec(n=1000, k=4, alpha=1.0, seed=0))
        c = random_partition(ds, 44, seed=1)
        sizes = Counter(len(g) for g in c.groups.values())
        assert sizes == {23: 32, 22: 12}

    def test_sizes_differ_by_at_most_one(self):
        ds = sample_dataset(DatasetSpec(n=101, k=3, alpha=1.0, seed=0))
        for m in [2, 7, 50, 101]:
            sizes = [len(g) for g in random_partition(ds, m, seed=3).groups.values()]
            assert max(sizes) - min(sizes) <= 1

    def test_reproducible_and_seed_sensitive(self):
        ds = sample_dataset(DatasetSpec(n=40, k=3, alpha=1.0, seed=0))
        assert random_partition(ds, 5, seed=7) == random_partition(ds, 5, seed=7)
        assert random_partition(ds, 5, seed=7) != random_partition(ds, 5, seed=8)

    def test_out_of_range(self):
        ds = sample_dataset(DatasetSpec(n=5, k=3, alpha=1.0, seed=0))
        with pytest.raises(InvalidArgumentError):
            random_partition(ds, 0)
        with pytest.raises(InvalidArgumentError):
            random_partition(ds, 6)

    def test_partition_property(self):
        ds = sample_dataset(DatasetSpec(n=33, k=3, alpha=1.0, seed=0))
        c = random_partition(ds, 4, seed=0)
        assert sorted(c.doc_ids()) == sorted(d.doc_id for d in ds)
