"""Baseline clustering algorithms: K-Means, DBSCAN, and random partition.

These baselines do pairwise work, unlike the key-based algorithms, and every
distance/dissimilarity evaluation is charged to a :class:`ComparisonCounter`
so the comparison budgets are commensurable across algorithms:

* K-Means charges k distance evaluations per point per Lloyd iteration;
* DBSCAN charges n*n evaluations for the neighbourhood scan;
* random partition charges nothing.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from topiclust.clustering import Clustering
from topiclust.distributions import TopicDistribution, dataset_matrix
from topiclust.errors import InvalidArgumentError
from topiclust.similarity import ComparisonCounter, Measure, _js_block


@dataclass(frozen=True)
class KMeansConfig:
    """Lloyd's K-Means. Iteration stops once the largest centroid movement is
    at most ``convergence_tol``; a negative tolerance disables early stopping
    so all ``max_iterations`` rounds run (and are charged)."""

    k: int
    max_iterations: int = 50
    seed: int = 0
    convergence_tol: float = 0.0

    name = "kmeans"

    def check(self) -> None:
        if self.k < 1:
            raise InvalidArgumentError(f"k must be >= 1, got {self.k}")
        if self.max_iterations < 1:
            raise InvalidArgumentError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )

    def params(self) -> dict:
        return {
            "k": self.k,
            "max_iterations": self.max_iterations,
            "seed": self.seed,
            "convergence_tol": self.convergence_tol,
        }


@dataclass(frozen=True)
class DbscanConfig:
    eps: float = 0.1
    min_pts: int = 50

    name = "dbscan"

    def check(self) -> None:
        if not self.eps > 0:
            raise InvalidArgumentError(f"eps must be > 0, got {self.eps}")
        if self.min_pts < 1:
            raise InvalidArgumentError(f"min_pts must be >= 1, got {self.min_pts}")

    def params(self) -> dict:
        return {"eps": self.eps, "min_pts": self.min_pts}


@dataclass(frozen=True)
class RandomConfig:
    m: int
    seed: int = 0

    name = "random"

    def params(self) -> dict:
        return {"m": self.m, "seed": self.seed}


def _groups_from_labels(doc_ids: list[str], labels: np.ndarray) -> dict[str, tuple[str, ...]]:
    """Relabel clusters 0,1,... by first appearance and key groups by that id."""
    order: dict[int, int] = {}
    members: list[list[str]] = []
    for doc, lab in zip(doc_ids, labels):
        lab = int(lab)
        if lab not in order:
            order[lab] = len(members)
            members.append([])
        members[order[lab]].append(doc)
    width = max(1, len(str(max(len(members) - 1, 0))))
    return {f"{i:0{width}d}": tuple(g) for i, g in enumerate(members)}


def _kmeans_pp_seed(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ initial centroids (seeding distances are not charged)."""
    n = x.shape[0]
    centroids = np.empty((k, x.shape[1]))
    centroids[0] = x[rng.integers(n)]
    d2 = ((x - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0:
            centroids[j] = x[rng.integers(n)]
        else:
            centroids[j] = x[rng.choice(n, p=d2 / total)]
        d2 = np.minimum(d2, ((x - centroids[j]) ** 2).sum(axis=1))
    return centroids


def kmeans(
    dataset: list[TopicDistribution],
    config: KMeansConfig,
    counter: ComparisonCounter | None = None,
) -> Clustering:
    """Lloyd iterations with k-means++ seeding, Euclidean on weight vectors."""
    config.check()
    x = dataset_matrix(dataset)
    n = x.shape[0]
    if config.k > n:
        raise InvalidArgumentError(f"k={config.k} exceeds dataset size {n}")
    rng = np.random.default_rng(config.seed)
    centroids = _kmeans_pp_seed(x, config.k, rng)
    labels = np.full(n, -1)
    iterations = 0
    for _ in range(config.max_iterations):
        d2 = ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        if counter is not None:
            counter.add(n * config.k)
        labels = np.argmin(d2, axis=1)
        iterations += 1
        new_centroids = centroids.copy()
        for j in range(config.k):
            mask = labels == j
            if mask.any():
                new_centroids[j] = x[mask].mean(axis=0)
            else:
                # reseed an empty cluster at the point farthest from its centroid
                worst = int(np.argmax(d2[np.arange(n), labels]))
                new_centroids[j] = x[worst]
                labels[worst] = j
        movement = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if movement <= config.convergence_tol:
            break
    params = dict(config.params(), iterations=iterations)
    return Clustering(
        algorithm=config.name,
        params=params,
        groups=_groups_from_labels([d.doc_id for d in dataset], labels),
        assignment_comparisons=n * config.k * iterations,
    )


def _neighbor_lists(
    x: np.ndarray, measure: Measure, eps: float, block: int = 64
) -> list[np.ndarray]:
    """Indices within ``eps`` raw dissimilarity of each point (self included)."""
    measure = Measure(measure)
    n = x.shape[0]
    neighbors: list[np.ndarray] = []
    if measure is Measure.HE:
        roots = np.sqrt(x)
        for lo in range(0, n, block):
            hi = min(lo + block, n)
            d2 = np.clip(1.0 - roots[lo:hi] @ roots.T, 0.0, None)
            d2[np.arange(hi - lo), np.arange(lo, hi)] = 0.0
            for row in np.sqrt(d2):
                neighbors.append(np.nonzero(row <= eps)[0])
    else:
        for lo in range(0, n, block):
            hi = min(lo + block, n)
            d = _js_block(x[lo:hi], x)
            d[np.arange(hi - lo), np.arange(lo, hi)] = 0.0
            for row in d:
                neighbors.append(np.nonzero(row <= eps)[0])
    return neighbors


def dbscan(
    dataset: list[TopicDistribution],
    config: DbscanConfig,
    measure: Measure = Measure.JS,
    counter: ComparisonCounter | None = None,
) -> Clustering:
    """Density clustering over raw JS divergence or Hellinger distance.

    Deterministic: points are scanned in dataset order, and a border point
    joins the first cluster whose expansion reaches it. Noise points become
    singleton groups so downstream pair accounting applies uniformly.
    """
    config.check()
    x = dataset_matrix(dataset)
    n = x.shape[0]
    neighbors = _neighbor_lists(x, measure, config.eps)
    if counter is not None:
        counter.add(n * n)
    core = np.array([len(nb) >= config.min_pts for nb in neighbors])
    labels = np.full(n, -1)
    next_label = 0
    for i in range(n):
        if labels[i] != -1 or not core[i]:
            continue
        labels[i] = next_label
        queue = deque(neighbors[i])
        while queue:
            j = queue.popleft()
            if labels[j] != -1:
                continue
            labels[j] = next_label
            if core[j]:
                queue.extend(neighbors[j])
        next_label += 1
    # noise points become singletons with fresh labels
    for i in range(n):
        if labels[i] == -1:
            labels[i] = next_label
            next_label += 1
    return Clustering(
        algorithm=config.name,
        params=dict(config.params(), measure=Measure(measure).value),
        groups=_groups_from_labels([d.doc_id for d in dataset], labels),
        assignment_comparisons=n * n,
    )


def random_partition(
    dataset: list[TopicDistribution],
    m: int,
    seed: int = 0,
) -> Clustering:
    """Shuffle documents and deal them round-robin into m near-equal groups."""
    n = len(dataset)
    if not 1 <= m <= n:
        raise InvalidArgumentError(f"m must be in [1, {n}], got {m}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    groups: list[list[str]] = [[] for _ in range(m)]
    for pos, idx in enumerate(order):
        groups[pos % m].append(dataset[idx].doc_id)
    width = max(1, len(str(m - 1)))
    return Clustering(
        algorithm="random",
        params={"m": m, "seed": seed},
        groups={f"{i:0{width}d}": tuple(g) for i, g in enumerate(groups)},
        assignment_comparisons=0,
    )
