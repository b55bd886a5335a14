"""Gold standards, threshold estimation, and the cost/effectiveness metrics.

The gold standard for a dataset and measure is the full n x n ordered-pair
similarity record plus a threshold; pairs at or above the threshold count as
"similar". Algorithms are then scored on:

* cost       = (reqSim - minSim) / (totalSim - minSim)
* precision / recall of the intra-cluster ordered pairs against the gold
* effectiveness = (precision^2 + recall^2) / 2
* efficiency    = effectiveness - cost

where reqSim is the number of similarity evaluations the algorithm spends
(cluster assignment plus intra-cluster comparison), minSim the number of
gold-similar pairs and totalSim = n * n. Cost is reported unclamped, so it
can go negative for algorithms that compute fewer similarities than minSim.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from topiclust.baselines import (
    DbscanConfig,
    KMeansConfig,
    RandomConfig,
    dbscan,
    kmeans,
    random_partition,
)
from topiclust.clustering import (
    Clustering,
    CrdcConfig,
    KeyConfig,
    RdcConfig,
    TdcConfig,
    assign_clusters,
    intra_cluster_pair_count,
)
from topiclust.distributions import TopicDistribution, dataset_matrix
from topiclust.errors import (
    InvalidArgumentError,
    MetricUndefinedError,
    ThresholdEstimationError,
)
from topiclust.similarity import ComparisonCounter, Measure, _js_block

AlgorithmConfig = Union[TdcConfig, RdcConfig, CrdcConfig, KMeansConfig, DbscanConfig, RandomConfig]


@dataclass(frozen=True)
class SimilarityHistogram:
    """Similarity values bucketed by their first two decimals."""

    bins: dict[str, int]

    @classmethod
    def from_values(cls, values: np.ndarray) -> "SimilarityHistogram":
        values = np.asarray(values, dtype=float).ravel()
        labels = np.floor(values * 100.0) / 100.0
        keys, counts = np.unique(labels, return_counts=True)
        return cls(bins={f"{k:.2f}": int(c) for k, c in zip(keys, counts)})

    @property
    def total(self) -> int:
        return sum(self.bins.values())

    def centers_and_counts(self) -> tuple[np.ndarray, np.ndarray]:
        """Non-empty bin centers (bin + 0.005) and their frequencies, ascending."""
        items = sorted((float(k), c) for k, c in self.bins.items() if c > 0)
        centers = np.array([k + 0.005 for k, _ in items])
        counts = np.array([c for _, c in items], dtype=float)
        return centers, counts


def estimate_threshold(
    histogram: SimilarityHistogram,
    degree: int = 6,
    step: float = 0.001,
) -> float:
    """Similarity threshold at the global minimum of a fitted polynomial.

    Fits a least-squares polynomial of ``degree`` to (bin center, frequency)
    points and returns the abscissa of its minimum over the observed range,
    located by dense sampling. If the fit is monotone over the range, falls
    back to the lowest-frequency raw bin strictly between the two
    highest-frequency bins.
    """
    centers, counts = histogram.centers_and_counts()
    if centers.size < degree + 1:
        raise ThresholdEstimationError(
            f"need at least {degree + 1} non-empty bins, got {centers.size}"
        )
    coeffs = np.polyfit(centers, counts, degree)
    grid = np.arange(centers[0], centers[-1] + step / 2, step)
    values = np.polyval(coeffs, grid)
    diffs = np.diff(values)
    monotone = bool(np.all(diffs >= 0) or np.all(diffs <= 0))
    if not monotone:
        return float(grid[int(np.argmin(values))])
    # fallback: raw valley between the two dominant bins
    top_two = np.argsort(counts)[-2:]
    lo, hi = sorted(centers[top_two])
    between = (centers > lo) & (centers < hi)
    if not between.any():
        raise ThresholdEstimationError(
            "fitted curve is monotone and no bins lie between the two modes"
        )
    inner = np.nonzero(between)[0]
    return float(centers[inner[int(np.argmin(counts[inner]))]])


@dataclass(frozen=True)
class GoldStandard:
    """Exhaustive ordered-pair similarity verdicts for one dataset + measure."""

    measure: Measure
    threshold: float
    doc_ids: tuple[str, ...]
    similar: np.ndarray  # (n, n) bool, similar[i, j] iff sim(i, j) >= threshold
    histogram: SimilarityHistogram | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.doc_ids)

    @property
    def total_sim(self) -> int:
        return self.n * self.n

    @property
    def min_sim(self) -> int:
        return int(self.similar.sum())

    def similar_pairs(self) -> set[tuple[str, str]]:
        rows, cols = np.nonzero(self.similar)
        return {(self.doc_ids[i], self.doc_ids[j]) for i, j in zip(rows, cols)}


def _similarity_rows(weights: np.ndarray, measure: Measure, lo: int, hi: int) -> np.ndarray:
    if measure is Measure.HE:
        roots = np.sqrt(weights)
        d2 = np.clip(1.0 - roots[lo:hi] @ roots.T, 0.0, None)
        d2[np.arange(hi - lo), np.arange(lo, hi)] = 0.0
        return 1.0 - np.sqrt(d2)
    d = _js_block(weights[lo:hi], weights)
    d[np.arange(hi - lo), np.arange(lo, hi)] = 0.0
    return 10.0 ** (-d)


def gold_similarity_matrix(
    dataset: list[TopicDistribution],
    measure: Measure,
    workers: int = 1,
    block: int = 64,
) -> np.ndarray:
    """Full n x n similarity matrix, optionally parallel over row blocks.

    Each block is computed independently and written into a preallocated
    array, so the result is identical for any worker count.
    """
    measure = Measure(measure)
    weights = dataset_matrix(dataset)
    n = weights.shape[0]
    sims = np.empty((n, n))
    ranges = [(lo, min(lo + block, n)) for lo in range(0, n, block)]
    if workers <= 1:
        for lo, hi in ranges:
            sims[lo:hi] = _similarity_rows(weights, measure, lo, hi)
    else:
        def fill(rng: tuple[int, int]) -> None:
            lo, hi = rng
            sims[lo:hi] = _similarity_rows(weights, measure, lo, hi)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, ranges))
    return sims


def build_gold(
    dataset: list[TopicDistribution],
    measure: Measure,
    threshold: float | str = "auto",
    workers: int = 1,
) -> GoldStandard:
    """Compute all pairwise similarities and mark pairs >= threshold as similar.

    ``threshold="auto"`` estimates the threshold from the two-decimal
    similarity histogram via :func:`estimate_threshold`.
    """
    if not dataset:
        raise InvalidArgumentError("dataset is empty")
    measure = Measure(measure)
    sims = gold_similarity_matrix(dataset, measure, workers=workers)
    histogram = SimilarityHistogram.from_values(sims)
    if threshold == "auto":
        threshold = estimate_threshold(histogram)
    threshold = float(threshold)
    return GoldStandard(
        measure=measure,
        threshold=threshold,
        doc_ids=tuple(d.doc_id for d in dataset),
        similar=sims >= threshold,
        histogram=histogram,
    )


def save_gold(path: str | os.PathLike, gold: GoldStandard) -> None:
    """Persist a gold standard as plain text: header plus sorted pair list."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("#gold v1\n")
        fh.write(f"measure\t{gold.measure.value}\n")
        fh.write(f"threshold\t{gold.threshold!r}\n")
        fh.write("docs\t" + "\t".join(gold.doc_ids) + "\n")
        rows, cols = np.nonzero(gold.similar)
        pairs = sorted((gold.doc_ids[i], gold.doc_ids[j]) for i, j in zip(rows, cols))
        for a, b in pairs:
            fh.write(f"{a}\t{b}\n")


def load_gold(path: str | os.PathLike) -> GoldStandard:
    with open(path, "r", encoding="utf-8") as fh:
        magic = fh.readline().strip()
        if magic != "#gold v1":
            raise InvalidArgumentError(f"not a gold standard file: {path}")
        header: dict[str, str] = {}
        doc_ids: tuple[str, ...] = ()
        for _ in range(3):
            key, _, value = fh.readline().rstrip("\n").partition("\t")
            if key == "docs":
                doc_ids = tuple(value.split("\t"))
            else:
                header[key] = value
        index = {doc: i for i, doc in enumerate(doc_ids)}
        similar = np.zeros((len(doc_ids), len(doc_ids)), dtype=bool)
        for line in fh:
            a, _, b = line.rstrip("\n").partition("\t")
            similar[index[a], index[b]] = True
    return GoldStandard(
        measure=Measure(header["measure"]),
        threshold=float(header["threshold"]),
        doc_ids=doc_ids,
        similar=similar,
    )


def cost(req_sim: int, gold: GoldStandard) -> float:
    """Normalized comparison count; negative when req_sim < minSim (unclamped)."""
    total, minimum = gold.total_sim, gold.min_sim
    if total == minimum:
        raise MetricUndefinedError("cost undefined: totalSim == minSim")
    return (req_sim - minimum) / (total - minimum)


def precision_recall(
    clustering: Clustering,
    gold: GoldStandard,
    counter: ComparisonCounter | None = None,
) -> tuple[float, float]:
    """Precision/recall of intra-cluster ordered pairs against gold pairs.

    Materializing a predicted pair's similarity counts as one comparison, so
    the counter grows by the number of intra-cluster pairs.
    """
    index = {doc: i for i, doc in enumerate(gold.doc_ids)}
    if sorted(clustering.doc_ids()) != sorted(gold.doc_ids):
        raise InvalidArgumentError("clustering does not partition the gold's dataset")
    predicted = 0
    true_positive = 0
    for members in clustering.groups.values():
        idx = np.fromiter((index[doc] for doc in members), dtype=int)
        predicted += idx.size ** 2
        true_positive += int(gold.similar[np.ix_(idx, idx)].sum())
    if counter is not None:
        counter.add(predicted)
    precision = true_positive / predicted if predicted else 0.0
    recall = true_positive / gold.min_sim if gold.min_sim else 0.0
    return precision, recall


def effectiveness(precision: float, recall: float) -> float:
    """Quality score (precision^2 + recall^2) / 2."""
    return (precision ** 2 + recall ** 2) / 2.0


def efficiency(effectiveness_value: float, cost_value: float) -> float:
    """Quality/performance compromise: effectiveness - cost."""
    return effectiveness_value - cost_value


@dataclass(frozen=True)
class EvaluationReport:
    """One algorithm's scores against one gold standard."""

    algorithm: str
    params: dict
    size: int
    measure: Measure
    cluster_count: int
    req_sim: int
    cost: float
    precision: float
    recall: float
    effectiveness: float
    efficiency: float

    CSV_HEADER = "algo,params,size,measure,clusters,req_sim,cost,precision,recall,effectiveness,efficiency"

    def csv_row(self) -> str:
        params = ";".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return ",".join(
            [
                self.algorithm,
                params,
                str(self.size),
                self.measure.value,
                str(self.cluster_count),
                str(self.req_sim),
                f"{self.cost:.6f}",
                f"{self.precision:.6f}",
                f"{self.recall:.6f}",
                f"{self.effectiveness:.6f}",
                f"{self.efficiency:.6f}",
            ]
        )


def run_algorithm(
    dataset: list[TopicDistribution],
    config: AlgorithmConfig,
    measure: Measure = Measure.JS,
    counter: ComparisonCounter | None = None,
) -> Clustering:
    """Dispatch to the clustering algorithm selected by the config type."""
    if isinstance(config, (TdcConfig, RdcConfig, CrdcConfig)):
        return assign_clusters(dataset, config)
    if isinstance(config, KMeansConfig):
        return kmeans(dataset, config, counter)
    if isinstance(config, DbscanConfig):
        return dbscan(dataset, config, measure, counter)
    if isinstance(config, RandomConfig):
        return random_partition(dataset, config.m, config.seed)
    raise InvalidArgumentError(f"unknown algorithm config: {config!r}")


def evaluate(
    dataset: list[TopicDistribution],
    config: AlgorithmConfig,
    measure: Measure,
    gold: GoldStandard,
) -> EvaluationReport:
    """Cluster the dataset and score it against a matching gold standard."""
    measure = Measure(measure)
    if tuple(d.doc_id for d in dataset) != gold.doc_ids:
        raise InvalidArgumentError("dataset does not match the gold standard")
    if measure is not gold.measure:
        raise InvalidArgumentError(
            f"measure {measure.value} does not match gold measure {gold.measure.value}"
        )
    counter = ComparisonCounter()
    clustering = run_algorithm(dataset, config, measure, counter)
    precision, recall = precision_recall(clustering, gold, counter)
    req_sim = clustering.assignment_comparisons + intra_cluster_pair_count(clustering)
    cost_value = cost(req_sim, gold)
    eff = effectiveness(precision, recall)
    return EvaluationReport(
        algorithm=clustering.algorithm,
        params=clustering.params,
        size=gold.n,
        measure=measure,
        cluster_count=clustering.cluster_count,
        req_sim=req_sim,
        cost=cost_value,
        precision=precision,
        recall=recall,
        effectiveness=eff,
        efficiency=efficiency(eff, cost_value),
    )
