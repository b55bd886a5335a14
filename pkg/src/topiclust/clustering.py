"""Linear-time cluster assignment from topic distributions.

Each algorithm maps a single probability vector to a string cluster key, so
assignment never compares documents against each other:

* trend keys: K-1 digits encoding whether each consecutive weight goes up (1),
  down (2), or stays level (0);
* ranking keys: the 1-based indices of the top-n weights, descending;
* cumulative ranking keys: the shortest descending-weight prefix of topic
  indices whose weights sum to at least a threshold w.

Ranking ties are broken by ascending topic index, and the "level" trend digit
uses a small tolerance, since inferred topic weights are floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

import numpy as np

from topiclust.distributions import TopicDistribution
from topiclust.errors import InvalidArgumentError

#: Default tolerance for the "level" digit of trend keys.
DEFAULT_TREND_EPSILON = 1e-9


@dataclass(frozen=True)
class TdcConfig:
    epsilon: float = DEFAULT_TREND_EPSILON

    name = "tdc"

    def key(self, weights: np.ndarray) -> str:
        return tdc_key(weights, self.epsilon)

    def params(self) -> dict:
        return {"epsilon": self.epsilon}


@dataclass(frozen=True)
class RdcConfig:
    top: int = 1

    name = "rdc"

    def key(self, weights: np.ndarray) -> str:
        return rdc_key(weights, self.top)

    def params(self) -> dict:
        return {"top": self.top}


@dataclass(frozen=True)
class CrdcConfig:
    cum_weight: float = 0.9

    name = "crdc"

    def key(self, weights: np.ndarray) -> str:
        return crdc_key(weights, self.cum_weight)

    def params(self) -> dict:
        return {"cum_weight": self.cum_weight}


KeyConfig = Union[TdcConfig, RdcConfig, CrdcConfig]


@dataclass(frozen=True)
class Clustering:
    """A partition of a dataset into groups of document ids.

    ``assignment_comparisons`` counts pairwise similarity evaluations spent
    building the partition; it is 0 for all key-based algorithms.
    """

    algorithm: str
    params: dict
    groups: dict[str, tuple[str, ...]]
    assignment_comparisons: int = 0

    @property
    def cluster_count(self) -> int:
        return len(self.groups)

    def doc_ids(self) -> list[str]:
        return [doc for members in self.groups.values() for doc in members]


def _weights_of(p) -> np.ndarray:
    w = np.asarray(getattr(p, "weights", p), dtype=float)
    if w.ndim != 1 or w.shape[0] < 2:
        raise InvalidArgumentError(f"need a vector of length >= 2, got shape {w.shape}")
    return w


def tdc_key(p, epsilon: float = DEFAULT_TREND_EPSILON) -> str:
    """Trend key: digit i is 1 if w[i] < w[i+1], 2 if w[i] > w[i+1], else 0."""
    w = _weights_of(p)
    diff = w[1:] - w[:-1]
    digits = np.where(diff > epsilon, "1", np.where(diff < -epsilon, "2", "0"))
    return "".join(digits)


def _ranked_indices(w: np.ndarray) -> np.ndarray:
    # stable sort on -w keeps ascending index order among ties
    return np.argsort(-w, kind="stable")


def rdc_key(p, top: int) -> str:
    """Ranking key: 1-based indices of the ``top`` largest weights, descending."""
    w = _weights_of(p)
    if not 1 <= top <= w.shape[0]:
        raise InvalidArgumentError(f"top must be in [1, {w.shape[0]}], got {top}")
    ranked = _ranked_indices(w)[:top]
    return "|".join(str(i + 1) for i in ranked)


def crdc_key(p, cum_weight: float) -> str:
    """Cumulative ranking key: shortest descending-weight prefix summing >= w."""
    w = _weights_of(p)
    if not 0.0 < cum_weight <= 1.0:
        raise InvalidArgumentError(f"cum_weight must be in (0, 1], got {cum_weight}")
    ranked = _ranked_indices(w)
    cumulative = np.cumsum(w[ranked])
    # the full vector sums to ~1 >= w, but guard against float shortfall
    reached = np.nonzero(cumulative >= cum_weight)[0]
    cut = int(reached[0]) if reached.size else w.shape[0] - 1
    return "|".join(str(i + 1) for i in ranked[: cut + 1])


def assign_clusters(dataset: list[TopicDistribution], config: KeyConfig) -> Clustering:
    """Group documents by their cluster key in one pass; no pairwise work."""
    if not dataset:
        raise InvalidArgumentError("dataset is empty")
    dims = {d.dim for d in dataset}
    if len(dims) != 1:
        raise InvalidArgumentError(f"mixed dimensions in dataset: {sorted(dims)}")
    groups: dict[str, list[str]] = {}
    for d in dataset:
        groups.setdefault(config.key(d.weights), []).append(d.doc_id)
    params = dict(config.params(), key_computations=len(dataset))
    return Clustering(
        algorithm=config.name,
        params=params,
        groups={k: tuple(groups[k]) for k in sorted(groups)},
        assignment_comparisons=0,
    )


def intra_cluster_pairs(clustering: Clustering) -> Iterator[tuple[str, str]]:
    """All ordered pairs (self-pairs included) within each group."""
    for members in clustering.groups.values():
        for a in members:
            for b in members:
                yield (a, b)


def intra_cluster_pair_count(clustering: Clustering) -> int:
    """Number of ordered intra-group pairs: sum over groups of |g|^2."""
    return sum(len(members) ** 2 for members in clustering.groups.values())
