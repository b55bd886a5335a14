"""Topic distributions and synthetic Dirichlet dataset generation.

A dataset is a list of :class:`TopicDistribution`: one probability vector of
dimension ``k`` per document. Synthetic datasets are drawn either from a
single symmetric Dirichlet (the "random mixture" regime, where most pairs of
documents are dissimilar) or from a mixture of Dirichlet modes (a cohesive
regime where documents bunch into groups of highly similar vectors).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from topiclust.errors import DatasetFormatError, InvalidArgumentError

# Smallest Dirichlet concentration passed to the sampler; mode base measures
# can contain exact zeros, which numpy rejects.
_MIN_ALPHA = 1e-10

WEIGHT_SUM_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class TopicDistribution:
    """A document id plus its probability vector over topics."""

    doc_id: str
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __eq__(self, other):
        if not isinstance(other, TopicDistribution):
            return NotImplemented
        return self.doc_id == other.doc_id and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash((self.doc_id, self.weights.tobytes()))

    @property
    def dim(self) -> int:
        return int(self.weights.shape[0])


@dataclass(frozen=True)
class Verdict:
    """Outcome of validating a single topic distribution."""

    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(dist: TopicDistribution) -> Verdict:
    """Check the invariants of a topic distribution; report the first violation."""
    w = dist.weights
    if w.ndim != 1 or w.shape[0] < 2:
        return Verdict(False, "dimension must be at least 2")
    if np.any(w < 0):
        i = int(np.argmax(w < 0))
        return Verdict(False, f"negative weight at index {i}: {w[i]!r}")
    total = float(w.sum())
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        return Verdict(False, f"weights sum to {total!r}, not 1")
    return Verdict(True)


@dataclass(frozen=True)
class HyperParams:
    """Topic-model hyper-parameters derived from the corpus size heuristic."""

    k: int
    alpha: float
    beta: float = 0.01


def suggest_hyperparams(n: int) -> HyperParams:
    """Heuristic hyper-parameters for a corpus of ``n`` documents.

    k = floor(2 * sqrt(n / 2)), alpha = 50 / k, beta = 0.01.
    """
    if n < 2:
        raise InvalidArgumentError(f"need at least 2 documents, got {n}")
    k = int(math.floor(2.0 * math.sqrt(n / 2.0)))
    return HyperParams(k=k, alpha=50.0 / k)


@dataclass(frozen=True)
class DatasetSpec:
    """Parameters for one synthetic dataset.

    ``modes == 1`` samples every document from a symmetric Dirichlet(alpha).
    ``modes > 1`` builds one base measure per mode, then each document picks
    a mode uniformly and samples from a Dirichlet centred on its base with
    total concentration ``mode_concentration``. A base measure concentrates
    ~96% of its mass on two randomly chosen topics and spreads the rest as a
    symmetric Dirichlet(alpha) tail, so documents of one mode agree on their
    dominant topics (a cohesive corpus) while their low-weight tails stay
    noisy.
    """

    n: int
    k: int
    alpha: float
    modes: int = 1
    mode_concentration: float = 100.0
    seed: int = 0
    # Recorded for provenance only; word-level distributions are never modelled.
    beta: float = field(default=0.01, compare=True)

    def check(self) -> None:
        if self.n < 1:
            raise InvalidArgumentError(f"n must be >= 1, got {self.n}")
        if self.k < 2:
            raise InvalidArgumentError(f"k must be >= 2, got {self.k}")
        if not self.alpha > 0:
            raise InvalidArgumentError(f"alpha must be > 0, got {self.alpha}")
        if self.modes < 1:
            raise InvalidArgumentError(f"modes must be >= 1, got {self.modes}")
        if self.modes > 1 and not self.mode_concentration > 0:
            raise InvalidArgumentError(
                f"mode_concentration must be > 0, got {self.mode_concentration}"
            )


def sample_dataset(spec: DatasetSpec) -> list[TopicDistribution]:
    """Draw a synthetic dataset. Deterministic for a fixed spec (incl. seed)."""
    spec.check()
    rng = np.random.default_rng(spec.seed)
    if spec.modes == 1:
        weights = rng.dirichlet([spec.alpha] * spec.k, size=spec.n)
    else:
        bases = np.stack([_mode_base(rng, spec.k, spec.alpha) for _ in range(spec.modes)])
        assignments = rng.integers(spec.modes, size=spec.n)
        alphas = np.maximum(bases * spec.mode_concentration, _MIN_ALPHA)
        weights = np.empty((spec.n, spec.k))
        for i, m in enumerate(assignments):
            weights[i] = rng.dirichlet(alphas[m])
    width = max(5, len(str(spec.n - 1)))
    return [
        TopicDistribution(doc_id=f"d{i:0{width}d}", weights=weights[i])
        for i in range(spec.n)
    ]


def _mode_base(rng: np.random.Generator, k: int, alpha: float) -> np.ndarray:
    """One mode's base measure: two dominant topics plus a Dirichlet(alpha) tail.

    The two dominant topics carry ~96% of the mass with a wide margin between
    them, so mode members rank them identically with high probability.
    """
    base = np.zeros(k)
    first, second = rng.choice(k, size=2, replace=False)
    coverage = rng.uniform(0.955, 0.975)
    top = rng.uniform(0.58, 0.66)
    base[first] = top
    base[second] = coverage - top
    rest = np.setdiff1d(np.arange(k), [first, second])
    base[rest] = (1.0 - coverage) * rng.dirichlet([alpha] * (k - 2))
    return base


def dataset_matrix(dataset: list[TopicDistribution]) -> np.ndarray:
    """Stack a dataset into an (n, k) weight matrix, checking uniform dimension."""
    if not dataset:
        raise InvalidArgumentError("dataset is empty")
    dims = {d.dim for d in dataset}
    if len(dims) != 1:
        raise InvalidArgumentError(f"mixed dimensions in dataset: {sorted(dims)}")
    return np.stack([d.weights for d in dataset])


def save_dataset(path: str | os.PathLike, dataset: list[TopicDistribution]) -> None:
    """Write a dataset as JSONL, one {"id", "weights"} object per line.

    json repr of floats is lossless, so load(save(d)) == d bit-exactly.
    """
    with open(path, "w", encoding="utf-8") as fh:
        for d in dataset:
            fh.write(json.dumps({"id": d.doc_id, "weights": d.weights.tolist()}))
            fh.write("\n")


def load_dataset(path: str | os.PathLike) -> list[TopicDistribution]:
    """Read a JSONL dataset. An empty file yields an empty dataset."""
    dataset: list[TopicDistribution] = []
    dim: int | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(f"invalid JSON: {exc.msg}", line=lineno) from exc
            if not isinstance(record, dict) or "id" not in record or "weights" not in record:
                raise DatasetFormatError("record must have 'id' and 'weights'", line=lineno)
            weights = np.asarray(record["weights"], dtype=float)
            if weights.ndim != 1 or weights.shape[0] < 2:
                raise DatasetFormatError(
                    f"weights must be a vector of length >= 2, got shape {weights.shape}",
                    line=lineno,
                )
            if dim is None:
                dim = weights.shape[0]
            elif weights.shape[0] != dim:
                raise DatasetFormatError(
                    f"dimension mismatch: expected {dim} weights, got {weights.shape[0]}",
                    line=lineno,
                )
            dataset.append(TopicDistribution(doc_id=str(record["id"]), weights=weights))
    return dataset
