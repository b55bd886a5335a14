"""Similarity measures between topic distributions.

Two dissimilarities and their similarity transforms:

* Jensen-Shannon divergence, implemented in its two-sided summed form
  ``sum_i p_i ln(2 p_i / (p_i + q_i)) + sum_i q_i ln(2 q_i / (q_i + p_i))``
  (twice the 1/2-weighted textbook definition), with similarity
  ``sim_js = 10 ** (-JS)``.
* Hellinger distance ``(1/sqrt(2)) * sqrt(sum_i (sqrt(p_i) - sqrt(q_i))^2)``,
  with similarity ``sim_he = 1 - He``.

Zero coordinates are safe: 0 * log(0/x) contributes 0. Logarithms are natural
(see LOG_BASE); any fixed base only rescales the divergence, and the
data-driven threshold estimation downstream adapts to the scale.
"""

from __future__ import annotations

import math
import threading
from enum import Enum

import numpy as np

from topiclust.errors import InvalidArgumentError

#: Base of the logarithm used in the Jensen-Shannon divergence.
LOG_BASE = math.e


class Measure(str, Enum):
    """Which similarity transform to use for pairwise document comparison."""

    JS = "js"
    HE = "he"


class ComparisonCounter:
    """Monotone counter of similarity evaluations, safe for concurrent use."""

    __slots__ = ("_count", "_lock")

    def __init__(self, start: int = 0):
        self._count = int(start)
        self._lock = threading.Lock()

    @property
    def count(self) -> int:
        return self._count

    def increment(self) -> None:
        self.add(1)

    def add(self, n: int) -> None:
        if n < 0:
            raise InvalidArgumentError("counter can only grow")
        with self._lock:
            self._count += n

    def __repr__(self) -> str:
        return f"ComparisonCounter({self._count})"


def _as_pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    pw = np.asarray(getattr(p, "weights", p), dtype=float)
    qw = np.asarray(getattr(q, "weights", q), dtype=float)
    if pw.shape != qw.shape:
        raise InvalidArgumentError(
            f"dimension mismatch: {pw.shape[0]} vs {qw.shape[0]}"
        )
    return pw, qw


def js_divergence(p, q) -> float:
    """Jensen-Shannon divergence in its two-sided summed form (see module doc)."""
    pw, qw = _as_pair(p, q)
    m = pw + qw
    with np.errstate(divide="ignore", invalid="ignore"):
        left = np.where(pw > 0, pw * np.log(2.0 * pw / m), 0.0)
        right = np.where(qw > 0, qw * np.log(2.0 * qw / m), 0.0)
    return float(left.sum() + right.sum())


def sim_js(p, q) -> float:
    """Similarity transform of the JS divergence: 10 ** (-JS(p, q))."""
    return 10.0 ** (-js_divergence(p, q))


def hellinger(p, q) -> float:
    """Hellinger distance in [0, 1]; 0 iff p == q, 1 iff supports are disjoint."""
    pw, qw = _as_pair(p, q)
    return float(np.sqrt(np.sum((np.sqrt(pw) - np.sqrt(qw)) ** 2)) / math.sqrt(2.0))


def sim_he(p, q) -> float:
    """Similarity transform of the Hellinger distance: 1 - He(p, q)."""
    return 1.0 - hellinger(p, q)


def similarity(measure: Measure, p, q, counter: ComparisonCounter) -> float:
    """Dispatch to the chosen similarity and count one evaluation."""
    measure = Measure(measure)
    value = sim_js(p, q) if measure is Measure.JS else sim_he(p, q)
    counter.increment()
    return value


def dissimilarity_matrix(
    weights: np.ndarray,
    measure: Measure,
    block: int = 64,
) -> np.ndarray:
    """All-pairs raw dissimilarity (JS divergence or Hellinger distance).

    JS is computed in row blocks to bound the (block, n, k) broadcast; the
    Hellinger matrix comes from the Gram matrix of sqrt-weights, using
    ||sqrt(p)||^2 = 1 for probability vectors.
    """
    measure = Measure(measure)
    weights = np.asarray(weights, dtype=float)
    n = weights.shape[0]
    if measure is Measure.HE:
        roots = np.sqrt(weights)
        gram = roots @ roots.T
        d2 = np.clip(1.0 - gram, 0.0, None)
        np.fill_diagonal(d2, 0.0)
        return np.sqrt(d2)
    out = np.empty((n, n))
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        out[lo:hi] = _js_block(weights[lo:hi], weights)
    np.fill_diagonal(out, 0.0)
    return out


def _js_block(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """JS divergence of every row of ``a`` against every row of ``b``."""
    pa = a[:, None, :]
    qb = b[None, :, :]
    m = pa + qb
    with np.errstate(divide="ignore", invalid="ignore"):
        left = np.where(pa > 0, pa * np.log(2.0 * pa / m), 0.0)
        right = np.where(qb > 0, qb * np.log(2.0 * qb / m), 0.0)
    return (left + right).sum(axis=2)


def similarity_matrix(
    weights: np.ndarray,
    measure: Measure,
    counter: ComparisonCounter | None = None,
    block: int = 64,
) -> np.ndarray:
    """All-pairs similarity under the chosen measure; counts n*n evaluations."""
    measure = Measure(measure)
    d = dissimilarity_matrix(weights, measure, block=block)
    sims = 10.0 ** (-d) if measure is Measure.JS else 1.0 - d
    if counter is not None:
        counter.add(sims.shape[0] * sims.shape[1])
    return sims
