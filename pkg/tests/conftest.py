import sys
from pathlib import Path

import numpy as np
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).resolve().parent))


def simplex_vectors(min_dim=2, max_dim=12, allow_zero=False):
    """Strategy for probability vectors on the simplex."""
    floats = st.floats(
        min_value=0.0 if allow_zero else 1e-6,
        max_value=1.0,
        allow_nan=False,
        allow_infinity=False,
    )

    def normalize(raw):
        arr = np.asarray(raw, dtype=float)
        total = arr.sum()
        if total <= 0:
            arr = np.ones_like(arr)
            total = arr.sum()
        return arr / total

    return st.integers(min_dim, max_dim).flatmap(
        lambda k: st.lists(floats, min_size=k, max_size=k).map(normalize)
    )


def simplex_pair(min_dim=2, max_dim=12, allow_zero=False):
    """Two probability vectors of the same dimension."""
    floats = st.floats(
        min_value=0.0 if allow_zero else 1e-6,
        max_value=1.0,
        allow_nan=False,
        allow_infinity=False,
    )

    def normalize(raw):
        arr = np.asarray(raw, dtype=float)
        total = arr.sum()
        if total <= 0:
            arr = np.ones_like(arr)
            total = arr.sum()
        return arr / total

    def pair_of(k):
        vec = st.lists(floats, min_size=k, max_size=k).map(normalize)
        return st.tuples(vec, vec)

    return st.integers(min_dim, max_dim).flatmap(pair_of)


def random_simplex(rng, n, k, alpha=1.0):
    return rng.dirichlet([alpha] * k, size=n)
