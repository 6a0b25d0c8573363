"""Input validation helpers shared across the package."""
from __future__ import annotations

import numpy as np


class InputDataError(ValueError):
    """Raised when an input file or array violates the data contract."""


def check_fraction(value, name: str) -> float:
    """Validate a scalar that must lie in [0, 1] and return it as float."""
    x = float(value)
    if not np.isfinite(x) or x < 0.0 or x > 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return x


def check_probability(value, name: str = "p") -> float:
    return check_fraction(value, name)


def check_threshold_vector(values, n: int) -> np.ndarray:
    """Validate a per-node threshold vector: length n, finite, within [0, 1]."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise ValueError(f"threshold vector must have shape ({n},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("threshold vector contains non-finite entries")
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("threshold values must lie in [0, 1]")
    return arr


def check_seed_indices(seeds, n: int) -> np.ndarray:
    """Normalize a seed collection to sorted unique dense indices in [0, n)."""
    arr = np.asarray(sorted(seeds) if isinstance(seeds, (set, frozenset)) else seeds,
                     dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError(f"seed set must be one-dimensional, got shape {arr.shape}")
    if arr.size:
        if arr.min() < 0 or arr.max() >= n:
            raise ValueError(f"seed indices must lie in [0, {n}), got range "
                             f"[{arr.min()}, {arr.max()}]")
        arr = np.unique(arr)
    return arr


def check_graph(graph):
    """Validate that the argument is a Graph instance (estimator input check)."""
    from .graph import Graph

    if not isinstance(graph, Graph):
        raise TypeError(f"expected a Graph instance, got {type(graph).__name__}")
    return graph
