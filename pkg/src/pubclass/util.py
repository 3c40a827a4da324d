"""Shared numeric helpers: nearest-rank percentiles, rounding, seed derivation."""

from __future__ import annotations

import hashlib
import math

import numpy as np


def nearest_rank_percentile(sorted_values: np.ndarray, pct: float) -> float:
    """Nearest-rank percentile of a pre-sorted 1-d array.

    The rank is ceil(pct/100 * n), clamped to [1, n], so pct=0 returns the
    minimum and pct=100 the maximum. Exact on integers, no interpolation.
    """
    n = len(sorted_values)
    if n == 0:
        raise ValueError("percentile of empty data")
    if not 0.0 <= pct <= 100.0:
        raise ValueError(f"percentile out of range: {pct}")
    rank = min(max(1, math.ceil(pct / 100.0 * n)), n)
    return sorted_values[rank - 1]


def weighted_nearest_rank_percentile(values: np.ndarray, weights: np.ndarray, pct: float) -> float:
    """Nearest-rank percentile of a weighted distribution.

    Equivalent to expanding each value `weights[i]` times and applying
    :func:`nearest_rank_percentile`, but computed from cumulative weights so
    large multiplicities never get materialized.
    """
    values = np.asarray(values)
    weights = np.asarray(weights, dtype=np.int64)
    if len(values) == 0:
        raise ValueError("percentile of empty data")
    if np.any(weights <= 0):
        raise ValueError("weights must be positive")
    order = np.argsort(values, kind="stable")
    values = values[order]
    cum = np.cumsum(weights[order])
    total = int(cum[-1])
    rank = min(max(1, math.ceil(pct / 100.0 * total)), total)
    idx = int(np.searchsorted(cum, rank, side="left"))
    return values[idx]


def round_half_up(x: float) -> int:
    """Round to nearest integer with ties going away from zero-point-five upward."""
    return int(math.floor(x + 0.5))


def derive_seed(root_seed: int, label: str) -> int:
    """Derive a stream seed from a root seed and a stage label.

    One top-level seed reproduces a whole run; every stage gets an
    independent, stable stream keyed by its name.
    """
    digest = hashlib.sha256(f"{root_seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")
