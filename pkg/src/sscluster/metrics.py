"""Clustering accuracy: confusion matrices and the misclustered rate.

The misclustered rate is the fraction of label disagreements minimized
over all relabelings of the estimate. It is computed from the confusion
matrix either by brute force over permutations (small K) or by an exact
maximum-trace linear assignment; both routes give identical results.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np
from scipy.optimize import linear_sum_assignment

BRUTE_FORCE_MAX_K = 8


def confusion(zhat: np.ndarray, z: np.ndarray, K: int) -> np.ndarray:
    """K x K counts M[a-1, b-1] = |{i : zhat_i = a, z_i = b}|."""
    zhat = np.asarray(zhat, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    if zhat.shape != z.shape or zhat.ndim != 1:
        raise ValueError("label vectors must be 1-d and equal length")
    for name, v in (("zhat", zhat), ("z", z)):
        if v.size and (v.min() < 1 or v.max() > K):
            raise ValueError(f"{name} labels must lie in 1..{K}")
    m = np.zeros((K, K), dtype=np.int64)
    np.add.at(m, (zhat - 1, z - 1), 1)
    return m


def _best_matches_brute(m: np.ndarray) -> int:
    k = m.shape[0]
    best = 0
    for perm in permutations(range(k)):
        t = int(m[list(perm), range(k)].sum())
        if t > best:
            best = t
    return best


def _best_matches_assignment(m: np.ndarray) -> int:
    rows, cols = linear_sum_assignment(-m)
    return int(m[rows, cols].sum())


def misclustered_rate(zhat: np.ndarray, z: np.ndarray, K: int,
                      method: str = "auto") -> float:
    """Minimum disagreement fraction over all relabelings of zhat.

    ``method`` selects the optimizer: "brute" enumerates all permutations,
    "assignment" solves the equivalent maximum-trace assignment exactly,
    "auto" uses brute force up to K = 8. Estimates using more than K
    labels are handled by zero-padding the confusion matrix to square.
    """
    zhat = np.asarray(zhat, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    if zhat.shape != z.shape or zhat.ndim != 1 or zhat.size == 0:
        raise ValueError("label vectors must be 1-d, nonempty, equal length")
    k_eff = int(max(K, zhat.max(), z.max()))
    if zhat.min() < 1 or z.min() < 1:
        raise ValueError("labels must be >= 1")

    m = confusion(zhat, z, k_eff)
    if method == "auto":
        method = "brute" if k_eff <= BRUTE_FORCE_MAX_K else "assignment"
    if method == "brute":
        best = _best_matches_brute(m)
    elif method == "assignment":
        best = _best_matches_assignment(m)
    else:
        raise ValueError(f"unknown method {method!r}")
    return 1.0 - best / len(z)
