"""Node subsampling strategies and subsample-size bound calculators.

Two strategies are provided: simple random subsampling (SRS, uniform
without replacement) and degree-corrected subsampling (DCS), which
partitions nodes by a scalar k-means on regularized degrees and then takes
a per-cluster quota of top-degree nodes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .graph import SparseGraph, degrees
from .kmeans import kmeans_1d
from .sbm import validate_labels

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SampleSet:
    """Ordered set of distinct sampled node ids plus the method tag."""

    ids: np.ndarray
    method: str  # "srs" | "dcs"

    @property
    def n(self) -> int:
        return len(self.ids)


def srs(N: int, n: int, rng: np.random.Generator) -> SampleSet:
    """Uniform sample of n distinct nodes out of N (no silent clamping)."""
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    ids = rng.choice(N, size=n, replace=False).astype(np.int64)
    return SampleSet(ids=ids, method="srs")


def regularized_degrees(g: SparseGraph) -> np.ndarray:
    """Degree sequence scaled by the node count: f_i = d_i / N."""
    return degrees(g) / g.n_nodes


def cluster_quotas(sizes: np.ndarray, n: int) -> np.ndarray:
    """Proportional quotas floor(n * size_k / N) with largest-remainder fixup.

    Remaining slots go one each to clusters by largest fractional part,
    ties broken by larger cluster then lower cluster index, so the quotas
    always sum to exactly n.
    """
    sizes = np.asarray(sizes, dtype=np.int64)
    N = int(sizes.sum())
    if not 0 <= n <= N:
        raise ValueError(f"need 0 <= n <= sum(sizes), got n={n}")
    exact = n * sizes / N
    quotas = np.floor(exact).astype(np.int64)
    remainder = n - int(quotas.sum())
    if remainder:
        frac = exact - quotas
        order = np.lexsort((np.arange(len(sizes)), -sizes, -frac))
        quotas[order[:remainder]] += 1
    return quotas


def dcs(g: SparseGraph, n: int, K: int,
        rng: np.random.Generator | None = None) -> SampleSet:
    """Degree-corrected subsampling.

    Partitions nodes by scalar k-means on the regularized degrees, sorts
    each cluster by degree descending (ties by ascending node id), and
    takes a proportional quota of top-degree nodes per cluster. The scalar
    k-means is quantile-initialized and deterministic, so ``rng`` is
    accepted for interface symmetry but unused.
    """
    N = g.n_nodes
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    if not 1 <= K <= N:
        raise ValueError(f"need 1 <= K <= N, got K={K}, N={N}")

    f = regularized_degrees(g)
    part = kmeans_1d(f, K)
    labels = part.labels
    counts = np.bincount(labels, minlength=K + 1)[1:]
    nonempty = np.flatnonzero(counts > 0)
    if len(nonempty) < K:
        logger.warning(
            "degree partition has %d empty clusters; quotas use the "
            "%d nonempty ones", K - len(nonempty), len(nonempty)
        )
    quotas = cluster_quotas(counts[nonempty], n)

    d = degrees(g)
    picks = []
    for q, k in zip(quotas, nonempty):
        if q == 0:
            continue
        members = np.flatnonzero(labels == k + 1)
        order = np.lexsort((members, -d[members]))
        picks.append(members[order[:q]])
    ids = np.concatenate(picks)
    return SampleSet(ids=ids, method="dcs")


def srs_min_size(K: int, alpha: float, eps: float) -> int:
    """Smallest with-replacement draw count guaranteeing full community
    coverage with probability at least 1 - eps.

    alpha is the smallest community fraction. A single community is always
    covered by one draw.
    """
    if not 0 < eps < 1:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if not 0 < alpha <= 1 / K:
        raise ValueError(f"alpha must be in (0, 1/K], got {alpha} for K={K}")
    if K == 1:
        return 1
    return max(1, math.ceil(math.log(K / eps) / math.log(1.0 / (1.0 - alpha))))


def dcs_min_size(N: int, eps: float) -> int:
    """Subsample size 64*log(2N/eps), rounded up."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if not 0 < eps < 1:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    return math.ceil(64.0 * math.log(2.0 * N / eps))


def coverage_event(sample: SampleSet, z: np.ndarray, K: int) -> bool:
    """True iff every community label 1..K appears among sampled nodes."""
    z = validate_labels(z, K)
    return len(np.unique(z[sample.ids])) == K


def write_sample(sample: SampleSet, path) -> None:
    """Write one sampled node id per line."""
    with open(path, "w") as fh:
        for i in sample.ids:
            fh.write(f"{int(i)}\n")
