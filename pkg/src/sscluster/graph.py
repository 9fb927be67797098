"""Immutable sparse undirected graphs and bi-adjacency extraction.

Graphs are stored once in a compressed per-node layout (``indptr`` /
``indices``, neighbor lists sorted ascending). Node ids are dense 0-based
integers; external edge lists with sparse ids go through a relabeling pass
that emits an id map alongside.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True)
class SparseGraph:
    """Undirected simple graph in compressed adjacency layout.

    Invariants: symmetric (j in neighbors(i) iff i in neighbors(j)), no
    self-loops, neighbor lists sorted ascending without duplicates.
    ``n_edges`` counts each undirected edge once.
    """

    n_nodes: int
    indptr: np.ndarray
    indices: np.ndarray
    n_edges: int
    n_self_loops_dropped: int = 0

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    def has_edge(self, i: int, j: int) -> bool:
        nbrs = self.neighbors(i)
        pos = np.searchsorted(nbrs, j)
        return pos < len(nbrs) and nbrs[pos] == j

    def to_csr(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix(
            (data, self.indices, self.indptr), shape=(self.n_nodes, self.n_nodes)
        )


@dataclass(frozen=True)
class BiAdjacency:
    """N x n slice of an adjacency matrix keeping only sampled columns.

    Column j holds the (sorted) row indices of the nonzero entries of
    column ``sample_ids[j]`` of the full adjacency matrix. Column-wise
    storage keeps Gram accumulation cache-friendly.
    """

    n_rows: int
    n_cols: int
    sample_ids: np.ndarray
    col_indptr: np.ndarray
    row_indices: np.ndarray

    def column(self, j: int) -> np.ndarray:
        return self.row_indices[self.col_indptr[j]:self.col_indptr[j + 1]]

    def nnz(self) -> int:
        return len(self.row_indices)

    def to_csc(self) -> sp.csc_matrix:
        data = np.ones(len(self.row_indices), dtype=np.float64)
        return sp.csc_matrix(
            (data, self.row_indices, self.col_indptr),
            shape=(self.n_rows, self.n_cols),
        )


def from_edge_list(pairs, n_nodes: int) -> SparseGraph:
    """Build a SparseGraph from raw (u, v) pairs.

    Pairs may repeat, appear in either orientation, or be self-loops; the
    result is deduplicated and symmetrized, self-loops dropped (counted in
    ``n_self_loops_dropped``). Node ids must lie in [0, n_nodes).
    """
    if n_nodes < 0:
        raise ValueError(f"n_nodes must be nonnegative, got {n_nodes}")
    arr = np.asarray(pairs, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edge list must be a sequence of (u, v) pairs")
    if arr.size and (arr.min() < 0 or arr.max() >= n_nodes):
        raise ValueError("node id out of range [0, n_nodes)")

    loops = arr[:, 0] == arr[:, 1]
    n_loops = int(np.count_nonzero(loops))
    arr = arr[~loops]

    # Symmetrize, then dedupe on a packed (i, j) key.
    both = np.concatenate([arr, arr[:, ::-1]], axis=0)
    if both.size:
        key = both[:, 0] * n_nodes + both[:, 1]
        key = np.unique(key)
        rows = key // n_nodes
        cols = key % n_nodes
    else:
        rows = cols = np.empty(0, dtype=np.int64)

    counts = np.bincount(rows, minlength=n_nodes)
    indptr = np.zeros(n_nodes + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    # np.unique sorted the packed keys, so cols are already sorted per row.
    return SparseGraph(
        n_nodes=n_nodes,
        indptr=indptr,
        indices=cols,
        n_edges=len(cols) // 2,
        n_self_loops_dropped=n_loops,
    )


def degrees(g: SparseGraph) -> np.ndarray:
    """Per-node degree d_i (length N, int64)."""
    return np.diff(g.indptr)


def bi_adjacency(g: SparseGraph, sample) -> BiAdjacency:
    """Extract the N x |sample| bi-adjacency slice for an ordered sample.

    Column j equals column sample[j] of the full adjacency matrix
    (by symmetry, the neighbor list of sample[j]).
    """
    ids = np.asarray(sample, dtype=np.int64)
    if ids.ndim != 1 or ids.size == 0:
        raise ValueError("sample must be a nonempty 1-d sequence of node ids")
    if ids.min() < 0 or ids.max() >= g.n_nodes:
        raise ValueError("sample id out of range [0, N)")
    if len(np.unique(ids)) != len(ids):
        raise ValueError("sample ids must be distinct")

    lengths = g.indptr[ids + 1] - g.indptr[ids]
    col_indptr = np.zeros(len(ids) + 1, dtype=np.int64)
    np.cumsum(lengths, out=col_indptr[1:])
    row_indices = np.empty(col_indptr[-1], dtype=np.int64)
    for j, s in enumerate(ids):
        row_indices[col_indptr[j]:col_indptr[j + 1]] = g.neighbors(s)
    return BiAdjacency(
        n_rows=g.n_nodes,
        n_cols=len(ids),
        sample_ids=ids.copy(),
        col_indptr=col_indptr,
        row_indices=row_indices,
    )


def density(g: SparseGraph) -> float:
    """Edge density |E| / C(N, 2)."""
    if g.n_nodes < 2:
        raise ValueError("density requires at least 2 nodes")
    return g.n_edges / (g.n_nodes * (g.n_nodes - 1) / 2)


# ---------------------------------------------------------------------------
# Edge-list files
#
# Format: one edge per line, two whitespace-separated integer ids; lines
# starting with '#' and blank lines are ignored. Relabel map files carry
# "external_id internal_id" per line.
# ---------------------------------------------------------------------------

def read_edge_list(path) -> np.ndarray:
    """Read raw (u, v) id pairs from an edge-list file."""
    pairs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: expected two ids, got {line!r}")
            pairs.append((int(parts[0]), int(parts[1])))
    arr = np.asarray(pairs, dtype=np.int64)
    return arr.reshape(-1, 2)


def write_edge_list(g: SparseGraph, path) -> None:
    """Write each undirected edge once as "u v" with u < v."""
    with open(path, "w") as fh:
        for i in range(g.n_nodes):
            nbrs = g.neighbors(i)
            for j in nbrs[nbrs > i]:
                fh.write(f"{i} {j}\n")


def relabel_pairs(pairs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map arbitrary integer ids onto dense 0-based ids.

    Returns (relabeled pairs, external id of each internal id). External
    ids are assigned internal ids in ascending order.
    """
    ext = np.unique(pairs)
    relabeled = np.searchsorted(ext, pairs)
    return relabeled, ext


def write_relabel_map(ext_ids: np.ndarray, path) -> None:
    with open(path, "w") as fh:
        for internal, external in enumerate(ext_ids):
            fh.write(f"{external} {internal}\n")


def graph_from_file(path, n_nodes: int | None = None) -> tuple[SparseGraph, np.ndarray | None]:
    """Load an edge-list file, relabeling sparse external ids if needed.

    Returns (graph, ext_ids) where ext_ids[i] is the external id of
    internal node i, or None when the file's ids were used directly.
    Passing ``n_nodes`` pins the node count (preserving trailing isolated
    nodes) and disables relabeling.
    """
    pairs = read_edge_list(path)
    if pairs.size == 0 and n_nodes is None:
        raise ValueError(f"{path}: no edges found")
    if n_nodes is not None:
        return from_edge_list(pairs, n_nodes), None
    lo, hi = pairs.min(), pairs.max()
    n_distinct = len(np.unique(pairs))
    if lo == 0 and n_distinct == hi + 1:
        return from_edge_list(pairs, int(hi) + 1), None
    relabeled, ext = relabel_pairs(pairs)
    return from_edge_list(relabeled, len(ext)), ext
