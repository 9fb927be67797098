"""Subsampled Laplacian, spectral embeddings, and eigengap model selection.

The subsampled pipeline normalizes an N x n bi-adjacency slice by row and
column degrees, eigendecomposes its n x n Gram matrix, and lifts the right
eigenvectors back to embedding coordinates for every node. A full-network
normalized Laplacian baseline is provided for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg

from .errors import DegenerateInputError, ResourceLimitError
from .graph import BiAdjacency, SparseGraph, degrees

GRAM_DENSE_GUARD = 4000
FULL_DENSE_GUARD = 5000
SYMMETRY_ATOL = 1e-8
RANK_TOL = 1e-10


@dataclass(frozen=True)
class SubsampledLaplacian:
    """Degree-normalized bi-adjacency L = D_r^{-1/2} A D_c^{-1/2}.

    Rows or columns with zero degree are left identically zero (the
    0^{-1/2} -> 0 convention); their counts are reported. All singular
    values lie in [0, 1].
    """

    matrix: sp.csc_matrix | np.ndarray  # N x n
    row_degrees: np.ndarray             # length N
    col_degrees: np.ndarray             # length n
    n_zero_rows: int
    n_zero_cols: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


@dataclass(frozen=True)
class EigenSpectrum:
    """Descending eigenvalues of a Gram (PSD) matrix, tiny negatives clipped."""

    values: np.ndarray

    @classmethod
    def from_psd_eigenvalues(cls, values: np.ndarray) -> "EigenSpectrum":
        values = np.asarray(values, dtype=np.float64)
        if np.any(np.diff(values) > 0):
            raise ValueError("eigenvalues must be sorted descending")
        if values.size and values.min() < -1e-10 * max(1.0, abs(values).max()):
            raise ValueError("matrix is not PSD: eigenvalue below -1e-10")
        return cls(values=np.maximum(values, 0.0))

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Embedding:
    """N x K spectral coordinates plus the eigenvalues that produced them.

    Columns whose eigenvalue falls below the pseudo-inverse tolerance are
    identically zero; ``rank`` counts the columns above it.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    rank: int
    rank_deficient: bool
    n_zero_rows: int = 0


def normalize_bi_adjacency(mat) -> SubsampledLaplacian:
    """Degree-normalize any nonnegative N x n matrix (sparse or dense)."""
    if sp.issparse(mat):
        mat = mat.tocsc().astype(np.float64)
        row_deg = np.asarray(mat.sum(axis=1)).ravel()
        col_deg = np.asarray(mat.sum(axis=0)).ravel()
    else:
        mat = np.asarray(mat, dtype=np.float64)
        row_deg = mat.sum(axis=1)
        col_deg = mat.sum(axis=0)
    if row_deg.sum() == 0:
        raise DegenerateInputError("bi-adjacency is all zero; nothing to normalize")

    with np.errstate(divide="ignore"):
        r = np.where(row_deg > 0, 1.0 / np.sqrt(row_deg), 0.0)
        c = np.where(col_deg > 0, 1.0 / np.sqrt(col_deg), 0.0)
    if sp.issparse(mat):
        norm = sp.diags(r) @ mat @ sp.diags(c)
        norm = norm.tocsc()
    else:
        norm = r[:, None] * mat * c[None, :]
    return SubsampledLaplacian(
        matrix=norm,
        row_degrees=row_deg,
        col_degrees=col_deg,
        n_zero_rows=int((row_deg == 0).sum()),
        n_zero_cols=int((col_deg == 0).sum()),
    )


def subsampled_laplacian(biadj: BiAdjacency) -> SubsampledLaplacian:
    """Build L = D_r^{-1/2} A^s D_c^{-1/2} from a 0/1 bi-adjacency."""
    return normalize_bi_adjacency(biadj.to_csc())


def gram(ls: SubsampledLaplacian, dense_guard: int = GRAM_DENSE_GUARD) -> np.ndarray:
    """Dense n x n Gram matrix L^T L, accumulated column-major."""
    n = ls.shape[1]
    if n > dense_guard:
        raise ResourceLimitError(
            f"Gram matrix would be {n}x{n} dense; guard is {dense_guard}"
        )
    m = ls.matrix
    if sp.issparse(m):
        return np.asarray((m.T @ m).todense())
    return m.T @ m


def symmetric_eig(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition of a symmetric matrix, descending order.

    Returns (eigenvalues, eigenvectors) with eigenvector columns matching
    the eigenvalue order. Values are returned unclipped so that
    reconstruction M = V diag(w) V^T holds for indefinite inputs too.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("input must be a square matrix")
    if not np.allclose(m, m.T, rtol=0, atol=SYMMETRY_ATOL):
        raise ValueError(f"matrix is not symmetric within {SYMMETRY_ATOL}")
    w, v = scipy.linalg.eigh((m + m.T) / 2.0)
    return w[::-1].copy(), v[:, ::-1].copy()


def subsampled_spectrum(ls: SubsampledLaplacian,
                        dense_guard: int = GRAM_DENSE_GUARD) -> EigenSpectrum:
    """Full descending spectrum of the Gram matrix L^T L."""
    w, _ = symmetric_eig(gram(ls, dense_guard))
    return EigenSpectrum.from_psd_eigenvalues(w)


def embed(ls: SubsampledLaplacian, K: int, tol: float = RANK_TOL,
          dense_guard: int = GRAM_DENSE_GUARD) -> Embedding:
    """Top-K embedding U = L V_K pinv(Lambda_K^{1/2}).

    V_K and Lambda_K come from the Gram matrix of L; eigenvalues at or
    below tol * lambda_1 are treated as zero in the pseudo-inverse, which
    zeroes the corresponding embedding columns.
    """
    n = ls.shape[1]
    if not 1 <= K <= n:
        raise ValueError(f"need 1 <= K <= n, got K={K}, n={n}")
    g = gram(ls, dense_guard)
    w, v = symmetric_eig(g)
    spec = EigenSpectrum.from_psd_eigenvalues(w)
    top = spec.values[:K]
    vk = v[:, :K]

    cutoff = tol * top[0] if top[0] > 0 else 0.0
    keep = top > cutoff
    with np.errstate(divide="ignore"):
        inv_sqrt = np.where(keep, 1.0 / np.sqrt(np.where(keep, top, 1.0)), 0.0)
    m = ls.matrix
    u = np.asarray(m @ (vk * inv_sqrt[None, :]))
    rank = int(keep.sum())
    return Embedding(
        matrix=u,
        eigenvalues=top,
        rank=rank,
        rank_deficient=rank < K,
        n_zero_rows=ls.n_zero_rows,
    )


def full_laplacian(g: SparseGraph) -> sp.csr_matrix:
    """Symmetric normalized Laplacian D^{-1/2} A D^{-1/2} (sparse N x N)."""
    d = degrees(g).astype(np.float64)
    with np.errstate(divide="ignore"):
        dinv = np.where(d > 0, 1.0 / np.sqrt(d), 0.0)
    a = g.to_csr()
    return (sp.diags(dinv) @ a @ sp.diags(dinv)).tocsr()


def full_embed(L, K: int, dense_guard: int = FULL_DENSE_GUARD,
               iterative: bool = False) -> Embedding:
    """Top-K eigenvectors of the full Laplacian by algebraic eigenvalue.

    Dense eigendecomposition below the guard; above it an iterative
    symmetric solver is used when ``iterative`` is set, otherwise the call
    refuses the dense blow-up.
    """
    N = L.shape[0]
    if not 1 <= K <= N:
        raise ValueError(f"need 1 <= K <= N, got K={K}, N={N}")
    if N <= dense_guard:
        dense = np.asarray(L.todense()) if sp.issparse(L) else np.asarray(L)
        w, v = symmetric_eig(dense)
        top_w, top_v = w[:K], v[:, :K]
    elif iterative:
        w, v = sp.linalg.eigsh(L.astype(np.float64), k=K, which="LA")
        order = np.argsort(w)[::-1]
        top_w, top_v = w[order], v[:, order]
    else:
        raise ResourceLimitError(
            f"N={N} exceeds dense guard {dense_guard}; enable the iterative solver"
        )
    return Embedding(
        matrix=top_v,
        eigenvalues=top_w,
        rank=K,
        rank_deficient=False,
        n_zero_rows=0,
    )


def select_k(spectrum: EigenSpectrum, k_max: int | None = None) -> int:
    """Eigengap choice of the community count: argmax_k lambda_k - lambda_{k+1}.

    Ties break toward the smallest k; the search starts at k = 1 and runs
    through k_max (default min(len - 1, 50)).
    """
    vals = spectrum.values
    if len(vals) < 2:
        raise ValueError("spectrum must have at least 2 eigenvalues")
    if k_max is None:
        k_max = min(len(vals) - 1, 50)
    if not 1 <= k_max < len(vals):
        raise ValueError(f"need 1 <= k_max < {len(vals)}, got {k_max}")
    gaps = vals[:k_max] - vals[1:k_max + 1]
    return int(np.argmax(gaps)) + 1


# ---------------------------------------------------------------------------
# Comparison helpers: sign and rotation of embedding columns are not
# identifiable, so distances are measured on subspaces or after an
# orthogonal (Procrustes) alignment, never entrywise.
# ---------------------------------------------------------------------------

def projection_distance(a: np.ndarray, b: np.ndarray) -> float:
    """|| a a^T - b b^T ||_F without forming the N x N projectors."""
    aa = a.T @ a
    bb = b.T @ b
    ab = a.T @ b
    sq = (aa * aa).sum() + (bb * bb).sum() - 2.0 * (ab * ab).sum()
    return float(np.sqrt(max(sq, 0.0)))


def procrustes_distance(a: np.ndarray, b: np.ndarray) -> float:
    """min over orthogonal O of || a - b O ||_F."""
    p, _, q = np.linalg.svd(b.T @ a)
    o = p @ q
    return float(np.linalg.norm(a - b @ o))


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def write_embedding_csv(emb: Embedding, path) -> None:
    """Rows "node_id,x_1,...,x_K"."""
    with open(path, "w") as fh:
        k = emb.matrix.shape[1]
        fh.write("node," + ",".join(f"x{j + 1}" for j in range(k)) + "\n")
        for i, row in enumerate(emb.matrix):
            fh.write(f"{i}," + ",".join(f"{x:.12g}" for x in row) + "\n")


def write_spectrum(spectrum: EigenSpectrum, path) -> None:
    """One eigenvalue per line, descending."""
    with open(path, "w") as fh:
        for v in spectrum.values:
            fh.write(f"{v:.12g}\n")
