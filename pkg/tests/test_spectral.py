import numpy as np
import pytest
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from sscluster.errors import DegenerateInputError, ResourceLimitError
from sscluster.graph import bi_adjacency, from_edge_list
from sscluster.kmeans import kmeans
from sscluster.metrics import misclustered_rate
from sscluster.sbm import (
    block_matrix,
    generate_adjacency,
    population_bi_adjacency,
    sample_memberships,
)
from sscluster.sampling import srs
from sscluster.spectral import (
    EigenSpectrum,
    embed,
    full_embed,
    full_laplacian,
    gram,
    normalize_bi_adjacency,
    procrustes_distance,
    projection_distance,
    select_k,
    subsampled_laplacian,
    subsampled_spectrum,
    symmetric_eig,
    write_embedding_csv,
    write_spectrum,
)


def path4():
    return from_edge_list([(0, 1), (1, 2), (2, 3)], 4)


class TestSubsampledLaplacian:
    def test_path_hand_computation(self):
        # Path 0-1-2-3 with sample {1, 2}: every row touches the sample
        # once, both columns have degree 2, so nonzeros are 1/sqrt(2).
        g = path4()
        ls = subsampled_laplacian(bi_adjacency(g, [1, 2]))
        assert np.array_equal(ls.row_degrees, [1, 1, 1, 1])
        assert np.array_equal(ls.col_degrees, [2, 2])
        dense = ls.matrix.toarray()
        expected = np.array([[1, 0], [0, 1], [1, 0], [0, 1]]) / np.sqrt(2)
        assert np.allclose(dense, expected)
        assert ls.n_zero_rows == 0 and ls.n_zero_cols == 0

    def test_full_sample_equals_full_laplacian(self):
        rng = np.random.default_rng(0)
        z = sample_memberships((0.5, 0.5), 40, rng)
        g = generate_adjacency(z, block_matrix(0.5, 0.2, 2), rng)
        ls = subsampled_laplacian(bi_adjacency(g, list(range(40))))
        full = full_laplacian(g)
        assert np.allclose(ls.matrix.toarray(), full.toarray())

    def test_isolate_gives_zero_row(self):
        g = from_edge_list([(0, 1), (1, 2)], 4)  # node 3 isolated
        ls = subsampled_laplacian(bi_adjacency(g, [0, 1]))
        assert ls.n_zero_rows >= 1
        assert np.all(ls.matrix.toarray()[3] == 0)

    def test_all_zero_rejected(self):
        g = from_edge_list([(0, 1)], 4)
        with pytest.raises(DegenerateInputError):
            subsampled_laplacian(bi_adjacency(g, [2, 3]))

    def test_singular_values_bounded_by_one(self):
        rng = np.random.default_rng(1)
        for seed in range(5):
            r = np.random.default_rng(seed)
            z = sample_memberships((0.3, 0.7), 60, r)
            g = generate_adjacency(z, block_matrix(0.4, 0.3, 2), r)
            s = srs(60, 15, r)
            ls = subsampled_laplacian(bi_adjacency(g, s.ids))
            smax = np.linalg.svd(ls.matrix.toarray(), compute_uv=False)[0]
            assert smax <= 1 + 1e-10


class TestGram:
    def test_path_example_is_identity(self):
        g = path4()
        ls = subsampled_laplacian(bi_adjacency(g, [1, 2]))
        assert np.allclose(gram(ls), np.eye(2))

    def test_orthonormal_columns_give_identity(self):
        m = np.array([[1.0, 0], [0, 1], [0, 0]])
        ls = normalize_bi_adjacency(m)
        # Unit rows and columns: normalization keeps the matrix as is.
        assert np.allclose(gram(ls), np.eye(2))

    def test_matches_dense_multiply_oracle(self):
        rng = np.random.default_rng(2)
        z = sample_memberships((0.5, 0.5), 50, rng)
        g = generate_adjacency(z, block_matrix(0.6, 0.2, 2), rng)
        s = srs(50, 12, rng)
        ls = subsampled_laplacian(bi_adjacency(g, s.ids))
        dense = ls.matrix.toarray()
        assert np.allclose(gram(ls), dense.T @ dense, atol=1e-12)

    def test_symmetry_tolerance(self):
        rng = np.random.default_rng(3)
        z = sample_memberships((0.5, 0.5), 80, rng)
        g = generate_adjacency(z, block_matrix(0.5, 0.3, 2), rng)
        s = srs(80, 20, rng)
        m = gram(subsampled_laplacian(bi_adjacency(g, s.ids)))
        assert np.abs(m - m.T).max() <= 1e-12

    def test_resource_guard(self):
        m = sp.eye(10, 6, format="csc")
        ls = normalize_bi_adjacency(m)
        with pytest.raises(ResourceLimitError):
            gram(ls, dense_guard=5)


class TestSymmetricEig:
    def test_identity(self):
        w, v = symmetric_eig(np.eye(4))
        assert np.allclose(w, 1.0)
        assert np.allclose(v @ v.T, np.eye(4), atol=1e-12)

    def test_diagonal_ordering(self):
        w, v = symmetric_eig(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(w, [3, 2, 1])
        assert np.allclose(np.abs(v), np.eye(3)[:, [0, 2, 1]], atol=1e-12)

    def test_reconstruction_oracle(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=(20, 20))
        m = (a + a.T) / 2
        w, v = symmetric_eig(m)
        assert np.linalg.norm(m - v @ np.diag(w) @ v.T) <= 1e-8 * np.linalg.norm(m)
        # Residual check per pair and orthonormality.
        for i in range(20):
            assert np.linalg.norm(m @ v[:, i] - w[i] * v[:, i]) <= 1e-8 * np.linalg.norm(m)
        assert np.abs(v.T @ v - np.eye(20)).max() <= 1e-8

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            symmetric_eig(np.array([[0.0, 1.0], [0.5, 0.0]]))


class TestEmbed:
    def test_full_sample_matches_full_sc_subspace(self):
        rng = np.random.default_rng(5)
        z = sample_memberships((1 / 3, 1 / 3, 1 / 3), 90, rng)
        g = generate_adjacency(z, block_matrix(0.5, 0.05, 3), rng)
        ls = subsampled_laplacian(bi_adjacency(g, list(range(90))))
        emb = embed(ls, 3)
        base = full_embed(full_laplacian(g), 3)
        assert projection_distance(emb.matrix, base.matrix) <= 1e-6

    def test_population_input_has_k_distinct_rows(self):
        rng = np.random.default_rng(6)
        z = np.repeat([1, 2, 3], [120, 100, 80])
        B = block_matrix(0.3, 0.1, 3)
        sample = srs(300, 40, rng).ids
        ls = normalize_bi_adjacency(population_bi_adjacency(z, B, sample))
        emb = embed(ls, 3)
        # Rows within a block coincide; rows across blocks stay separated.
        for k in (1, 2, 3):
            rows = emb.matrix[z == k]
            assert np.abs(rows - rows[0]).max() <= 1e-8
        reps = np.stack([emb.matrix[z == k][0] for k in (1, 2, 3)])
        for a in range(3):
            for b in range(a + 1, 3):
                assert np.linalg.norm(reps[a] - reps[b]) >= 1e-3

    def test_population_single_linkage_recovers_blocks(self):
        rng = np.random.default_rng(7)
        z = np.repeat([1, 2, 3], [50, 30, 20])
        B = block_matrix(0.4, 0.15, 3)
        sample = srs(100, 25, rng).ids
        ls = normalize_bi_adjacency(population_bi_adjacency(z, B, sample))
        emb = embed(ls, 3)
        # Single linkage at threshold 1e-6 = connected components of the
        # thresholded distance graph.
        d = np.linalg.norm(emb.matrix[:, None] - emb.matrix[None], axis=2)
        ncomp, comp = connected_components(sp.csr_matrix(d <= 1e-6))
        assert ncomp == 3
        assert misclustered_rate(comp + 1, z, 3) == 0.0

    def test_orthonormal_columns(self):
        rng = np.random.default_rng(8)
        z = sample_memberships((0.5, 0.5), 70, rng)
        g = generate_adjacency(z, block_matrix(0.5, 0.2, 2), rng)
        s = srs(70, 20, rng)
        emb = embed(subsampled_laplacian(bi_adjacency(g, s.ids)), 2)
        gram_u = emb.matrix.T @ emb.matrix
        assert np.allclose(gram_u, np.eye(2), atol=1e-8)

    def test_rank_deficient_pads_with_zeros(self):
        # Duplicate columns only: rank 1, so K=2 leaves a zero column.
        m = np.array([[1.0, 1.0], [1.0, 1.0], [0.0, 0.0]])
        ls = normalize_bi_adjacency(m)
        emb = embed(ls, 2)
        assert emb.rank == 1
        assert emb.rank_deficient
        assert np.all(emb.matrix[:, 1] == 0)

    def test_k_above_n_rejected(self):
        g = path4()
        ls = subsampled_laplacian(bi_adjacency(g, [1, 2]))
        with pytest.raises(ValueError):
            embed(ls, 3)


class TestFullLaplacian:
    def test_k2(self):
        g = from_edge_list([(0, 1)], 2)
        assert np.allclose(full_laplacian(g).toarray(), [[0, 1], [1, 0]])

    def test_complete_graph(self):
        n = 6
        g = from_edge_list([(i, j) for i in range(n) for j in range(i + 1, n)], n)
        lap = full_laplacian(g).toarray()
        expected = (np.ones((n, n)) - np.eye(n)) / (n - 1)
        assert np.allclose(lap, expected)

    def test_empty_graph(self):
        g = from_edge_list([], 4)
        assert np.all(full_laplacian(g).toarray() == 0)

    def test_eigenvalues_in_unit_interval(self):
        rng = np.random.default_rng(9)
        z = sample_memberships((0.5, 0.5), 40, rng)
        g = generate_adjacency(z, block_matrix(0.5, 0.3, 2), rng)
        w, _ = symmetric_eig(full_laplacian(g).toarray())
        assert w.max() <= 1 + 1e-10 and w.min() >= -1 - 1e-10


class TestFullEmbed:
    def test_identity_matrix(self):
        emb = full_embed(sp.eye(5, format="csr"), 3)
        assert np.allclose(emb.eigenvalues, 1.0)

    def test_diagonal(self):
        emb = full_embed(sp.diags([3.0, 1.0, 2.0]).tocsr(), 2)
        assert np.allclose(emb.eigenvalues, [3, 2])
        assert np.allclose(np.abs(emb.matrix), np.eye(3)[:, [0, 2]], atol=1e-12)

    def test_reconstruction_on_graph(self):
        rng = np.random.default_rng(10)
        z = sample_memberships((0.5, 0.5), 50, rng)
        g = generate_adjacency(z, block_matrix(0.6, 0.2, 2), rng)
        lap = full_laplacian(g)
        emb = full_embed(lap, 50)
        rebuilt = emb.matrix @ np.diag(emb.eigenvalues) @ emb.matrix.T
        assert np.linalg.norm(rebuilt - lap.toarray()) <= 1e-8 * np.linalg.norm(lap.toarray())

    def test_iterative_matches_dense_subspace(self):
        rng = np.random.default_rng(11)
        z = sample_memberships((0.5, 0.5), 60, rng)
        g = generate_adjacency(z, block_matrix(0.6, 0.1, 2), rng)
        lap = full_laplacian(g)
        dense = full_embed(lap, 2)
        iterative = full_embed(lap, 2, dense_guard=10, iterative=True)
        assert projection_distance(dense.matrix, iterative.matrix) <= 1e-6

    def test_guard_without_iterative(self):
        with pytest.raises(ResourceLimitError):
            full_embed(sp.eye(100, format="csr"), 2, dense_guard=10)

    def test_k_above_n_rejected(self):
        with pytest.raises(ValueError):
            full_embed(sp.eye(3, format="csr"), 4)


class TestSelectK:
    def test_gap_by_inspection(self):
        spec = EigenSpectrum(values=np.array([0.9, 0.8, 0.75, 0.2, 0.1]))
        assert select_k(spec, 4) == 3

    def test_first_gap_dominates(self):
        spec = EigenSpectrum(values=np.array([1.0, 0.2, 0.19, 0.18]))
        assert select_k(spec, 3) == 1

    def test_tie_breaks_to_smallest_k(self):
        spec = EigenSpectrum(values=np.array([1.0, 0.5, 0.0]))
        assert select_k(spec, 2) == 1

    def test_planted_k_on_population_spectrum(self):
        rng = np.random.default_rng(12)
        z = np.repeat([1, 2, 3], 60)
        B = block_matrix(0.4, 0.1, 3)
        sample = srs(180, 30, rng).ids
        ls = normalize_bi_adjacency(population_bi_adjacency(z, B, sample))
        assert select_k(subsampled_spectrum(ls)) == 3

    def test_planted_k_on_strong_empirical_graph(self):
        rng = np.random.default_rng(13)
        z = sample_memberships((1 / 3, 1 / 3, 1 / 3), 600, rng)
        g = generate_adjacency(z, block_matrix(0.5, 0.05, 3), rng)
        s = srs(600, 80, rng)
        ls = subsampled_laplacian(bi_adjacency(g, s.ids))
        assert select_k(subsampled_spectrum(ls)) == 3

    def test_validates_inputs(self):
        spec = EigenSpectrum(values=np.array([1.0]))
        with pytest.raises(ValueError):
            select_k(spec)
        spec2 = EigenSpectrum(values=np.array([1.0, 0.5]))
        with pytest.raises(ValueError):
            select_k(spec2, 2)


class TestSpectrumClipping:
    def test_tiny_negatives_clipped(self):
        spec = EigenSpectrum.from_psd_eigenvalues(np.array([1.0, 1e-13, -1e-12]))
        assert np.all(spec.values >= 0)

    def test_large_negative_rejected(self):
        with pytest.raises(ValueError):
            EigenSpectrum.from_psd_eigenvalues(np.array([1.0, -1e-6]))


class TestCsvWriters:
    def test_embedding_csv(self, tmp_path):
        g = path4()
        emb = embed(subsampled_laplacian(bi_adjacency(g, [1, 2])), 2)
        out = tmp_path / "emb.csv"
        write_embedding_csv(emb, out)
        lines = out.read_text().splitlines()
        assert lines[0] == "node,x1,x2"
        assert len(lines) == 5
        parsed = np.array([[float(v) for v in line.split(",")[1:]]
                           for line in lines[1:]])
        assert np.allclose(parsed, emb.matrix, atol=1e-10)

    def test_spectrum_file(self, tmp_path):
        g = path4()
        spec = subsampled_spectrum(subsampled_laplacian(bi_adjacency(g, [1, 2])))
        out = tmp_path / "spec.txt"
        write_spectrum(spec, out)
        values = [float(x) for x in out.read_text().split()]
        assert np.allclose(values, spec.values, atol=1e-10)
        assert values == sorted(values, reverse=True)


class TestEmbeddingConvergence:
    def test_distance_to_population_shrinks_with_sample_size(self):
        # Smoke-scale version of the convergence trend: the Procrustes
        # distance between empirical and population embeddings has
        # non-increasing median as the subsample grows.
        N, K = 600, 3
        rng = np.random.default_rng(14)
        z = sample_memberships((1 / 3, 1 / 3, 1 / 3), N, rng)
        B = block_matrix(0.5, 0.05, K)
        grid = (40, 80, 160)
        medians = []
        for n in grid:
            dists = []
            for seed in range(10):
                r = np.random.default_rng(seed)
                g = generate_adjacency(z, B, r)
                s = srs(N, n, r)
                emp = embed(subsampled_laplacian(bi_adjacency(g, s.ids)), K)
                pop = embed(normalize_bi_adjacency(
                    population_bi_adjacency(z, B, s.ids)), K)
                dists.append(procrustes_distance(emp.matrix, pop.matrix))
            medians.append(np.median(dists))
        assert medians[0] >= medians[1] >= medians[2]
