import numpy as np
import pytest

from sscluster.graph import SparseGraph, from_edge_list


def check_graph_invariants(g: SparseGraph) -> None:
    """Symmetry, zero diagonal, sorted unique neighbor lists, degree sum."""
    total = 0
    for i in range(g.n_nodes):
        nbrs = g.neighbors(i)
        assert np.all(np.diff(nbrs) > 0), "neighbor list not sorted/unique"
        assert i not in nbrs, "self-loop present"
        for j in nbrs:
            assert g.has_edge(j, i), "asymmetric edge"
        total += len(nbrs)
    assert total == 2 * g.n_edges


@pytest.fixture
def triangle() -> SparseGraph:
    return from_edge_list([(0, 1), (1, 2), (0, 2)], 3)


@pytest.fixture
def path4() -> SparseGraph:
    return from_edge_list([(0, 1), (1, 2), (2, 3)], 4)


@pytest.fixture
def star5() -> SparseGraph:
    """K_{1,4}: node 0 is the center."""
    return from_edge_list([(0, i) for i in range(1, 5)], 5)
