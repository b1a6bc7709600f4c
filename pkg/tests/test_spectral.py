import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdivlab import (
    direct_subdivision_spectrum,
    eigendecompose,
    graph_spectrum,
    incidence_matrix,
    jacobi_eigh,
    kernel_basis,
    normalized_adjacency,
    q_subdivide,
    spectrum_residuals,
    transfer_spectrum,
    zero_multiplicity,
)
from subdivlab.corpus import complete, cycle, path, petersen, star
from subdivlab.errors import DegenerateTransferError, NoConvergenceError, NotSymmetricError
from subdivlab.spectral import eigenvalue_groups, kernel_sum_identity_check

from strategies import connected_graphs


def test_jacobi_two_by_two():
    w, V = jacobi_eigh(np.array([[2.0, 1.0], [1.0, 2.0]]))
    order = np.argsort(w)
    assert w[order] == pytest.approx([1.0, 3.0], abs=1e-14)
    assert abs(V[0, order[1]]) == pytest.approx(1 / math.sqrt(2), abs=1e-14)


def test_jacobi_diagonal_input_is_untouched():
    w, V = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
    assert w.tolist() == [3.0, -1.0, 2.0]
    assert np.array_equal(V, np.eye(3))


@pytest.mark.parametrize("n", [1, 5, 40])
def test_jacobi_random_symmetric(n):
    rng = np.random.default_rng(n)
    M = rng.normal(size=(n, n))
    M = M + M.T
    w, V = jacobi_eigh(M)
    assert np.max(np.abs(M @ V - V * w)) < 1e-11 * max(1.0, np.linalg.norm(M))
    assert np.max(np.abs(V.T @ V - np.eye(n))) < 1e-12
    assert np.sort(w) == pytest.approx(np.linalg.eigvalsh(M), abs=1e-10)


def test_jacobi_does_not_modify_input():
    M = np.array([[1.0, 2.0], [2.0, 1.0]])
    jacobi_eigh(M)
    assert M.tolist() == [[1.0, 2.0], [2.0, 1.0]]


def test_jacobi_sweep_budget():
    with pytest.raises(NoConvergenceError):
        jacobi_eigh(np.array([[0.0, 1.0], [1.0, 0.0]]), max_sweeps=0)


def test_eigendecompose_rejects_asymmetric():
    with pytest.raises(NotSymmetricError):
        eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotSymmetricError):
        eigendecompose(np.zeros((2, 3)))


@pytest.mark.parametrize(
    "g,expected",
    [
        (path(3), [1.0, 0.0, -1.0]),
        (complete(3), [1.0, -0.5, -0.5]),
        (complete(4), [1.0, -1 / 3, -1 / 3, -1 / 3]),
        (cycle(4), [1.0, 0.0, 0.0, -1.0]),
        (star(4), [1.0, 0.0, 0.0, -1.0]),
        (cycle(5), [1.0] + [math.cos(2 * math.pi / 5)] * 2 + [math.cos(4 * math.pi / 5)] * 2),
        (petersen(), [1.0] + [1 / 3] * 5 + [-2 / 3] * 4),
    ],
)
def test_graph_spectra(g, expected):
    spec = graph_spectrum(g)
    assert spec.eigenvalues == pytest.approx(expected, abs=1e-12)
    res = spectrum_residuals(spec, g)
    assert max(res.values()) < 1e-12


def test_leading_vector_is_positive_stationary_root():
    g = star(4)
    v = graph_spectrum(g).eigenvectors[:, 0]
    assert v == pytest.approx(np.sqrt(g.degrees / (2 * g.m)), abs=1e-12)


def test_normalized_adjacency_of_path():
    P = normalized_adjacency(path(3))
    r = 1 / math.sqrt(2)
    assert P == pytest.approx(np.array([[0, r, 0], [r, 0, r], [0, r, 0]]), abs=1e-15)


def test_eigenvalue_groups():
    groups = eigenvalue_groups(np.array([1.0, 0.5, 0.5 - 1e-9, 0.0, -1.0]))
    assert [g.tolist() for g in groups] == [[0], [1, 2], [3], [4]]
    assert eigenvalue_groups(np.array([])) == []


@pytest.mark.parametrize("g,q,count", [(complete(3), 2, 3), (cycle(4), 1, 1), (path(3), 1, 0), (petersen(), 3, 35)])
def test_kernel_basis_dimension_and_orthonormality(g, q, count):
    basis = kernel_basis(g, q)
    assert basis.count == count
    assert basis.vectors.shape == (g.m * q, count)
    if count:
        C = np.tile(incidence_matrix(g), (1, q))
        assert np.max(np.abs(C @ basis.vectors)) < 1e-10
        assert np.max(np.abs(basis.vectors.T @ basis.vectors - np.eye(count))) < 1e-12


def test_transfer_spectrum_of_triangle():
    g = complete(3)
    spec = transfer_spectrum(graph_spectrum(g), g, 2)
    assert spec.eigenvalues == pytest.approx([1, 0.5, 0.5, 0, 0, 0, -0.5, -0.5, -1], abs=1e-12)
    h, _ = q_subdivide(g, 2)
    X = spec.eigenvectors
    assert np.max(np.abs(normalized_adjacency(h) @ X - X * spec.eigenvalues)) < 1e-12


def test_transfer_refuses_mismatched_spectrum():
    # the 4-cycle has an eigenvalue at -1 but K4 is not bipartite
    with pytest.raises(DegenerateTransferError):
        transfer_spectrum(graph_spectrum(cycle(4)), complete(4), 1)


@pytest.mark.parametrize(
    "g,q,expected",
    [(complete(3), 1, 0), (cycle(4), 2, 6), (star(4), 3, 7), (petersen(), 1, 5)],
)
def test_zero_multiplicity_law(g, q, expected):
    # mq - n, plus 2 when G is bipartite
    assert zero_multiplicity(direct_subdivision_spectrum(g, q)) == expected


def test_kernel_sum_identity_residuals():
    g = petersen()
    resid = kernel_sum_identity_check(g, 2, graph_spectrum(g), kernel_basis(g, 2))
    assert resid.shape == (30,)
    assert resid.max() < 1e-12


@settings(max_examples=25, deadline=None)
@given(connected_graphs(), st.integers(1, 3))
def test_transfer_matches_direct_on_random_graphs(g, q):
    built = transfer_spectrum(graph_spectrum(g), g, q)
    direct = direct_subdivision_spectrum(g, q)
    assert np.max(np.abs(built.eigenvalues - direct.eigenvalues)) < 1e-9
    X = built.eigenvectors
    assert np.max(np.abs(X.T @ X - np.eye(X.shape[1]))) < 1e-9
