"""Normalized adjacency spectra and their transfer to q-subdivision graphs."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import (
    DegenerateTransferError,
    NoConvergenceError,
    NotSymmetricError,
    RankMismatchError,
)
from .graph import Graph, bipartition, incidence_matrix, q_subdivide

DEFAULT_TOLERANCE = 1e-10
JACOBI_THRESHOLD = 1e-12
JACOBI_MAX_SWEEPS = 100
KERNEL_THRESHOLD = 1e-10
GROUP_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def size(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class KernelBasis:
    vectors: np.ndarray  # shape (mq, count)

    @property
    def count(self) -> int:
        return self.vectors.shape[1]


def normalized_adjacency(g: Graph) -> np.ndarray:
    """D^{-1/2} A D^{-1/2}."""
    s = 1.0 / np.sqrt(g.degrees.astype(float))
    return s[:, None] * g.adjacency_matrix() * s[None, :]


@numba.njit(cache=True)
def _jacobi_sweep(A, Vt, tiny):
    """One row-cyclic sweep of rotations on symmetric ``A``; ``Vt`` holds eigenvectors as rows."""
    n = A.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = A[p, q]
            if abs(apq) <= tiny:
                continue
            theta = (A[q, q] - A[p, p]) / (2.0 * apq)
            if theta == 0.0:
                t = 1.0
            elif abs(theta) > 1e150:
                t = 0.5 / theta
            else:
                t = (1.0 if theta > 0.0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            for k in range(n):
                akp = A[k, p]
                akq = A[k, q]
                A[k, p] = c * akp - s * akq
                A[k, q] = s * akp + c * akq
            for k in range(n):
                apk = A[p, k]
                aqk = A[q, k]
                A[p, k] = c * apk - s * aqk
                A[q, k] = s * apk + c * aqk
            A[p, q] = 0.0
            A[q, p] = 0.0
            for k in range(n):
                vp = Vt[p, k]
                vq = Vt[q, k]
                Vt[p, k] = c * vp - s * vq
                Vt[q, k] = s * vp + c * vq


def _off_norm(A: np.ndarray) -> float:
    off = A.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_eigh(
    A: np.ndarray,
    threshold: float = JACOBI_THRESHOLD,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a dense symmetric matrix.

    Sweeps run until the off-diagonal Frobenius norm falls below
    ``threshold * max(1, ||A||_F)``. Returns unsorted eigenvalues and the
    matrix whose columns are the matching eigenvectors.

    Raises
    ------
    NoConvergenceError
        If ``max_sweeps`` sweeps do not reach the threshold.
    """
    A = np.array(A, dtype=float, copy=True)
    n = A.shape[0]
    Vt = np.eye(n)
    target = threshold * max(1.0, float(np.linalg.norm(A)))
    tiny = np.finfo(float).tiny
    for _ in range(max_sweeps):
        if _off_norm(A) <= target:
            return np.diag(A).copy(), Vt.T.copy()
        _jacobi_sweep(A, Vt, tiny)
    if _off_norm(A) <= target:
        return np.diag(A).copy(), Vt.T.copy()
    raise NoConvergenceError(
        f"Jacobi did not converge in {max_sweeps} sweeps "
        f"(off-diagonal norm {_off_norm(A):.3e} > {target:.3e})"
    )


def _fix_signs(V: np.ndarray) -> np.ndarray:
    """Make the first entry of largest magnitude in each column positive."""
    absV = np.abs(V)
    big = absV >= absV.max(axis=0, keepdims=True) - 1e-10
    lead = np.argmax(big, axis=0)
    signs = np.sign(V[lead, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


def eigendecompose(matrix: np.ndarray, tolerance: float = DEFAULT_TOLERANCE) -> Spectrum:
    """Full eigendecomposition of a symmetric matrix via :func:`jacobi_eigh`."""
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {M.shape}")
    asym = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if asym > tolerance:
        raise NotSymmetricError(f"matrix is not symmetric (max |M - M^T| = {asym:.3e})")
    w, V = jacobi_eigh(0.5 * (M + M.T))
    order = np.argsort(-w, kind="stable")
    return Spectrum(w[order], _fix_signs(V[:, order]), tolerance)


def graph_spectrum(g: Graph, tolerance: float = DEFAULT_TOLERANCE) -> Spectrum:
    return eigendecompose(normalized_adjacency(g), tolerance)


def eigenvalue_groups(values: np.ndarray, gap: float = GROUP_TOLERANCE) -> list[np.ndarray]:
    """Split descending ``values`` into index runs whose neighbours differ by < gap."""
    if len(values) == 0:
        return []
    breaks = np.nonzero(np.abs(np.diff(values)) >= gap)[0] + 1
    return np.split(np.arange(len(values)), breaks)


def _gram_schmidt(Y: np.ndarray) -> np.ndarray:
    Q = np.array(Y, dtype=float, copy=True)
    for i in range(Q.shape[1]):
        for _ in range(2):
            Q[:, i] -= Q[:, :i] @ (Q[:, :i].T @ Q[:, i])
        Q[:, i] /= np.linalg.norm(Q[:, i])
    return Q


def kernel_basis(g: Graph, q: int, tolerance: float = DEFAULT_TOLERANCE) -> KernelBasis:
    """Orthonormal basis of Ker(C), C = [B B ... B] with q copies of the incidence matrix.

    Raises
    ------
    RankMismatchError
        If the numerical kernel dimension differs from ``mq - rank(B)`` with
        ``rank(B) = n - 1`` for bipartite ``g`` and ``n`` otherwise.
    """
    B = incidence_matrix(g)
    C = np.tile(B, (1, q))
    w, V = jacobi_eigh(C.T @ C)
    null = w < KERNEL_THRESHOLD
    rank_B = g.n - 1 if bipartition(g).is_bipartite else g.n
    expected = g.m * q - rank_B
    if int(null.sum()) != expected:
        raise RankMismatchError(
            f"kernel of C has numerical dimension {int(null.sum())}, expected {expected}"
        )
    Y = V[:, null]
    if expected:
        Y = _gram_schmidt(Y)
        resid = float(np.max(np.abs(C @ Y)))
        if resid > max(tolerance, 1e-9):
            raise RankMismatchError(f"kernel vectors leave residual {resid:.3e}")
    return KernelBasis(Y)


def transfer_spectrum(
    spec_G: Spectrum, g: Graph, q: int, basis: KernelBasis | None = None
) -> Spectrum:
    """Spectrum of S_q(G)'s normalized adjacency built from the spectrum of G.

    Every eigenpair (lam, v) of G with lam != -1 yields the pair of
    eigenvalues +-sqrt((1 + lam)/2); the vector equals v/sqrt(2) on old nodes
    and +-(v_s/sqrt(d_s) + v_t/sqrt(d_t)) / sqrt(2q(1 + lam)) on a new node
    with neighbours s and t. The zero eigenspace is spanned by (0, Y) for Y
    in Ker(C), plus (v_n, 0) when G is bipartite.
    """
    n, m = g.n, g.m
    lam = spec_G.eigenvalues
    V = spec_G.eigenvectors
    bip = bipartition(g).is_bipartite
    paired = n - 1 if bip else n
    if np.any(1.0 + lam[:paired] <= spec_G.tolerance):
        raise DegenerateTransferError(
            "an eigenvalue at -1 reached the non-zero branch; is the graph bipartite?"
        )
    if basis is None:
        basis = kernel_basis(g, q, spec_G.tolerance)

    sqrt_d = np.sqrt(g.degrees.astype(float))
    e = g.edge_array
    U = V[:, :paired] / sqrt_d[:, None]
    edge_part = U[e[:, 0]] + U[e[:, 1]]  # (m, paired)
    new_part = np.tile(edge_part, (q, 1)) / np.sqrt(2.0 * q * (1.0 + lam[:paired]))
    old_part = V[:, :paired] / math.sqrt(2.0)

    mu = np.sqrt((1.0 + lam[:paired]) / 2.0)
    vals = [mu, -mu]
    vecs = [np.vstack([old_part, new_part]), np.vstack([old_part, -new_part])]
    if bip:
        vals.append(np.zeros(1))
        vecs.append(np.vstack([V[:, [n - 1]], np.zeros((m * q, 1))]))
    if basis.count:
        vals.append(np.zeros(basis.count))
        vecs.append(np.vstack([np.zeros((n, basis.count)), basis.vectors]))

    w = np.concatenate(vals)
    X = np.hstack(vecs)
    order = np.argsort(-w, kind="stable")
    w, X = w[order], X[:, order]
    X = X / np.linalg.norm(X, axis=0)
    for grp in eigenvalue_groups(w):
        if len(grp) > 1:
            Q, R = np.linalg.qr(X[:, grp])
            X[:, grp] = Q * np.sign(np.diag(R))
    return Spectrum(w, _fix_signs(X), spec_G.tolerance)


def direct_subdivision_spectrum(g: Graph, q: int, tolerance: float = DEFAULT_TOLERANCE) -> Spectrum:
    h, _ = q_subdivide(g, q)
    return graph_spectrum(h, tolerance)


def zero_multiplicity(spec: Spectrum, gap: float = GROUP_TOLERANCE) -> int:
    return int(np.sum(np.abs(spec.eigenvalues) < gap))


def kernel_sum_identity_check(
    g: Graph, q: int, spec_G: Spectrum, basis: KernelBasis
) -> np.ndarray:
    """Residuals of the squared-kernel-row identity, one per new node of S_q(G).

    For a new node with neighbours s, t the row sum of squared kernel entries
    must equal ``1 - 1/(mq) - sum_k ((v_ks/sqrt(d_s) + v_kt/sqrt(d_t))^2 / ((1 + lam_k) q))``
    with k running over the non-leading eigenpairs of G, omitting lam = -1.
    """
    n, m = g.n, g.m
    hi = n - 1 if bipartition(g).is_bipartite else n
    lam = spec_G.eigenvalues[1:hi]
    U = spec_G.eigenvectors[:, 1:hi] / np.sqrt(g.degrees.astype(float))[:, None]
    e = g.edge_array
    S = (U[e[:, 0]] + U[e[:, 1]]) ** 2
    rhs_edge = 1.0 - 1.0 / (m * q) - S @ (1.0 / ((1.0 + lam) * q))
    rhs = np.tile(rhs_edge, q)
    lhs = np.sum(basis.vectors ** 2, axis=1) if basis.count else np.zeros(m * q)
    return np.abs(lhs - rhs)


def spectrum_residuals(spec: Spectrum, g: Graph | None = None) -> dict[str, float]:
    """Deviations from the structural properties every graph spectrum must satisfy."""
    w, V = spec.eigenvalues, spec.eigenvectors
    out = {
        "orthonormality": float(np.max(np.abs(V.T @ V - np.eye(len(w))))),
        "top_eigenvalue": abs(float(w[0]) - 1.0),
        "bound": max(0.0, float(np.max(np.abs(w))) - 1.0),
        "descending": max(0.0, float(np.max(np.diff(w)))) if len(w) > 1 else 0.0,
    }
    if g is not None:
        pi_root = np.sqrt(g.degrees / (2.0 * g.m))
        out["stationary_vector"] = float(np.max(np.abs(np.abs(V[:, 0]) - pi_root)))
        bottom = abs(float(w[-1]) + 1.0)
        is_bip = bipartition(g).is_bipartite
        # λ_n = -1 exactly when bipartite; a non-bipartite graph must stay clear of -1.
        out["bipartite_bottom"] = bottom if is_bip else max(0.0, 1e-6 - bottom)
    return out
