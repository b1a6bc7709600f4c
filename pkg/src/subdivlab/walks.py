"""Hitting times and Kemeny's constant for unbiased random walks.

Direct values come from the normalized adjacency spectrum. The transfer
functions express the same quantities on S_q(G) through those of G, and are
written with plain arithmetic so that they accept floats or ``Fraction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateSpectrumError, IndexOutOfRangeError, SameNodeError
from .graph import Bipartition, Graph, SubdivisionMap, bipartition
from .spectral import Spectrum, graph_spectrum

DEGENERACY_FLOOR = 1e-12


@dataclass(frozen=True)
class WalkMetrics:
    hitting: np.ndarray  # hitting[i, j] = expected steps from i to first visit of j
    kemeny: float
    stationary: np.ndarray


def _check_gap(spec: Spectrum, upto: int) -> np.ndarray:
    gaps = 1.0 - spec.eigenvalues[1:upto]
    if np.any(gaps < DEGENERACY_FLOOR):
        raise DegenerateSpectrumError(
            "a non-leading eigenvalue equals 1; the eigensolver output is inconsistent "
            "with a connected graph"
        )
    return gaps


def _weighted_gram(g: Graph, spec: Spectrum, upto: int) -> np.ndarray:
    """M[i, j] = sum_{k=2..upto} u_ki u_kj / (1 - lam_k) with u_ki = v_ki / sqrt(d_i)."""
    gaps = _check_gap(spec, upto)
    U = spec.eigenvectors[:, 1:upto] / np.sqrt(g.degrees.astype(float))[:, None]
    return (U / gaps) @ U.T


def stationary_distribution(g: Graph) -> np.ndarray:
    return g.degrees / (2.0 * g.m)


def hitting_matrix_spectral(
    g: Graph, spec: Spectrum | None = None, bip: Bipartition | None = None
) -> np.ndarray:
    """All hitting times from the spectral formula.

    For bipartite graphs the eigenpair at -1 is dropped from the sum and one
    step is added for pairs in opposite colour classes.
    """
    spec = graph_spectrum(g) if spec is None else spec
    bip = bipartition(g) if bip is None else bip
    upto = g.n - 1 if bip.is_bipartite else g.n
    M = _weighted_gram(g, spec, upto)
    T = 2.0 * g.m * (np.diag(M)[None, :] - M)
    if bip.is_bipartite:
        c = np.asarray(bip.color)
        T += c[:, None] != c[None, :]
    np.fill_diagonal(T, 0.0)
    return T


def hitting_time_spectral(g: Graph, spec: Spectrum, bip: Bipartition, i: int, j: int) -> float:
    if i == j:
        raise SameNodeError(f"hitting time needs distinct nodes, got {i} twice")
    for x in (i, j):
        if not 0 <= x < g.n:
            raise IndexOutOfRangeError(f"node {x} outside [0, {g.n})")
    upto = g.n - 1 if bip.is_bipartite else g.n
    gaps = _check_gap(spec, upto)
    V = spec.eigenvectors[:, 1:upto]
    di, dj = float(g.degrees[i]), float(g.degrees[j])
    terms = (V[j] ** 2 / dj - V[i] * V[j] / math.sqrt(di * dj)) / gaps
    value = 2.0 * g.m * math.fsum(terms)
    if bip.is_bipartite and bip.color[i] != bip.color[j]:
        value += 1.0
    return value


def kemeny_spectral(spec: Spectrum) -> float:
    """sum_{i>=2} 1 / (1 - lam_i)."""
    gaps = _check_gap(spec, spec.size)
    return math.fsum(1.0 / gaps)


def walk_metrics(g: Graph, spec: Spectrum | None = None, bip: Bipartition | None = None) -> WalkMetrics:
    spec = graph_spectrum(g) if spec is None else spec
    return WalkMetrics(
        hitting=hitting_matrix_spectral(g, spec, bip),
        kemeny=kemeny_spectral(spec),
        stationary=stationary_distribution(g),
    )


def hitting_time_transfer(
    metrics_G: WalkMetrics, smap: SubdivisionMap, g: Graph, q: int, i: int, j: int
) -> float:
    """Hitting time between nodes ``i`` and ``j`` of S_q(G) from the hitting times of G."""
    if i == j:
        raise SameNodeError(f"hitting time needs distinct nodes, got {i} twice")
    total = smap.total_count
    for x in (i, j):
        if not 0 <= x < total:
            raise IndexOutOfRangeError(f"node {x} outside [0, {total})")
    T = metrics_G.hitting
    mq2 = 2 * g.m * q
    i_new, j_new = smap.is_new(i), smap.is_new(j)
    if not i_new and not j_new:
        return 4 * T[i, j]
    if i_new and not j_new:
        s, t = smap.parent(i)[:2]
        return 1 + 2 * (T[s, j] + T[t, j])
    if not i_new and j_new:
        s, t = smap.parent(j)[:2]
        return mq2 - 1 + 2 * (T[i, s] + T[i, t]) - (T[t, s] + T[s, t])
    s, t = smap.parent(i)[:2]
    u, v = smap.parent(j)[:2]
    return mq2 + T[s, u] + T[t, u] + T[s, v] + T[t, v] - (T[u, v] + T[v, u])


def hitting_matrix_transfer(metrics_G: WalkMetrics, smap: SubdivisionMap, g: Graph, q: int) -> np.ndarray:
    """All hitting times of S_q(G); a vectorized form of :func:`hitting_time_transfer`."""
    T = np.asarray(metrics_G.hitting, dtype=float)
    n, N = smap.old_count, smap.total_count
    s, t = smap.parent_array[:, 0], smap.parent_array[:, 1]
    mq2 = 2 * g.m * q
    cross = T[s, t] + T[t, s]
    H = np.empty((N, N))
    H[:n, :n] = 4.0 * T
    H[n:, :n] = 1.0 + 2.0 * (T[s, :] + T[t, :])
    H[:n, n:] = mq2 - 1.0 + 2.0 * (T[:, s] + T[:, t]) - cross[None, :]
    H[n:, n:] = mq2 + (T[np.ix_(s, s)] + T[np.ix_(t, s)] + T[np.ix_(s, t)] + T[np.ix_(t, t)]) - cross[None, :]
    np.fill_diagonal(H, 0.0)
    return H


def kemeny_transfer(K_G, m: int, n: int, q: int):
    """K(S_q(G)) = 4 K(G) + (2mq - 2n + 1) / 2."""
    return 4 * K_G + Fraction(2 * m * q - 2 * n + 1, 2)
