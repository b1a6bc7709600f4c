"""Effective resistances and Kirchhoff-type indices, direct and transferred."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import IndexOutOfRangeError, SameNodeError
from .graph import Graph, SubdivisionMap
from .spectral import Spectrum, graph_spectrum
from .walks import _check_gap, _weighted_gram


class KirchhoffIndices(NamedTuple):
    kirchhoff: float
    additive_dk: float
    multiplicative_dk: float


@dataclass(frozen=True)
class ResistanceMetrics:
    resistance: np.ndarray
    kirchhoff: float
    additive_dk: float
    multiplicative_dk: float

    @property
    def indices(self) -> KirchhoffIndices:
        return KirchhoffIndices(self.kirchhoff, self.additive_dk, self.multiplicative_dk)


def resistance_matrix_spectral(g: Graph, spec: Spectrum | None = None) -> np.ndarray:
    """r_ij = sum_{k>=2} (v_ki/sqrt(d_i) - v_kj/sqrt(d_j))^2 / (1 - lam_k), every k kept."""
    spec = graph_spectrum(g) if spec is None else spec
    M = _weighted_gram(g, spec, g.n)
    diag = np.diag(M)
    R = diag[:, None] + diag[None, :] - 2.0 * M
    np.fill_diagonal(R, 0.0)
    return np.maximum(R, 0.0)


def resistance_spectral(g: Graph, spec: Spectrum, i: int, j: int) -> float:
    if i == j:
        raise SameNodeError(f"resistance needs distinct nodes, got {i} twice")
    for x in (i, j):
        if not 0 <= x < g.n:
            raise IndexOutOfRangeError(f"node {x} outside [0, {g.n})")
    gaps = _check_gap(spec, g.n)
    V = spec.eigenvectors[:, 1:]
    diff = V[i] / math.sqrt(g.degrees[i]) - V[j] / math.sqrt(g.degrees[j])
    return math.fsum(diff * diff / gaps)


def indices_from_resistance(g: Graph, R: np.ndarray) -> KirchhoffIndices:
    """Kirchhoff, additive and multiplicative degree-Kirchhoff sums over unordered pairs."""
    iu, ju = np.triu_indices(g.n, 1)
    r = np.asarray(R)[iu, ju]
    d = g.degrees.astype(float)
    return KirchhoffIndices(
        math.fsum(r),
        math.fsum((d[iu] + d[ju]) * r),
        math.fsum(d[iu] * d[ju] * r),
    )


def resistance_metrics(g: Graph, spec: Spectrum | None = None) -> ResistanceMetrics:
    R = resistance_matrix_spectral(g, spec)
    return ResistanceMetrics(R, *indices_from_resistance(g, R))


def foster_sum(g: Graph, R: np.ndarray) -> float:
    """Sum of resistances over edges; equals n - 1 for a connected graph."""
    e = g.edge_array
    return math.fsum(np.asarray(R)[e[:, 0], e[:, 1]])


def resistance_transfer(res_G: ResistanceMetrics, smap: SubdivisionMap, q: int, i: int, j: int):
    """Resistance between nodes ``i`` and ``j`` of S_q(G) from the resistances of G."""
    if i == j:
        raise SameNodeError(f"resistance needs distinct nodes, got {i} twice")
    total = smap.total_count
    for x in (i, j):
        if not 0 <= x < total:
            raise IndexOutOfRangeError(f"node {x} outside [0, {total})")
    r = res_G.resistance
    i_new, j_new = smap.is_new(i), smap.is_new(j)
    if not i_new and not j_new:
        return 2 * r[i, j] / q
    if i_new and j_new:
        s, t = smap.parent(i)[:2]
        u, v = smap.parent(j)[:2]
        return 1 + (r[s, u] + r[t, u] + r[s, v] + r[t, v] - r[s, t] - r[u, v]) / (2 * q)
    if j_new:
        i, j = j, i
    s, t = smap.parent(i)[:2]
    return 0.5 + (2 * r[s, j] + 2 * r[t, j] - r[s, t]) / (2 * q)


def resistance_matrix_transfer(res_G: ResistanceMetrics, smap: SubdivisionMap, q: int) -> np.ndarray:
    """All resistances of S_q(G); a vectorized form of :func:`resistance_transfer`."""
    r = np.asarray(res_G.resistance, dtype=float)
    n, N = smap.old_count, smap.total_count
    s, t = smap.parent_array[:, 0], smap.parent_array[:, 1]
    rst = r[s, t]
    R = np.empty((N, N))
    R[:n, :n] = 2.0 * r / q
    R[n:, :n] = 0.5 + (2.0 * r[s, :] + 2.0 * r[t, :] - rst[:, None]) / (2 * q)
    R[:n, n:] = R[n:, :n].T
    pair = r[np.ix_(s, s)] + r[np.ix_(t, s)] + r[np.ix_(s, t)] + r[np.ix_(t, t)]
    R[n:, n:] = 1.0 + (pair - rst[:, None] - rst[None, :]) / (2 * q)
    np.fill_diagonal(R, 0.0)
    return R


def vprime_v_sum(res_G: ResistanceMetrics, g: Graph, q: int) -> float:
    """Sum of resistances between new and old nodes of S_q(G)."""
    n, m = g.n, g.m
    return res_G.additive_dk + (m * n * q - n * n + n) / 2


def vprime_vprime_sum(res_G: ResistanceMetrics, g: Graph, q: int) -> float:
    """Sum of resistances over unordered pairs of new nodes of S_q(G)."""
    n, m = g.n, g.m
    return q * res_G.multiplicative_dk / 2 + (m * q * (m * q - 1) - m * (n - 1) * q) / 2


def multiplicative_dk_transfer(Kt_G, m: int, n: int, q: int):
    return 8 * q * Kt_G + 2 * m * q * (2 * m * q - 2 * n + 1)


def additive_dk_transfer(Ka_G, Kt_G, m: int, n: int, q: int):
    return 4 * Ka_G + 4 * q * Kt_G + m * q * (3 * m * q - 2 * n + 1) - n * (n - 1)


def kirchhoff_transfer(K_G, Ka_G, Kt_G, m: int, n: int, q: int):
    return (
        Fraction(2, q) * K_G
        + Ka_G
        + Fraction(q, 2) * Kt_G
        + Fraction(m * m * q * q - n * (n - 1), 2)
    )
