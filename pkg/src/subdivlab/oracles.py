"""Ground-truth computations that share no code path with the spectral formulas.

* hitting times from the absorbing-chain linear system (Gaussian elimination);
* resistances from the Moore-Penrose pseudoinverse of the combinatorial Laplacian;
* Monte Carlo first-passage estimates with per-walk counter-based random streams.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import SameNodeError, SingularSystemError, StepBudgetExceededError
from .graph import Graph

GraphLike = Union[Graph, np.ndarray]

STEP_BUDGET = 10**9


def _adjacency(g: GraphLike) -> np.ndarray:
    return g.adjacency_matrix() if isinstance(g, Graph) else np.asarray(g, dtype=float)


def gaussian_solve(A: np.ndarray, b: np.ndarray, rel_pivot: float = 1e-12) -> np.ndarray:
    """Solve ``A x = b`` by Gaussian elimination with partial pivoting.

    Raises SingularSystemError when a pivot drops below ``rel_pivot`` times
    the largest entry of ``A``.
    """
    M = np.array(A, dtype=float, copy=True)
    x = np.array(b, dtype=float, copy=True)
    n = M.shape[0]
    floor = rel_pivot * max(float(np.max(np.abs(M))), 1.0)
    for col in range(n):
        piv = col + int(np.argmax(np.abs(M[col:, col])))
        if abs(M[piv, col]) <= floor:
            raise SingularSystemError(f"pivot {M[piv, col]:.3e} in column {col} is numerically zero")
        if piv != col:
            M[[col, piv]] = M[[piv, col]]
            x[[col, piv]] = x[[piv, col]]
        f = M[col + 1:, col] / M[col, col]
        M[col + 1:, col:] -= f[:, None] * M[col, col:]
        x[col + 1:] -= f * x[col]
    for row in range(n - 1, -1, -1):
        x[row] = (x[row] - M[row, row + 1:] @ x[row + 1:]) / M[row, row]
    return x


def hitting_oracle(g: GraphLike, target: int) -> np.ndarray:
    """Expected first-passage times to ``target`` from every node.

    Solves h_target = 0 and h_i = 1 + sum_k P(i, k) h_k for the other nodes,
    where P = D^{-1} A is the walk's transition matrix. ``g`` may be a
    :class:`Graph` or a raw adjacency matrix.
    """
    A = _adjacency(g)
    n = A.shape[0]
    deg = A.sum(axis=1)
    if np.any(deg == 0):
        raise SingularSystemError("isolated node: hitting times are undefined")
    P = A / deg[:, None]
    keep = np.arange(n) != target
    system = np.eye(n - 1) - P[np.ix_(keep, keep)]
    h = np.zeros(n)
    h[keep] = gaussian_solve(system, np.ones(n - 1))
    return h


def hitting_matrix_oracle(g: GraphLike) -> np.ndarray:
    n = _adjacency(g).shape[0]
    return np.column_stack([hitting_oracle(g, j) for j in range(n)])


def resistance_pinv_oracle(g: GraphLike) -> np.ndarray:
    """r_ij = L+_ii + L+_jj - 2 L+_ij with L+ built from LAPACK's eigh of L = D - A."""
    A = _adjacency(g)
    L = np.diag(A.sum(axis=1)) - A
    w, U = np.linalg.eigh(L)
    inv = np.zeros_like(w)
    inv[1:] = 1.0 / w[1:]  # w[0] is the Laplacian's zero eigenvalue
    Lp = (U * inv) @ U.T
    d = np.diag(Lp)
    R = d[:, None] + d[None, :] - 2.0 * Lp
    np.fill_diagonal(R, 0.0)
    return R


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _splitmix64(z: np.ndarray) -> np.ndarray:
    z = z + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def counter_uniform(seed: int, walk: np.ndarray, step: int) -> np.ndarray:
    """Uniform [0, 1) draws keyed by ``(seed, walk, step)``.

    Each value is a SplitMix64 hash of its key, so a walk's stream does not
    depend on which other walks run or in what order.
    """
    with np.errstate(over="ignore"):
        key = _splitmix64(np.full(np.shape(walk), seed & 0xFFFFFFFFFFFFFFFF, dtype=np.uint64))
        key = _splitmix64(key ^ np.asarray(walk, dtype=np.uint64))
        bits = _splitmix64(key ^ np.uint64(step))
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / 2.0**53)


@dataclass(frozen=True)
class WalkEnsembleResult:
    estimate: float
    stderr: float
    walks: int
    seed: int


def walk_lengths(
    g: Graph, start: int, target: int, walk_ids: np.ndarray, seed: int,
    step_budget: int = STEP_BUDGET,
) -> np.ndarray:
    """First-passage step counts for the walks labelled ``walk_ids``."""
    if start == target:
        raise SameNodeError(f"start and target are both {start}")
    indptr = np.concatenate([[0], np.cumsum([len(a) for a in g.neighbors])])
    indices = np.fromiter((v for a in g.neighbors for v in a), dtype=np.int64)
    deg = np.diff(indptr)
    ids = np.asarray(walk_ids, dtype=np.uint64)
    pos = np.full(len(ids), start, dtype=np.int64)
    steps = np.zeros(len(ids), dtype=np.int64)
    active = np.arange(len(ids))
    step = 0
    while active.size:
        if step >= step_budget:
            raise StepBudgetExceededError(f"{active.size} walks still running after {step_budget} steps")
        u = counter_uniform(seed, ids[active], step)
        cur = pos[active]
        choice = np.minimum((u * deg[cur]).astype(np.int64), deg[cur] - 1)
        nxt = indices[indptr[cur] + choice]
        pos[active] = nxt
        step += 1
        done = nxt == target
        steps[active[done]] = step
        active = active[~done]
    return steps


def mc_hitting(g: Graph, i: int, j: int, walks: int, seed: int, step_budget: int = STEP_BUDGET) -> WalkEnsembleResult:
    """Mean first-passage time from ``i`` to ``j`` over ``walks`` seeded trajectories."""
    if walks < 1:
        raise ValueError(f"need at least one walk, got {walks}")
    lengths = walk_lengths(g, i, j, np.arange(walks), seed, step_budget)
    est = float(np.mean(lengths))
    se = float(np.std(lengths, ddof=1) / np.sqrt(walks)) if walks > 1 else 0.0
    return WalkEnsembleResult(est, se, walks, seed)
