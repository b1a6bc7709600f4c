"""Corpus-wide cross-checks of the transfer formulas against independent oracles.

Each (graph, q) cell lazily computes what its checks need; every check
produces one :class:`VerificationReport` and exceptions are recorded as
failures rather than raised.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from . import lattice as lat
from .corpus import CorpusEntry, default_corpus
from .graph import Graph, bipartition, q_subdivide
from .oracles import hitting_matrix_oracle, mc_hitting, resistance_pinv_oracle
from .resistance import (
    additive_dk_transfer,
    foster_sum,
    indices_from_resistance,
    kirchhoff_transfer,
    multiplicative_dk_transfer,
    resistance_matrix_spectral,
    resistance_matrix_transfer,
    resistance_metrics,
    vprime_v_sum,
    vprime_vprime_sum,
)
from .spectral import (
    eigenvalue_groups,
    graph_spectrum,
    kernel_basis,
    kernel_sum_identity_check,
    transfer_spectrum,
    zero_multiplicity,
)
from .walks import (
    hitting_matrix_spectral,
    hitting_matrix_transfer,
    kemeny_spectral,
    kemeny_transfer,
    walk_metrics,
)

SCHEMA = "subdiv-lab/1"

DEFAULT_TOLERANCES: dict[str, float] = {
    "spectrum_transfer": 1e-8,
    "zero_multiplicity": 0.0,
    "multiplicity_law": 0.0,
    "hitting_transfer": 1e-7,
    "hitting_oracle": 1e-7,
    "kemeny_transfer": 1e-9,
    "kemeny_consistency": 1e-8,
    "resistance_transfer": 1e-9,
    "resistance_oracle": 1e-9,
    "foster": 1e-9,
    "commute_identity": 1e-7,
    "sum_identities": 1e-9,
    "vprime_v_sum": 1e-9,
    "vprime_vprime_sum": 1e-9,
    "multiplicative_dk_transfer": 1e-6,
    "additive_dk_transfer": 1e-6,
    "kirchhoff_transfer": 1e-6,
    "multiplicative_dk_identity": 1e-8,
    "lattice_closed_forms": 0.0,
    "lattice_numeric": 1e-7,
    "mc_hitting": 4.0,
}

CELL_CHECKS = (
    "spectrum_transfer", "zero_multiplicity", "multiplicity_law",
    "hitting_transfer", "hitting_oracle", "kemeny_transfer", "kemeny_consistency",
    "resistance_transfer", "resistance_oracle", "foster", "commute_identity",
    "sum_identities", "vprime_v_sum", "vprime_vprime_sum",
    "multiplicative_dk_transfer", "additive_dk_transfer", "kirchhoff_transfer",
    "multiplicative_dk_identity",
)
GLOBAL_CHECKS = ("lattice_closed_forms", "lattice_numeric")
STATISTICAL_CHECKS = ("mc_hitting",)
DEFAULT_CHECKS = CELL_CHECKS + ("lattice_closed_forms",)


@dataclass
class VerificationReport:
    graph: str
    q: int | None
    check: str
    residual: float
    tolerance: float
    passed: bool
    wall_time: float
    statistical: bool = False
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        d = self.to_dict()
        if not math.isfinite(d["residual"]):
            d["residual"] = str(d["residual"])
        return json.dumps(d, sort_keys=False)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _max_abs(A: np.ndarray, B: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(A) - np.asarray(B)))) if np.size(A) else 0.0


class Cell:
    """Everything computed for one base graph ``g`` and one value of ``q``."""

    def __init__(self, name: str, g: Graph, q: int):
        self.name, self.g, self.q = name, g, q

    @cached_property
    def spec_G(self):
        return graph_spectrum(self.g)

    @cached_property
    def walks_G(self):
        return walk_metrics(self.g, self.spec_G)

    @cached_property
    def res_G(self):
        return resistance_metrics(self.g, self.spec_G)

    @cached_property
    def sub(self):
        return q_subdivide(self.g, self.q)

    @property
    def h(self) -> Graph:
        return self.sub[0]

    @property
    def smap(self):
        return self.sub[1]

    @cached_property
    def spec_h(self):
        return graph_spectrum(self.h)

    @cached_property
    def basis(self):
        return kernel_basis(self.g, self.q)

    @cached_property
    def spec_transfer(self):
        return transfer_spectrum(self.spec_G, self.g, self.q, self.basis)

    @cached_property
    def hit_h_spectral(self):
        return hitting_matrix_spectral(self.h, self.spec_h)

    @cached_property
    def hit_h_transfer(self):
        return hitting_matrix_transfer(self.walks_G, self.smap, self.g, self.q)

    @cached_property
    def R_h_pinv(self):
        return resistance_pinv_oracle(self.h)

    @cached_property
    def R_h_transfer(self):
        return resistance_matrix_transfer(self.res_G, self.smap, self.q)

    # -- checks: each returns a residual ----------------------------------

    def spectrum_transfer(self) -> float:
        return _max_abs(np.sort(self.spec_transfer.eigenvalues), np.sort(self.spec_h.eigenvalues))

    def zero_multiplicity(self) -> float:
        g, q = self.g, self.q
        expected = g.m * q - g.n + (2 if bipartition(g).is_bipartite else 0)
        return float(abs(zero_multiplicity(self.spec_h) - expected))

    def multiplicity_law(self) -> float:
        """Count mismatches between m_hat(mu) and m_G(2 mu^2 - 1) over non-zero groups."""
        lam = self.spec_G.eigenvalues
        mu = self.spec_h.eigenvalues
        bad = 0
        for grp in eigenvalue_groups(mu):
            val = float(np.mean(mu[grp]))
            if abs(val) < 1e-6:
                continue
            target = 2 * val * val - 1
            if int(np.sum(np.abs(lam - target) < 1e-6)) != len(grp):
                bad += 1
        return float(bad)

    def hitting_transfer(self) -> float:
        return _max_abs(self.hit_h_transfer, self.hit_h_spectral)

    def hitting_oracle(self) -> float:
        return max(
            _max_abs(hitting_matrix_oracle(self.g), self.walks_G.hitting),
            _max_abs(hitting_matrix_oracle(self.h), self.hit_h_spectral),
        )

    def kemeny_transfer(self) -> float:
        g = self.g
        predicted = kemeny_transfer(kemeny_spectral(self.spec_G), g.m, g.n, self.q)
        return abs(float(predicted) - kemeny_spectral(self.spec_h))

    def kemeny_consistency(self) -> float:
        pi = self.h.degrees / (2.0 * self.h.m)
        per_start = self.hit_h_spectral @ pi
        return float(np.max(np.abs(per_start - kemeny_spectral(self.spec_h))))

    def resistance_transfer(self) -> float:
        return _max_abs(self.R_h_transfer, self.R_h_pinv)

    def resistance_oracle(self) -> float:
        return max(
            _max_abs(resistance_matrix_spectral(self.g, self.spec_G), resistance_pinv_oracle(self.g)),
            _max_abs(resistance_matrix_spectral(self.h, self.spec_h), self.R_h_pinv),
        )

    def foster(self) -> float:
        return max(
            abs(foster_sum(self.g, self.res_G.resistance) - (self.g.n - 1)),
            abs(foster_sum(self.h, self.R_h_transfer) - (self.h.n - 1)),
            abs(foster_sum(self.h, self.R_h_pinv) - (self.h.n - 1)),
        )

    def commute_identity(self) -> float:
        H = self.hit_h_transfer
        return _max_abs(2.0 * self.h.m * self.R_h_transfer, H + H.T)

    def sum_identities(self) -> float:
        resid = kernel_sum_identity_check(self.g, self.q, self.spec_G, self.basis)
        return float(np.max(resid)) if resid.size else 0.0

    def vprime_v_sum(self) -> float:
        n = self.g.n
        brute = math.fsum(self.R_h_pinv[n:, :n].ravel())
        return _rel(vprime_v_sum(self.res_G, self.g, self.q), brute)

    def vprime_vprime_sum(self) -> float:
        n = self.g.n
        block = self.R_h_pinv[n:, n:]
        brute = math.fsum(block[np.triu_indices(block.shape[0], 1)])
        return _rel(vprime_vprime_sum(self.res_G, self.g, self.q), brute)

    @cached_property
    def _indices_h(self):
        return indices_from_resistance(self.h, self.R_h_pinv)

    def multiplicative_dk_transfer(self) -> float:
        g, r = self.g, self.res_G
        pred = multiplicative_dk_transfer(r.multiplicative_dk, g.m, g.n, self.q)
        return _rel(float(pred), self._indices_h.multiplicative_dk)

    def additive_dk_transfer(self) -> float:
        g, r = self.g, self.res_G
        pred = additive_dk_transfer(r.additive_dk, r.multiplicative_dk, g.m, g.n, self.q)
        return _rel(float(pred), self._indices_h.additive_dk)

    def kirchhoff_transfer(self) -> float:
        g, r = self.g, self.res_G
        pred = kirchhoff_transfer(r.kirchhoff, r.additive_dk, r.multiplicative_dk, g.m, g.n, self.q)
        return _rel(float(pred), self._indices_h.kirchhoff)

    def multiplicative_dk_identity(self) -> float:
        return max(
            _rel(self.res_G.multiplicative_dk, 2 * self.g.m * kemeny_spectral(self.spec_G)),
            _rel(self._indices_h.multiplicative_dk, 2 * self.h.m * kemeny_spectral(self.spec_h)),
        )

    def mc_hitting(self, walks: int = 100_000, seed: int = 20240917) -> float:
        """Largest deviation, in standard errors, of MC estimates on S_q(G) hub pairs."""
        worst = 0.0
        e0 = self.g.edges[0]
        for i, j in (e0, (e0[0], self.g.n)):
            res = mc_hitting(self.h, i, j, walks, seed)
            exact = self.hit_h_spectral[i, j]
            gap = abs(res.estimate - exact)
            if res.stderr > 0:
                worst = max(worst, gap / res.stderr)
            elif gap > 1e-12:
                worst = math.inf
        return worst


def lattice_closed_form_residual(q: int, kmax: int = 8) -> float:
    """Largest exact discrepancy (as float) between closed forms and recurrences."""
    worst = 0.0
    for k in range(kmax + 1):
        spec = lat.LatticeSpec.hierarchical(q, k)
        closed = lat.lattice_closed_forms(q, k)
        for other in (lat.iterated_values(spec), lat.iterate_by_transfer(spec)):
            for a, b in zip(closed, other):
                worst = max(worst, float(abs(a - b)))
    return worst


def lattice_numeric_residual(q: int, k: int) -> float:
    """Relative gap between closed forms and eigensolver/pseudoinverse values on H_{q,k}."""
    g = lat.build_lattice(q, k)
    spec = graph_spectrum(g)
    closed = lat.lattice_closed_forms(q, k)
    kem = kemeny_spectral(spec)
    idx = indices_from_resistance(g, resistance_pinv_oracle(g))
    idx_spec = indices_from_resistance(g, resistance_matrix_spectral(g, spec))
    pairs = [
        (kem, closed.kemeny),
        (idx.multiplicative_dk, closed.multiplicative_dk),
        (idx.additive_dk, closed.additive_dk),
        (idx.kirchhoff, closed.kirchhoff),
        (idx_spec.multiplicative_dk, closed.multiplicative_dk),
        (idx_spec.kirchhoff, closed.kirchhoff),
    ]
    return max(abs(a - float(b)) / abs(float(b)) for a, b in pairs)


GraphSource = Union[CorpusEntry, tuple[str, Graph], Graph]


def _resolve(item: GraphSource, index: int) -> tuple[str, Callable[[], Graph]]:
    if isinstance(item, CorpusEntry):
        return item.name, item.build
    if isinstance(item, Graph):
        return f"graph{index}", lambda: item
    name, g = item
    return name, (lambda: g)


def _timed(graph, q, check, tol, fn, statistical=False) -> VerificationReport:
    t0 = time.perf_counter()
    try:
        resid = float(fn())
        detail = ""
    except Exception as exc:  # recorded, not raised
        resid = math.inf
        detail = f"{type(exc).__name__}: {exc}"
    return VerificationReport(
        graph, q, check, resid, tol, resid <= tol, time.perf_counter() - t0, statistical, detail
    )


def run_suite(
    corpus: Iterable[GraphSource] | None = None,
    q_values: Sequence[int] = (1, 2, 3),
    checks: Sequence[str] | None = None,
    tolerances: dict[str, float] | None = None,
    workers: int = 1,
) -> list[VerificationReport]:
    """Run every enabled check over ``corpus`` x ``q_values``.

    ``corpus=None`` means the default corpus; an empty corpus yields no cell
    reports. Graph construction failures become failing ``build`` reports.
    """
    corpus = default_corpus() if corpus is None else list(corpus)
    checks = DEFAULT_CHECKS if checks is None else tuple(checks)
    unknown = set(checks) - set(CELL_CHECKS + GLOBAL_CHECKS + STATISTICAL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    tol = dict(DEFAULT_TOLERANCES, **(tolerances or {}))

    tasks: list[Callable[[], list[VerificationReport]]] = []
    reports: list[VerificationReport] = []
    for idx, item in enumerate(corpus):
        name, factory = _resolve(item, idx)
        t0 = time.perf_counter()
        try:
            g = factory()
        except Exception as exc:
            reports.append(VerificationReport(
                name, None, "build", math.inf, 0.0, False, time.perf_counter() - t0,
                detail=f"{type(exc).__name__}: {exc}",
            ))
            continue
        for q in q_values:
            cell = Cell(name, g, q)

            def run_cell(cell=cell):
                out = []
                for c in checks:
                    if c in CELL_CHECKS:
                        out.append(_timed(cell.name, cell.q, c, tol[c], getattr(cell, c)))
                    elif c in STATISTICAL_CHECKS:
                        out.append(_timed(cell.name, cell.q, c, tol[c], getattr(cell, c), statistical=True))
                return out

            tasks.append(run_cell)

    if corpus and "lattice_closed_forms" in checks:
        for q in range(2, 7):
            tasks.append(lambda q=q: [_timed(
                f"H_{q}", q, "lattice_closed_forms", tol["lattice_closed_forms"],
                lambda: lattice_closed_form_residual(q),
            )])
    if corpus and "lattice_numeric" in checks:
        for q in (2, 3):
            for k in (1, 2, 3):
                tasks.append(lambda q=q, k=k: [_timed(
                    f"H_{q},{k}", q, "lattice_numeric", tol["lattice_numeric"],
                    lambda: lattice_numeric_residual(q, k),
                )])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(lambda f: f(), tasks):
                reports.extend(chunk)
    else:
        for task in tasks:
            reports.extend(task())
    return reports


def suite_passed(reports: Iterable[VerificationReport]) -> bool:
    """True when every non-statistical check passed."""
    return all(r.passed for r in reports if not r.statistical)


def reports_to_jsonl(reports: Iterable[VerificationReport]) -> str:
    return "".join(r.to_json() + "\n" for r in reports)


def reports_table(reports: Sequence[VerificationReport]) -> str:
    header = ("graph", "q", "check", "residual", "tolerance", "status", "time[s]")
    rows = [header]
    for r in reports:
        status = "PASS" if r.passed else ("WARN" if r.statistical else "FAIL")
        rows.append((
            r.graph, "-" if r.q is None else str(r.q), r.check,
            f"{r.residual:.3e}", f"{r.tolerance:.1e}", status, f"{r.wall_time:.3f}",
        ))
    widths = [max(len(row[c]) for row in rows) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    for r in reports:
        if r.detail:
            lines.append(f"  {r.graph} q={r.q} {r.check}: {r.detail}")
    return "\n".join(lines)
