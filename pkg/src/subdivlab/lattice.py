"""Iterated q-subdivisions and hierarchical lattices in exact rational arithmetic.

``H_{q,k}`` is the k-fold q-subdivision of a single edge. The general-base
functions take the metrics of any starting graph G; the q = 2 and q != 2
branches are separate formulas, not limits of one another.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple

from .graph import DEFAULT_MAX_NODES, Graph, build_graph, iterate_subdivide, predicted_size
from .resistance import additive_dk_transfer, kirchhoff_transfer, multiplicative_dk_transfer
from .walks import kemeny_transfer

F = Fraction


def as_fraction(x) -> Fraction:
    """Exact conversion; strings like ``"7/2"`` are accepted."""
    return x if isinstance(x, Fraction) else Fraction(x)


def format_fraction(x: Fraction) -> str:
    """``"p/q"``, or just ``"p"`` for integers."""
    return str(as_fraction(x))


@dataclass(frozen=True)
class LatticeSpec:
    """A base graph's invariants plus the iteration parameters (q, k)."""

    q: int
    k: int
    m: int
    n: int
    kemeny: Fraction
    kirchhoff: Fraction
    additive_dk: Fraction
    multiplicative_dk: Fraction

    def __post_init__(self):
        if self.q < 1 or self.k < 0:
            raise ValueError(f"need q >= 1 and k >= 0, got q={self.q}, k={self.k}")
        for name in ("kemeny", "kirchhoff", "additive_dk", "multiplicative_dk"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @classmethod
    def hierarchical(cls, q: int, k: int) -> "LatticeSpec":
        """Base metrics of a single edge: K=1/2, Kirchhoff=1, additive=2, multiplicative=1."""
        return cls(q, k, 1, 2, F(1, 2), F(1), F(2), F(1))

    def with_k(self, k: int) -> "LatticeSpec":
        return replace(self, k=k)


class LatticeValues(NamedTuple):
    kemeny: Fraction
    multiplicative_dk: Fraction
    additive_dk: Fraction
    kirchhoff: Fraction


def iterated_counts(spec: LatticeSpec) -> tuple[int, int]:
    return predicted_size(spec.n, spec.m, spec.q, spec.k)


def iterated_kemeny(spec: LatticeSpec) -> Fraction:
    q, k, m, n = spec.q, spec.k, F(spec.m), F(spec.n)
    K0 = spec.kemeny
    if q == 2:
        return 4**k * K0 + m * k * 4**k / 3 + ((4 * m + 3) / 6 - n) * (4**k - 1) / 3
    return (
        4**k * K0
        + m * q * (q - 1) / F((q - 2) * (2 * q - 1)) * ((2 * q) ** k - 4**k)
        + ((2 * m * q + 2 * q - 1) / F(2 * (2 * q - 1)) - n) * (4**k - 1) / 3
    )


def iterated_mult_dk(spec: LatticeSpec) -> Fraction:
    q, k, m, n = spec.q, spec.k, F(spec.m), F(spec.n)
    Kt0 = spec.multiplicative_dk
    if q == 2:
        return (
            16**k * Kt0
            + 2 * m * m * k * 16**k / 3
            + ((4 * m * m + 3 * m) / 3 - 2 * m * n) * (16**k - 4**k) / 3
        )
    return (
        (8 * q) ** k * Kt0
        + 2 * m * m * q * (q - 1) / F((q - 2) * (2 * q - 1)) * ((2 * q) ** (2 * k) - (8 * q) ** k)
        + ((2 * m * m * q + 2 * m * q - m) / (2 * q - 1) - 2 * m * n) * ((8 * q) ** k - (2 * q) ** k) / 3
    )


def iterated_add_dk(spec: LatticeSpec) -> Fraction:
    q, k, m, n = spec.q, spec.k, F(spec.m), F(spec.n)
    Ka0, Kt0 = spec.additive_dk, spec.multiplicative_dk
    if q == 2:
        return (
            4**k * Ka0
            + 2 * (16**k - 4**k) * Kt0 / 3
            + F(16**k - 4**k, 9) * 2 * m * (2 * m - 2 * n + 1)
            + F(16**k, 9) * 4 * m * m * k
            - F(4**k - 1, 27) * (2 * m - 3 * n) * (2 * m - 3 * n + 3)
        )
    a = m * q / (2 * q - 1)
    return (
        4**k * Ka0
        + 3 * m * m * q**3 * (q - 1) * ((2 * q) ** (2 * k) - 4**k) / F((q - 2) * (q + 1) * (2 * q - 1) ** 2)
        + F((8 * q) ** k - 4**k, 2 * q - 1)
        * (q * Kt0 - 2 * m * m * q * q / F(3 * (q - 2)) - m * (2 * n - 1) * q / 3)
        - m * q * ((2 * q) ** k - 4**k) / F(3 * (2 * q - 1)) * (2 * m * q / (2 * q - 1) - 2 * n + 1)
        - F(4**k - 1, 3) * (a - n) * (a - n + 1)
    )


def iterated_kirchhoff(spec: LatticeSpec) -> Fraction:
    q, k, m, n = spec.q, spec.k, F(spec.m), F(spec.n)
    K0, Ka0, Kt0 = spec.kirchhoff, spec.additive_dk, spec.multiplicative_dk
    if q == 2:
        # The m^2 coefficients differ from the commonly printed variant, which
        # overshoots by 2m^2(16^k - 15k - 1)/405 and breaks at k >= 2.
        return (
            K0
            + F(4**k - 1, 3) * Ka0
            + F((4**k - 1) ** 2, 9) * Kt0
            + F(16**k - 1, 81) * m * ((6 * k + 8) * m - 6 * n + 3)
            + F(4**k - 1, 81) * (-16 * m * m + 24 * m * n - 12 * m - 9 * n * (n - 1))
            + F(k, 18) * (4 * m * n - 3 * n * n - 2 * m + 3 * n)
        )
    r = F(2, q) ** k
    a = m * q / (2 * q - 1)
    c = (a - n) * (a - n + 1)
    d = 2 * q - 1
    return (
        r * K0
        + q * (4**k - r) / (2 * d) * Ka0
        + q * q * ((8 * q) ** k - 2 * 4**k + r) / (4 * d * d) * Kt0
        + m * m * q**3 * (q - 1) * ((2 * q) ** (2 * k) - r) / F(2 * (q - 2) * (q + 1) * d * d)
        - m * q * q * ((8 * q) ** k - r) / (6 * d * d) * (m * q / F(q - 2) + n - F(1, 2))
        + m * q * q * ((2 * q) ** k - r) / (3 * (q + 1) * d) * (-a + n - F(1, 2))
        - q * (4**k - r) / d * (m * m * q * q * (q - 1) / F(2 * d * d * (q + 1)) + c / 6)
        + q * (r - 1) / (6 * (q - 2)) * c
    )


def iterated_values(spec: LatticeSpec) -> LatticeValues:
    return LatticeValues(
        iterated_kemeny(spec),
        iterated_mult_dk(spec),
        iterated_add_dk(spec),
        iterated_kirchhoff(spec),
    )


def iterate_by_transfer(spec: LatticeSpec) -> LatticeValues:
    """Compose the single-step transfer formulas ``k`` times, exactly."""
    m, n = spec.m, spec.n
    K, Kf, Ka, Kt = spec.kemeny, spec.kirchhoff, spec.additive_dk, spec.multiplicative_dk
    q = spec.q
    for _ in range(spec.k):
        K, Kt, Ka, Kf = (
            kemeny_transfer(K, m, n, q),
            multiplicative_dk_transfer(Kt, m, n, q),
            additive_dk_transfer(Ka, Kt, m, n, q),
            kirchhoff_transfer(Kf, Ka, Kt, m, n, q),
        )
        m, n = 2 * q * m, n + q * m
    return LatticeValues(F(K), F(Kt), F(Ka), F(Kf))


def lattice_closed_forms(q: int, k: int) -> LatticeValues:
    """Kemeny constant and the three Kirchhoff-type indices of H_{q,k}."""
    if q < 2 or k < 0:
        raise ValueError(f"hierarchical lattices need q >= 2 and k >= 0, got q={q}, k={k}")
    if q == 2:
        return LatticeValues(
            F((6 * k + 4) * 4**k + 5, 18),
            F((6 * k + 4) * 16**k + 5 * 4**k, 9),
            F(4 * (k + 1) * 16**k, 9) + F(38 * 4**k, 27) + F(4, 27),
            F((6 * k + 8) * 16**k + 38 * 4**k + 35 - 6 * k, 81),
        )
    d = 2 * q - 1
    kem = (
        F(q * (q - 1) * (2 * q) ** k, (q - 2) * d)
        - F(q * 4**k, 3 * (q - 2))
        + F(4 * q - 3, 6 * d)
    )
    mult = (
        F(2 * q * (q - 1) * (2 * q) ** (2 * k), (q - 2) * d)
        - F(2 * q * (8 * q) ** k, 3 * (q - 2))
        + F((4 * q - 3) * (2 * q) ** k, 3 * d)
    )
    add = (
        F(3 * q**3 * (q - 1) * (2 * q) ** (2 * k), (q - 2) * (q + 1) * d * d)
        - F(2 * q * q * (8 * q) ** k, 3 * (q - 2) * d)
        + F(q * (4 * q - 3) * (2 * q) ** k, 3 * d * d)
        + F(2 * (3 * q * q + 2 * q - 2) * 4**k, 3 * (q + 1) * d)
        + F((q - 1) * (3 * q - 2), 3 * d * d)
    )
    kir = (
        F(q**3 * (q - 1) * (2 * q) ** (2 * k), 2 * (q - 2) * (q + 1) * d * d)
        - F(q**3 * (8 * q) ** k, 6 * (q - 2) * d * d)
        + F(q * q * (4 * q - 3) * (2 * q) ** k, 6 * (q + 1) * d * d)
        + F(q * (3 * q * q + 2 * q - 2) * 4**k, 3 * (q + 1) * d * d)
        + F(5 * q**4 - 9 * q**3 - 5 * q * q + 12 * q - 4, 2 * (q - 2) * (q + 1) * d * d) * F(2, q) ** k
        - F((q - 1) * q * (3 * q - 2), 6 * (q - 2) * d * d)
    )
    return LatticeValues(kem, mult, add, kir)


def single_edge() -> Graph:
    return build_graph(2, [(0, 1)])


def build_lattice(q: int, k: int, max_nodes: int = DEFAULT_MAX_NODES) -> Graph:
    if q < 2 or k < 0:
        raise ValueError(f"hierarchical lattices need q >= 2 and k >= 0, got q={q}, k={k}")
    return iterate_subdivide(single_edge(), q, k, max_nodes=max_nodes)
