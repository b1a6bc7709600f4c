"""Exact lattice formulas.

Numbers in the frozen tables were produced by the pseudoinverse and
eigensolver oracles on explicitly built graphs, then rounded to the nearest
rational with a small denominator.
"""
from fractions import Fraction as F

import pytest

from subdivlab import (
    LatticeSpec,
    build_lattice,
    graph_spectrum,
    indices_from_resistance,
    iterate_by_transfer,
    iterate_subdivide,
    iterated_add_dk,
    iterated_counts,
    iterated_kemeny,
    iterated_kirchhoff,
    iterated_mult_dk,
    iterated_values,
    kemeny_spectral,
    lattice_closed_forms,
    resistance_pinv_oracle,
)
from subdivlab.corpus import complete, cycle
from subdivlab.errors import SizeLimitError
from subdivlab.lattice import as_fraction, format_fraction

K3_BASE = dict(m=3, n=3, kemeny=F(4, 3), kirchhoff=F(2), additive_dk=F(8), multiplicative_dk=F(8))
C4_BASE = dict(m=4, n=4, kemeny=F(5, 2), kirchhoff=F(5), additive_dk=F(20), multiplicative_dk=F(20))

# (base, q, k) -> (kemeny, multiplicative, additive, kirchhoff) from numerics
FROZEN_ITERATED = [
    ("K3", K3_BASE, 2, 2, (F(305, 6), F(4880), F(3616), F(665))),
    ("K3", K3_BASE, 3, 2, (F(539, 6), F(19404), F(13766), F(21512, 9))),
    ("K3", K3_BASE, 1, 3, (F(575, 6), F(4600), F(4600), F(1150))),
    ("C4", C4_BASE, 2, 2, (F(157, 2), F(10048), F(7372), F(1345))),
    ("C4", C4_BASE, 3, 2, (F(261, 2), F(37584), F(26360), F(40856, 9))),
    ("C4", C4_BASE, 1, 3, (F(341, 2), F(10912), F(10912), F(2728))),
]

FROZEN_LATTICE = [
    (2, 2, (F(29, 2), F(464), F(364), F(71))),
    (2, 3, (F(157, 2), F(10048), F(7372), F(1345))),
    (3, 2, (F(55, 2), F(1980), F(1438), F(2305, 9))),
]


def test_hierarchical_base():
    spec = LatticeSpec.hierarchical(2, 0)
    assert (spec.m, spec.n) == (1, 2)
    assert iterated_values(spec) == (F(1, 2), F(1), F(2), F(1))


def test_spec_coerces_to_fractions_and_validates():
    spec = LatticeSpec(2, 1, 1, 2, "1/2", 1, 2, 1.0)
    assert spec.kemeny == F(1, 2) and isinstance(spec.multiplicative_dk, F)
    assert spec.with_k(3).k == 3
    with pytest.raises(ValueError):
        LatticeSpec(0, 1, 1, 2, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        LatticeSpec(2, -1, 1, 2, 1, 1, 1, 1)


def test_fraction_helpers():
    assert as_fraction("7/2") == F(7, 2)
    assert format_fraction(F(7, 2)) == "7/2"
    assert format_fraction(F(20)) == "20"


@pytest.mark.parametrize("name,base,q,k,expected", FROZEN_ITERATED, ids=[f"{r[0]}-q{r[2]}-k{r[3]}" for r in FROZEN_ITERATED])
def test_iterated_formulas_on_general_bases(name, base, q, k, expected):
    spec = LatticeSpec(q, k, **base)
    assert iterated_values(spec) == expected
    assert iterate_by_transfer(spec) == expected
    assert (
        iterated_kemeny(spec), iterated_mult_dk(spec), iterated_add_dk(spec), iterated_kirchhoff(spec)
    ) == expected


def test_iterated_counts():
    assert iterated_counts(LatticeSpec(2, 5, **dict(K3_BASE, m=1, n=2))) == (684, 1024)
    assert iterated_counts(LatticeSpec(3, 2, **C4_BASE)) == (4 + 4 * 3 * 7, 144)


def test_additive_index_of_second_generation():
    # H_{2,2}: 12 nodes, additive degree-Kirchhoff index exactly 364
    assert iterated_add_dk(LatticeSpec.hierarchical(2, 2)) == 364


@pytest.mark.parametrize("q,k,expected", FROZEN_LATTICE)
def test_lattice_closed_forms_frozen(q, k, expected):
    assert tuple(lattice_closed_forms(q, k)) == expected


def test_closed_forms_first_generation():
    assert tuple(lattice_closed_forms(2, 1)) == (F(5, 2), F(20), F(20), F(5))
    assert lattice_closed_forms(3, 1).kemeny == F(7, 2)


def test_q2_kirchhoff_matches_numeric_value():
    # The q = 2 Kirchhoff branch is the delicate one; check it against the
    # oracle directly rather than only through other formulas.
    for k, want in ((2, 71), (3, 1345)):
        g = build_lattice(2, k)
        got = indices_from_resistance(g, resistance_pinv_oracle(g)).kirchhoff
        assert got == pytest.approx(want, rel=1e-12)
        assert lattice_closed_forms(2, k).kirchhoff == want


@pytest.mark.parametrize("q", range(2, 7))
def test_three_routes_agree_exactly(q):
    for k in range(9):
        spec = LatticeSpec.hierarchical(q, k)
        assert lattice_closed_forms(q, k) == iterated_values(spec) == iterate_by_transfer(spec)


def test_general_base_matches_numerics():
    h = iterate_subdivide(complete(3), 2, 2)
    spec = LatticeSpec(2, 2, **K3_BASE)
    assert kemeny_spectral(graph_spectrum(h)) == pytest.approx(float(iterated_kemeny(spec)), rel=1e-10)
    h = iterate_subdivide(cycle(4), 3, 1)
    spec = LatticeSpec(3, 1, **C4_BASE)
    idx = indices_from_resistance(h, resistance_pinv_oracle(h))
    assert idx.kirchhoff == pytest.approx(float(iterated_kirchhoff(spec)), rel=1e-10)


def test_lattice_argument_errors():
    with pytest.raises(ValueError):
        lattice_closed_forms(1, 2)
    with pytest.raises(ValueError):
        build_lattice(2, -1)
    with pytest.raises(SizeLimitError):
        build_lattice(2, 8, max_nodes=20_000)  # 43692 nodes
