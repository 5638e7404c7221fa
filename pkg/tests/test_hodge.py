from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from framedvertex.curve import Framing, c_coefficient
from framedvertex.exactalg import PhasedScalar, PolyA, RatFnA
from framedvertex.hodge import (
    AmplitudeTable,
    CorrelatorTable,
    InconsistentSystem,
    Partition,
    amplitude_from_correlators,
    c_from_w,
    correlator_violations,
    correlators_from_monomials,
    exceptional_amplitude,
    monomials_from_correlators,
    oracle_genus0,
    oracle_genus1,
    partitions,
    partitions_up_to,
    readout_rows,
    solve_basis_axis,
    stable,
    top_degree,
)

A = RatFnA.variable()


# -- partitions --------------------------------------------------------------------


def test_partition_statistics():
    mu = Partition.of(1, 3, 1)
    assert mu.parts == (3, 1, 1)
    assert (mu.size, mu.length, mu.aut) == (5, 3, 2)
    assert mu.z == 3 * 1 * 1 * 2


def test_partition_counts():
    assert [len(list(partitions(n))) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
    assert len(partitions_up_to(6)) == 1 + 2 + 3 + 5 + 7 + 11


@given(st.integers(1, 12))
def test_partitions_are_distinct_and_sum(n):
    ps = list(partitions(n))
    assert len(set(ps)) == len(ps)
    assert all(p.size == n and list(p.parts) == sorted(p.parts, reverse=True) for p in ps)


def test_stability_and_dimension():
    assert not stable(0, 2) and not stable(0, 1) and stable(0, 3) and stable(1, 1)
    assert top_degree(2, 3) == 6


# -- oracles -----------------------------------------------------------------------


def test_genus0_oracle():
    assert oracle_genus0((0, 0, 0)) == 1
    assert oracle_genus0((1, 0, 0, 0)) == 1
    assert oracle_genus0((2, 1, 0, 0, 0, 0)) == 3
    assert oracle_genus0((1, 1, 0, 0)) == 0
    with pytest.raises(ValueError):
        oracle_genus0((0, 0))


def test_genus1_oracle():
    assert oracle_genus1((1,)) == PolyA([0, Fraction(-1, 24), Fraction(-1, 24)])
    assert oracle_genus1((0,)) == PolyA([Fraction(1, 24)] * 3)
    assert oracle_genus1((1, 1)) == PolyA([0, Fraction(-1, 24), Fraction(-1, 24)])
    # string equation: <tau_0 tau_1 ...> reduces to lower points
    assert oracle_genus1((0, 2)) == oracle_genus1((1,))


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_genus1_oracle_reflection_symmetric(b):
    v = oracle_genus1(b)
    assert v.reflect() == v
    assert v.degree <= 2


# -- C from W ---------------------------------------------------------------------


def test_c_phase_convention():
    mu = Partition.of(2, 1)
    c = c_from_w(0, mu, Fraction(3))
    # -i^(3+2) (-1)^(0+2) 3 = -3 i
    assert c == PhasedScalar(Fraction(-3), 1)


def test_exceptional_amplitudes():
    sym = Framing.symbol()
    assert exceptional_amplitude(0, Partition.of(1), sym) == -1
    assert exceptional_amplitude(0, Partition.of(2), sym) == -(2 * A + 1) / 4
    assert exceptional_amplitude(0, Partition.of(1, 1), sym) == A * (A + 1) / 4
    with pytest.raises(ValueError):
        exceptional_amplitude(1, Partition.of(1), sym)


def test_amplitude_from_oracle_correlators():
    sym = Framing.symbol()
    corr = CorrelatorTable(sym, {(0, (0, 0, 0)): RatFnA(1)})
    assert amplitude_from_correlators(0, Partition.of(1, 1, 1), corr) == -(A * (A + 1)) ** 2 / 6
    corr1 = CorrelatorTable(sym, {(1, (0,)): RatFnA(oracle_genus1((0,))), (1, (1,)): RatFnA(oracle_genus1((1,)))})
    assert amplitude_from_correlators(1, Partition.of(1), corr1) == Fraction(1, 24)


def test_missing_correlator_is_an_error():
    corr = CorrelatorTable(Framing.symbol())
    with pytest.raises(KeyError):
        corr.get(1, (0,))
    assert corr.get(1, (2,)) == 0  # beyond the dimension bound


def test_amplitude_table_symmetry():
    t = AmplitudeTable(Framing.symbol())
    t[0, (1, 2)] = RatFnA(5)
    assert t[0, (2, 1)] == 5
    assert (0, Partition.of(2, 1)) in t


# -- monomial data ----------------------------------------------------------------


def test_basis_axis_solves_and_checks():
    sym = Framing.symbol()
    # alpha = (1, 2): value at m is c_m m + 2 c_m m^2
    vals = {m: c_coefficient(m, A) * (m + 2 * m * m) for m in range(1, 5)}
    assert solve_basis_axis(vals, 2, sym) == [1, 2]
    vals[4] = vals[4] + 1
    with pytest.raises(InconsistentSystem):
        solve_basis_axis(vals, 2, sym)


def test_readout_rows_skip_vanishing_coefficients():
    assert readout_rows(4, Framing.symbol()) == (1, 2, 3, 4)
    assert readout_rows(4, Framing.rational(Fraction(-1, 2))) == (1, 3, 5, 7)
    assert readout_rows(4, Framing.rational(Fraction(-1, 3))) == (1, 2, 4, 5)
    half = Framing.rational(Fraction(-1, 2))
    vals = {m: c_coefficient(m, half.a) * (m + 2 * m * m) for m in range(1, 9)}
    assert vals[2] == 0
    assert solve_basis_axis(vals, 2, half) == [1, 2]


@pytest.mark.parametrize("framing", [Framing.symbol(), Framing.rational(2)])
def test_correlators_monomials_round_trip(framing):
    a = framing.a
    corr = CorrelatorTable(framing)
    for b, v in [((0, 0), a * a + a + 1), ((0, 1), framing.field(3)), ((1, 1), a * (a + 1)), ((0, 2), framing.field(-2))]:
        corr[1, b] = v
    data = monomials_from_correlators(1, 2, corr, 4)
    back = correlators_from_monomials(1, 2, data, framing)
    assert len(back) == 4  # every sorted b with sum <= 2
    for (g, b), v in back.items():
        assert corr.get(g, b) == v


def test_asymmetric_data_rejected():
    sym = Framing.symbol()
    # a pure x_1 m_1 term without its mirror image
    data = {(m1, m2): c_coefficient(m1, A) * c_coefficient(m2, A) * m1 * m1 * m2
            for m1 in range(1, 4) for m2 in range(1, 4)}
    with pytest.raises(InconsistentSystem):
        correlators_from_monomials(1, 2, data, sym)


def test_violations_detected():
    sym = Framing.symbol()
    corr = CorrelatorTable(sym)
    corr[1, (0,)] = A  # not reflection-invariant
    corr[1, (1,)] = (A * (A + 1)) ** 2  # degree too high
    corr[0, (0, 0, 1)] = RatFnA(1)  # beyond dimension
    corr[2, (1,)] = 1 / A  # not a polynomial
    problems = correlator_violations(corr)
    assert len(problems) == 4
