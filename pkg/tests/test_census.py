from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from unitri import census as cen
from unitri.census import (
    SEXTUPLE_POLYNOMIALS,
    count,
    count_via_recursion,
    expanded_increment,
    is_integer_valued,
    mu,
    nq_P_n2,
    nq_Q_n13,
    second_difference_e2,
    sextuple,
    to_qminus1_basis,
)
from unitri.qpoly import QPolynomial

q = QPolynomial.x()


def test_mu():
    assert mu(5) == 4
    assert mu(6) == 6
    assert mu(2) == 0
    assert [mu(n) for n in range(1, 10)] == [0, 0, 1, 2, 4, 6, 9, 12, 16]


def test_count_examples():
    assert count(3, 1) == q - 1
    assert count(5, 2) == q * (q - 1) * (2 * q ** 2 + q - 1)
    assert count(4, 2) == q * (q - 1)
    assert count(7, 3) == q ** 2 * (q - 1) * (3 * q ** 4 + 6 * q ** 3 - 2 * q ** 2 - 5 * q + 1)
    assert count(5, 3)(2) == 6
    assert count(4, 1) == q * (q - 1) * (q + 1)
    assert count(6, 3) == q ** 2 * (q - 1) * (4 * q ** 2 + q - 3)


def test_count_degree_zero():
    for n in range(1, 30):
        assert count(n, 0) == q ** (n - 1)
    for n in range(2, 30):
        assert count(n, 0) == q * count(n - 1, 0)


def test_count_vanishes_above_mu():
    for n in range(1, 8):
        for e in range(cen.MAX_E + 1):
            if e > mu(n):
                assert count(n, e).is_zero()
            else:
                assert not count(n, e).is_zero()


def test_count_rejects_e4():
    with pytest.raises(cen.UnsupportedDegree):
        count(6, 4)
    with pytest.raises(cen.UnsupportedDegree):
        count_via_recursion(6, 4)


def test_sum_of_squares_u4_u5():
    """At q = 2, 3 the e <= 3 counts leave room only for the known top-degree counts."""
    for qq, top in ((2, 1), (3, 4)):
        total = sum(count(5, e)(qq) * qq ** (2 * e) for e in range(4))
        assert qq ** 10 - total == top * qq ** 8
    for qq in (2, 3, 5):
        assert sum(count(4, e)(qq) * qq ** (2 * e) for e in range(3)) == qq ** 6


def test_closed_form_not_extrapolated_below_range():
    # the general e = 3 expression evaluated at n = 6 is not N_{q^3}(U_6)
    c = [p(6) for p in SEXTUPLE_POLYNOMIALS.values()]
    naive = (q - 1) * q * sum((ci * q ** (5 - k) for k, ci in enumerate(c)), QPolynomial())
    assert naive(2) == 52
    assert count(6, 3)(2) == 60


def test_recursion_examples():
    assert count_via_recursion(6, 2)(2) == 80
    assert 2 * count(5, 2)(2) + 4 * 11 == 80
    assert count_via_recursion(8, 3)(2) == 1208
    assert count(7, 3)(2) == 316
    assert count_via_recursion(5, 1) == q ** 2 * (q - 1) * (2 * q + 1)


@pytest.mark.parametrize("e,start", [(1, 5), (2, 6), (3, 8)])
def test_recursion_equals_closed_form(e, start):
    for n in range(start, 41):
        assert count_via_recursion(n, e) == count(n, e)


@pytest.mark.parametrize("e,start", [(1, 5), (2, 6), (3, 8)])
def test_expanded_increment(e, start):
    for n in range(start, 41):
        assert count(n, e) - q * count(n - 1, e) == expanded_increment(n, e)


def test_second_difference():
    for n in range(8, 41):
        assert count(n - 1, 2) - count(n - 2, 2) == second_difference_e2(n)


def test_e10_consistency():
    for n in range(5, 41):
        lhs = (count(n, 2) - q * count(n - 1, 2)) / (q - 1) - q ** (n - 2)
        assert lhs == nq_P_n2(n - 1)


def test_helper_counts():
    assert nq_P_n2(3).is_zero()
    assert nq_P_n2(4) == q * (q ** 2 - 1)
    assert nq_P_n2(5)(2) == 28
    assert nq_Q_n13(4).is_zero()
    assert nq_Q_n13(5) == q ** 3 * (q ** 2 - 1)
    assert nq_Q_n13(6)(2) == 112
    for n in range(4, 40):
        assert nq_Q_n13(n) == q ** 2 * nq_P_n2(n - 1)
    with pytest.raises(cen.DomainError):
        nq_P_n2(2)
    with pytest.raises(cen.DomainError):
        nq_Q_n13(3)


def test_sextuple_examples():
    assert sextuple(7) == (0, 3, 6, -2, -5, 1)
    assert sextuple(8) == (1, 5, 10, -7, -8, 3)
    assert sextuple(7).F == 1
    with pytest.raises(cen.DomainError):
        sextuple(6)


def test_sextuple_n8_against_recursion_at_q2():
    c = sextuple(8)
    direct = 2 ** 3 * 1 * (c.A * 32 + c.B * 16 + c.C * 8 + c.D * 4 + c.E * 2 + c.F)
    assert direct == 2 * 316 + expanded_increment(8, 3)(2) == 1208


def test_is_integer_valued():
    n = QPolynomial.x("n")
    assert is_integer_valued(n * (n + 1) / 2, 2, 0)
    assert not is_integer_valued(n / 2, 1, 0)
    assert is_integer_valued(SEXTUPLE_POLYNOMIALS["C"], 3, 7)
    for name in "ABCDEF":
        poly = SEXTUPLE_POLYNOMIALS[name]
        assert poly.degree <= 3
        assert is_integer_valued(poly, poly.degree, 7)
    assert not SEXTUPLE_POLYNOMIALS["C"].has_integer_coefficients()


@given(st.integers(-50, 50), st.integers(0, 4), st.data())
def test_integer_valued_certifies_everywhere(k, m, data):
    """Probing m+1 consecutive points agrees with integrality over a wide window."""
    n = QPolynomial.x("n")
    # binomial-basis combination with integer weights is integer valued
    weights = data.draw(st.lists(st.integers(-5, 5), min_size=m + 1, max_size=m + 1))
    shift = data.draw(st.sampled_from([Fraction(0), Fraction(1, 2)]))
    poly = QPolynomial()
    basis = QPolynomial.const(1, "n")
    for r, w in enumerate(weights):
        poly = poly + w * basis
        basis = basis * (n - r) / (r + 1)
    poly = poly + shift
    probed = is_integer_valued(poly, m, k)
    window = all(poly(x).denominator == 1 for x in range(-100, 101))
    assert probed == window


def test_to_qminus1_examples():
    b = to_qminus1_basis(count(4, 1))
    assert b.coefficients == [0, 2, 3, 1] and b.nonnegative
    assert to_qminus1_basis(q ** 2).coefficients == [1, 2, 1]
    assert to_qminus1_basis(count(5, 3)).coefficients == [0, 1, 3, 2]
    assert not to_qminus1_basis(q ** 2 - 3 * q + 3).nonnegative  # u^2 - u + 1


@given(st.lists(st.integers(-20, 20), max_size=8))
def test_qminus1_basis_evaluates_back(coeffs):
    poly = QPolynomial(coeffs)
    u = to_qminus1_basis(poly).coefficients
    for x in range(-3, 6):
        assert sum(c * (x - 1) ** k for k, c in enumerate(u)) == poly(x)


def test_isaacs_small():
    for n in range(2, 30):
        for e in range(4):
            assert to_qminus1_basis(count(n, e)).nonnegative


def test_degree_census_container():
    dc = cen.DegreeCensus.from_formulas(5, q=2)
    assert dc.entries == {0: 16, 1: 20, 2: 18, 3: 6}
    assert not dc.symbolic
    sym = cen.DegreeCensus.from_formulas(3)
    assert sym.symbolic and sym.entries[2].is_zero()
