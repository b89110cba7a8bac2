"""Counts of irreducible characters of degree q^e of U_n(q), for e <= 3.

Two routes are provided and must agree: :func:`count` uses closed forms (with
a base table below each form's validity range), :func:`count_via_recursion`
runs the recursions in ``n`` seeded by the explicit small-``n`` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .pattern import linear_character_count, pattern_P, pattern_Q
from .qpoly import ONE, Q, ZERO, QPolynomial

MAX_E = 3


class UnsupportedDegree(ValueError):
    """Requested exponent lies outside the range covered by known formulas."""


class DomainError(ValueError):
    """A formula was requested outside its validity range in ``n``."""


def mu(n: int) -> int:
    """Largest exponent e with q^e a character degree of U_n."""
    if n < 1:
        raise ValueError("n must be positive")
    m, r = divmod(n, 2)
    return m * (m - 1) if r == 0 else m * m


def _qpow(k: int) -> QPolynomial:
    return QPolynomial.monomial(k)


def _check_e(e: int):
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e > MAX_E:
        raise UnsupportedDegree(f"only e <= {MAX_E} is covered (got e={e})")


# -- helper counts -----------------------------------------------------------

@lru_cache(maxsize=None)
def _n1(kind: str, n: int, i: int, j: int = 0) -> QPolynomial:
    pat = pattern_P(n, i) if kind == "P" else pattern_Q(n, i, j)
    return linear_character_count(pat)


def nq_P_n2(n: int) -> QPolynomial:
    """Number of degree-q characters of P_{n,2}."""
    if n < 3:
        raise DomainError("N_q(P_{n,2}) needs n >= 3")
    if n == 3:
        return ZERO
    if n == 4:
        return Q * (Q ** 2 - 1)
    return _qpow(n - 3) * (Q - 1) * (Q ** 2 + (n - 4) * Q + 1)


def nq_Q_n13(n: int) -> QPolynomial:
    """Number of degree-q characters of Q_{n,1,3}."""
    if n < 4:
        raise DomainError("N_q(Q_{n,1,3}) needs n >= 4")
    if n == 4:
        return ZERO
    if n == 5:
        return _qpow(3) * (Q ** 2 - 1)
    return _qpow(n - 2) * (Q - 1) * (Q ** 2 + (n - 5) * Q + 1)


# -- coefficient sextuple -----------------------------------------------------

_N = QPolynomial.x("n")
_CUBE = _N * (_N + 1) * (2 * _N + 1)

SEXTUPLE_POLYNOMIALS: dict[str, QPolynomial] = {
    "A": _N - 7,
    "B": 3 + (_N - 7) * (_N - 6),
    "C": 40 * (_N - 7) - Fraction(17, 4) * (_N + 8) * (_N - 7) + _CUBE / 12 - 64,
    "D": (_N - 7) * (7 * _N + 3) - _CUBE / 6 + 138,
    "E": (_N - 7) * (Fraction(-17, 4) * _N - 1) + _CUBE / 12 - 75,
    "F": 1 + (_N - 7) * (_N - 4) / 2,
}


class CoefficientSextuple(NamedTuple):
    A: int
    B: int
    C: int
    D: int
    E: int
    F: int


class IntegralityError(ArithmeticError):
    pass


def sextuple(n: int) -> CoefficientSextuple:
    if n < 7:
        raise DomainError("the sextuple form is valid for n >= 7")
    vals = []
    for name, poly in SEXTUPLE_POLYNOMIALS.items():
        v = poly(n)
        if v.denominator != 1:
            raise IntegralityError(f"{name}_{n} = {v} is not an integer")
        vals.append(int(v))
    return CoefficientSextuple(*vals)


def is_integer_valued(poly: QPolynomial, m: int | None = None, k: int = 0) -> bool:
    """True iff ``poly`` is an integer at the ``m + 1`` consecutive points k..k+m.

    With ``m`` at least the degree this certifies integrality at every integer.
    """
    if m is None:
        m = max(poly.degree, 0)
    return all(poly(x).denominator == 1 for x in range(k, k + m + 1))


# -- closed forms ------------------------------------------------------------

_BASE = {
    (4, 2): Q * (Q - 1),
    (5, 3): Q * (Q - 1) * (2 * Q - 1),
    (6, 3): Q ** 2 * (Q - 1) * (4 * Q ** 2 + Q - 3),
    (7, 3): Q ** 2 * (Q - 1) * (3 * Q ** 4 + 6 * Q ** 3 - 2 * Q ** 2 - 5 * Q + 1),
}


def _closed_e1(n: int) -> QPolynomial:
    return _qpow(n - 3) * (Q - 1) * ((n - 3) * Q + 1)


def _closed_e2(n: int) -> QPolynomial:
    inner = ((n - 5) * Q ** 3
             + (Fraction((n - 5) * (n - 4), 2) + 2) * Q ** 2
             + (1 - Fraction((n - 6) * (n - 5), 2)) * Q
             - n + 4)
    return _qpow(n - 4) * (Q - 1) * inner


def _closed_e3(n: int) -> QPolynomial:
    c = sextuple(n)
    inner = c.A * Q ** 5 + c.B * Q ** 4 + c.C * Q ** 3 + c.D * Q ** 2 + c.E * Q + c.F
    return _qpow(n - 5) * (Q - 1) * inner


def _assert_integral(poly: QPolynomial, n: int, e: int) -> QPolynomial:
    if not poly.has_integer_coefficients():
        raise IntegralityError(f"N_(q^{e})(U_{n}) = {poly} has non-integer coefficients")
    return poly


def count(n: int, e: int) -> QPolynomial:
    """N_{q^e}(U_n) as an exact polynomial in q."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_e(e)
    if e > mu(n):
        return ZERO
    if e == 0:
        out = _qpow(n - 1)
    elif e == 1:
        out = _closed_e1(n)
    elif e == 2:
        out = _BASE[(4, 2)] if n == 4 else _closed_e2(n)
    elif n in (5, 6):
        out = _BASE[(n, 3)]
    else:
        out = _closed_e3(n)
    return _assert_integral(out, n, e)


# -- recursions --------------------------------------------------------------

# Smallest n each recursion applies to; below it the base table is used.
RECURSION_START = {0: 2, 1: 5, 2: 6, 3: 8}


def _seed(n: int, e: int) -> QPolynomial:
    if e > mu(n):
        return ZERO
    if e == 0:
        return ONE  # n == 1
    if e == 1:
        return {3: Q - 1, 4: Q * (Q - 1) * (Q + 1)}[n]
    if e == 2:
        return {4: _BASE[(4, 2)], 5: Q * (Q - 1) * (2 * Q ** 2 + Q - 1)}[n]
    return _BASE[(n, 3)]


def _step(n: int, e: int, prev: dict[tuple[int, int], QPolynomial]) -> QPolynomial:
    """One step of the recursion for N_{q^e}(U_n) given smaller values in ``prev``."""
    if e == 0:
        return Q * prev[(n - 1, 0)]
    if e == 1:
        return Q * prev[(n - 1, 1)] + (Q - 1) * _n1("P", n - 1, 2)
    if e == 2:
        return (Q * prev[(n - 1, 2)] + Q * prev[(n - 1, 1)] - Q * prev[(n - 2, 1)]
                + (Q - 1) ** 2 * _n1("Q", n - 2, 1, 3))
    return (Q * prev[(n - 1, 3)] + Q * prev[(n - 1, 2)] - Q * prev[(n - 2, 2)]
            + (Q - 1) ** 2 * (nq_Q_n13(n - 2) + _n1("Q", n - 2, 2, 3) + _n1("Q", n - 2, 1, 4)))


_TABLE: dict[tuple[int, int], QPolynomial] = {(1, 0): ONE}


def _recursion_table(n_max: int) -> dict[tuple[int, int], QPolynomial]:
    table = _TABLE
    for m in range(2, n_max + 1):
        if (m, MAX_E) in table:
            continue
        for e in range(MAX_E + 1):
            if m < RECURSION_START[e]:
                table[(m, e)] = _seed(m, e)
            else:
                table[(m, e)] = _step(m, e, table)
    return table


def count_via_recursion(n: int, e: int) -> QPolynomial:
    """N_{q^e}(U_n) obtained by running the recursion in n from its seeds."""
    _check_e(e)
    if n < 2:
        raise DomainError(f"recursion for e={e} is defined for n >= 2")
    return _assert_integral(_recursion_table(n)[(n, e)], n, e)


def expanded_increment(n: int, e: int) -> QPolynomial:
    """N_{q^e}(U_n) - q N_{q^e}(U_{n-1}) in fully expanded form.

    Valid for n >= 5 (e=1), n >= 6 (e=2) and n >= 8 (e=3).
    """
    if e == 1 and n >= 5:
        return _qpow(n - 2) * (Q - 1)
    if e == 2 and n >= 6:
        return _qpow(n - 4) * (Q - 1) * (Q ** 3 + (n - 5) * Q ** 2 - (n - 6) * Q - 1)
    if e == 3 and n >= 8:
        inner = (Q ** 5 + (2 * n - 14) * Q ** 4
                 + (25 - 3 * n + Fraction((n - 6) * (n - 5), 2)) * Q ** 3
                 + (n - 11 - (n - 7) * (n - 6)) * Q ** 2
                 + (5 - n + Fraction((n - 8) * (n - 7), 2)) * Q
                 + n - 6)
        return _qpow(n - 5) * (Q - 1) * inner
    raise DomainError(f"no expanded increment for e={e}, n={n}")


def second_difference_e2(n: int) -> QPolynomial:
    """Expanded N_{q^2}(U_{n-1}) - N_{q^2}(U_{n-2}), valid for n >= 8."""
    if n < 8:
        raise DomainError("valid for n >= 8")
    inner = ((n - 6) * Q ** 4
             + (Fraction((n - 6) * (n - 5), 2) - (n - 7) + 2) * Q ** 3
             - ((n - 7) * (n - 6) + 1) * Q ** 2
             + (4 - n + Fraction((n - 8) * (n - 7), 2)) * Q
             + n - 6)
    return _qpow(n - 6) * (Q - 1) * inner


# -- basis change --------------------------------------------------------------

class BasisChange(NamedTuple):
    coefficients: list[int]
    nonnegative: bool


def to_qminus1_basis(poly: QPolynomial) -> BasisChange:
    """Coefficients of ``poly`` written as a polynomial in u = q - 1."""
    shifted = poly.shift(1)
    coeffs = shifted.int_coefficients()
    return BasisChange(coeffs, all(c >= 0 for c in coeffs))


# -- census container ----------------------------------------------------------

@dataclass
class DegreeCensus:
    """Map e -> N_{q^e}(U_n); polynomials when ``q`` is None, integers otherwise."""

    n: int
    q: int | None = None
    entries: dict[int, object] = field(default_factory=dict)

    @property
    def symbolic(self) -> bool:
        return self.q is None

    @classmethod
    def from_formulas(cls, n: int, q: int | None = None, e_max: int = MAX_E) -> "DegreeCensus":
        e_max = min(e_max, MAX_E)
        entries = {}
        for e in range(e_max + 1):
            poly = count(n, e)
            entries[e] = poly if q is None else poly.evaluate_int(q)
        return cls(n, q, entries)
