"""Exact univariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Union

Number = Union[int, Fraction]


class QPolynomial:
    """Polynomial in one variable (``q`` by default), coefficients low degree first.

    Instances are immutable and hashable; trailing zero coefficients are
    stripped so equality is structural.
    """

    __slots__ = ("_c", "var")

    def __init__(self, coeffs: Iterable[Number] = (), var: str = "q"):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)
        self.var = var

    @classmethod
    def const(cls, a: Number, var: str = "q") -> "QPolynomial":
        return cls([a], var)

    @classmethod
    def monomial(cls, k: int, a: Number = 1, var: str = "q") -> "QPolynomial":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [a], var)

    @classmethod
    def x(cls, var: str = "q") -> "QPolynomial":
        return cls.monomial(1, var=var)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._c)

    def int_coefficients(self) -> list[int]:
        if not self.has_integer_coefficients():
            raise ValueError(f"non-integer coefficients in {self}")
        return [int(c) for c in self._c]

    def _coerce(self, other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return QPolynomial([other], self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QPolynomial((a + b for a, b in zip_longest(self._c, other._c, fillvalue=0)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial((-a for a in self._c), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._c or not other._c:
            return QPolynomial((), self.var)
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return QPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = QPolynomial([1], self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other: Number):
        if isinstance(other, QPolynomial):
            return self.exact_div(other)
        return QPolynomial((a / Fraction(other) for a in self._c), self.var)

    def divmod(self, other: "QPolynomial") -> tuple["QPolynomial", "QPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = len(rem) - len(other._c)
        if dq < 0:
            return QPolynomial((), self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other._c[-1]
        for k in range(dq, -1, -1):
            f = rem[k + len(other._c) - 1] / lead
            quot[k] = f
            if f:
                for i, b in enumerate(other._c):
                    rem[k + i] -= f * b
        return QPolynomial(quot, self.var), QPolynomial(rem, self.var)

    def exact_div(self, other: "QPolynomial") -> "QPolynomial":
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return quot

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial([other])
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def evaluate_int(self, x: int) -> int:
        v = self(x)
        if v.denominator != 1:
            raise ValueError(f"{self} at {x} is not an integer")
        return int(v)

    def shift(self, a: Number) -> "QPolynomial":
        """Coefficients of ``P(u + a)`` as a polynomial in ``u``."""
        # Horner: P = c_0 + u'(c_1 + u'(...)) with u' = u + a
        a = Fraction(a)
        coeffs = list(self._c)
        if a.denominator == 1 and self.has_integer_coefficients():
            a, coeffs = int(a), [int(c) for c in coeffs]  # plain ints are much faster
        out: list = []
        for c in reversed(coeffs):
            nxt = [0] + out
            for j, v in enumerate(out):
                nxt[j] += a * v
            nxt[0] += c
            out = nxt
        return QPolynomial(out, self.var)

    def __repr__(self):
        return f"QPolynomial({[str(c) for c in self._c]!r}, var={self.var!r})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xs = self.var if k == 1 else f"{self.var}^{k}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


Q = QPolynomial.x()
ONE = QPolynomial.const(1)
ZERO = QPolynomial()
