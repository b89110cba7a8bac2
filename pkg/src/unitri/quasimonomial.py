"""Quasimonomial canonical forms under the action X -> A^{-1} X B of U_s x U_t."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb, perm
from typing import Iterator

from .ffmat import FieldMatrix, PrimeField, iter_all_matrices, mat_mul, unitri_inverse
from .qpoly import Q, QPolynomial

BRUTE_FORCE_LIMIT = 10 ** 6


class ResourceError(RuntimeError):
    """A brute-force computation would exceed its configured size guard."""


class UnsupportedShape(ValueError):
    """No closed orbit-size formula is available for this representative."""


def is_quasimonomial(x: FieldMatrix) -> bool:
    seen_cols = set()
    for i in range(x.rows):
        nz = [j for j in range(x.cols) if x[i, j]]
        if len(nz) > 1:
            return False
        if nz:
            if nz[0] in seen_cols:
                return False
            seen_cols.add(nz[0])
    return True


@dataclass(frozen=True)
class QuasimonomialForm:
    """Terms ``(i, j, f)`` (1-based) sorted by column."""

    s: int
    t: int
    terms: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        cols = [j for _, j, _ in self.terms]
        rows = [i for i, _, _ in self.terms]
        if cols != sorted(cols) or len(set(cols)) != len(cols):
            raise ValueError("columns must be strictly increasing")
        if len(set(rows)) != len(rows):
            raise ValueError("rows must be distinct")
        if any(f == 0 for _, _, f in self.terms):
            raise ValueError("coefficients must be nonzero")
        for i, j, _ in self.terms:
            if not (1 <= i <= self.s and 1 <= j <= self.t):
                raise ValueError(f"term ({i},{j}) out of range")

    @property
    def length(self) -> int:
        return len(self.terms)

    def to_matrix(self, field: PrimeField) -> FieldMatrix:
        ent = [0] * (self.s * self.t)
        for i, j, f in self.terms:
            ent[(i - 1) * self.t + (j - 1)] = f % field.p
        return FieldMatrix(self.s, self.t, tuple(ent), field)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{f}@({i},{j})" for i, j, f in self.terms)


def standard_form(x: FieldMatrix) -> QuasimonomialForm:
    if not is_quasimonomial(x):
        raise ValueError("matrix is not quasimonomial")
    terms = sorted(
        ((i + 1, j + 1, x[i, j]) for i in range(x.rows) for j in range(x.cols) if x[i, j]),
        key=lambda tr: tr[1],
    )
    return QuasimonomialForm(x.rows, x.cols, tuple(terms))


@dataclass(frozen=True)
class Reduction:
    Q: FieldMatrix
    A: FieldMatrix
    B: FieldMatrix


def reduce(x: FieldMatrix) -> Reduction:
    """Bring ``x`` to its quasimonomial orbit representative ``Q = A^{-1} x B``.

    Rows are processed bottom-up.  Row ``r`` is first cleared at the pivot
    columns of the rows below it (adding multiples of those later rows); its
    first surviving nonzero entry then becomes a pivot and clears the rest of
    the row by adding multiples of that earlier column.
    """
    field = x.field
    p = field.p
    s, t = x.rows, x.cols
    m = x.to_rows()
    # a_inv accumulates the row operations (so Q = a_inv . x . b).
    a_inv = [[int(i == j) for j in range(s)] for i in range(s)]
    b = [[int(i == j) for j in range(t)] for i in range(t)]
    pivot_of_row: dict[int, int] = {}

    for r in range(s - 1, -1, -1):
        for i2 in sorted(pivot_of_row):
            j2 = pivot_of_row[i2]
            if m[r][j2]:
                c = (-m[r][j2] * field.inv(m[i2][j2])) % p
                # row r += c * row i2, i2 > r
                m[r] = [(u + c * v) % p for u, v in zip(m[r], m[i2])]
                a_inv[r] = [(u + c * v) % p for u, v in zip(a_inv[r], a_inv[i2])]
        lead = next((j for j in range(t) if m[r][j]), None)
        if lead is None:
            continue
        inv_lead = field.inv(m[r][lead])
        for j in range(lead + 1, t):
            if m[r][j]:
                c = (-m[r][j] * inv_lead) % p
                # column j += c * column lead, lead < j
                for row in m:
                    row[j] = (row[j] + c * row[lead]) % p
                for row in b:
                    row[j] = (row[j] + c * row[lead]) % p
        pivot_of_row[r] = lead

    qm = FieldMatrix.from_rows(m, field)
    a = unitri_inverse(FieldMatrix.from_rows(a_inv, field))
    return Reduction(qm, a, FieldMatrix.from_rows(b, field))


def apply_action(x: FieldMatrix, a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    return mat_mul(mat_mul(unitri_inverse(a), x), b)


def _form_key(form: QuasimonomialForm):
    return (form.length, tuple(v for tr in form.terms for v in tr))


def enumerate_representatives(s: int, t: int, field: PrimeField) -> Iterator[FieldMatrix]:
    """All quasimonomial matrices of ``F^{s x t}``, by length then terms."""
    if s < 1 or t < 1:
        raise ValueError("dimensions must be positive")
    forms = []
    for k in range(min(s, t) + 1):
        for cols in combinations(range(1, t + 1), k):
            for rows in permutations(range(1, s + 1), k):
                for coeffs in product(field.units(), repeat=k):
                    forms.append(QuasimonomialForm(s, t, tuple(zip(rows, cols, coeffs))))
    forms.sort(key=_form_key)
    for f in forms:
        yield f.to_matrix(field)


def count_representatives(s: int, t: int) -> QPolynomial:
    """Number of quasimonomial ``s x t`` matrices as a polynomial in q."""
    return sum(
        (comb(t, k) * perm(s, k) * (Q - 1) ** k for k in range(min(s, t) + 1)),
        QPolynomial(),
    )


def _transvections(n: int, field: PrimeField) -> list[FieldMatrix]:
    return [
        FieldMatrix.transvection(n, k, k + 1, field, a)
        for k in range(1, n)
        for a in field.units()
    ]


def brute_orbits(s: int, t: int, field: PrimeField, limit: int = BRUTE_FORCE_LIMIT) -> list[list[FieldMatrix]]:
    """Partition ``F^{s x t}`` into orbits by breadth-first closure.

    Each orbit is sorted by entry tuple; orbits are ordered by their first
    member, so the result does not depend on generator order.
    """
    total = field.p ** (s * t)
    if total > limit:
        raise ResourceError(f"{total} matrices exceeds the brute-force limit {limit}")
    left = [unitri_inverse(g) for g in _transvections(s, field)]
    right = _transvections(t, field)
    seen: set[tuple[int, ...]] = set()
    orbits = []
    for x in iter_all_matrices(s, t, field):
        if x.entries in seen:
            continue
        seen.add(x.entries)
        orbit = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            nbrs = [mat_mul(g, y) for g in left] + [mat_mul(y, g) for g in right]
            for z in nbrs:
                if z.entries not in seen:
                    seen.add(z.entries)
                    orbit.append(z)
                    queue.append(z)
        orbit.sort(key=lambda m: m.entries)
        orbits.append(orbit)
    orbits.sort(key=lambda o: o[0].entries)
    return orbits


def orbit_size_exponent(form: QuasimonomialForm) -> int:
    """log_q of the orbit size of a representative, for t in {1, 2}."""
    if form.t == 1:
        if form.length == 0:
            return 0
        (i, _, _), = form.terms
        return i - 1
    if form.t == 2:
        if form.length == 0:
            return 0
        if form.length == 1:
            (i, j, _), = form.terms
            return i if j == 1 else i - 1
        (i1, _, _), (i2, _, _) = form.terms
        return i1 + i2 - 1 if i1 > i2 else i1 + i2 - 2
    raise UnsupportedShape(f"no orbit-size formula for t={form.t}; use brute_orbits")


def orbit_size_formula(form: QuasimonomialForm, q: int) -> int:
    return q ** orbit_size_exponent(form)
