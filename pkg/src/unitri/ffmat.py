"""Exact arithmetic over prime fields and small dense matrices.

Everything here is pure Python and immutable.  The oracle module keeps its
own vectorized numpy representation for whole groups; this module is the
reference carrier used by the orbit machinery and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import isprime


class FieldError(ValueError):
    """Raised on invalid field construction or an impossible field operation."""


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise FieldError(f"modulus {self.p!r} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in a field")
        return pow(a, -1, self.p)

    def units(self) -> range:
        return range(1, self.p)


def field_ops(field: PrimeField, a: int, b: int, op: str) -> int:
    """Dispatch one of ``add``, ``sub``, ``mul``, ``inv`` (``b`` ignored for inv)."""
    if op == "add":
        return field.add(a, b)
    if op == "sub":
        return field.sub(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(a)
    raise ValueError(f"unknown field operation {op!r}")


@dataclass(frozen=True)
class FieldMatrix:
    """Dense ``rows x cols`` matrix over a prime field, entries row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]
    field: PrimeField

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        p = self.field.p
        for x in self.entries:
            if not 0 <= x < p:
                raise ValueError(f"entry {x} is not a canonical residue mod {p}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], field: PrimeField) -> "FieldMatrix":
        s = len(rows)
        t = len(rows[0]) if s else 0
        if any(len(r) != t for r in rows):
            raise ValueError("ragged rows")
        return cls(s, t, tuple(x % field.p for r in rows for x in r), field)

    @classmethod
    def zeros(cls, s: int, t: int, field: PrimeField) -> "FieldMatrix":
        return cls(s, t, (0,) * (s * t), field)

    @classmethod
    def identity(cls, n: int, field: PrimeField) -> "FieldMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)), field)

    @classmethod
    def elementary(cls, s: int, t: int, i: int, j: int, field: PrimeField, f: int = 1) -> "FieldMatrix":
        """``f * E_{i,j}`` with 1-based ``(i, j)``."""
        ent = [0] * (s * t)
        ent[(i - 1) * t + (j - 1)] = f % field.p
        return cls(s, t, tuple(ent), field)

    @classmethod
    def transvection(cls, n: int, i: int, j: int, field: PrimeField, a: int = 1) -> "FieldMatrix":
        """``I_n + a E_{i,j}`` with 1-based indices, ``i != j``."""
        ent = [int(r == c) for r in range(n) for c in range(n)]
        ent[(i - 1) * n + (j - 1)] = a % field.p
        return cls(n, n, tuple(ent), field)

    # -- access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """0-based ``(row, col)`` access."""
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        t = self.cols
        return [list(self.entries[r * t:(r + 1) * t]) for r in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_unitriangular(self) -> bool:
        if self.rows != self.cols:
            return False
        n = self.rows
        for i in range(n):
            for j in range(i + 1):
                if self[i, j] != (1 if i == j else 0):
                    return False
        return True

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.to_rows())

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        return mat_mul(self, other)


def mat_mul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    if a.field != b.field:
        raise ValueError("matrices over different fields")
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.shape} x {b.shape}")
    p = a.field.p
    s, m, t = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    out = []
    for i in range(s):
        row = ae[i * m:(i + 1) * m]
        for j in range(t):
            acc = 0
            for k in range(m):
                if row[k]:
                    acc += row[k] * be[k * t + j]
            out.append(acc % p)
    return FieldMatrix(s, t, tuple(out), a.field)


def unitri_inverse(a: FieldMatrix) -> FieldMatrix:
    """Inverse of a unitriangular matrix by back substitution."""
    if not a.is_unitriangular():
        raise ValueError("matrix is not unitriangular")
    n, p = a.rows, a.field.p
    # Solve A X = I column by column; X is again unitriangular.
    x = [[int(i == j) for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = 0
            for k in range(i + 1, j + 1):
                acc += a[i, k] * x[k][j]
            x[i][j] = (-acc) % p
    return FieldMatrix.from_rows(x, a.field)


# -- element encoding -------------------------------------------------------

def _positions(pattern) -> tuple[tuple[int, int], ...]:
    return tuple(pattern.pairs)


def encode_element(a: FieldMatrix, pattern) -> int:
    """Mixed-radix id of a pattern-group element.

    Digit ``r`` is the entry at the ``r``-th pattern position in row-major
    order and carries weight ``p**r``.
    """
    if a.rows != pattern.n or not a.is_unitriangular():
        raise ValueError("not a unitriangular matrix of the pattern's size")
    allowed = set(pattern.pairs)
    n = a.rows
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j] and (i + 1, j + 1) not in allowed:
                raise ValueError(f"nonzero entry at off-pattern position ({i + 1},{j + 1})")
    p = a.field.p
    code = 0
    for r, (i, j) in enumerate(_positions(pattern)):
        code += a[i - 1, j - 1] * p ** r
    return code


def decode_element(code: int, pattern, field: PrimeField) -> FieldMatrix:
    p = field.p
    size = p ** len(pattern.pairs)
    if not 0 <= code < size:
        raise ValueError(f"id {code} outside [0, {size})")
    n = pattern.n
    ent = [int(r == c) for r in range(n) for c in range(n)]
    for i, j in _positions(pattern):
        code, d = divmod(code, p)
        ent[(i - 1) * n + (j - 1)] = d
    return FieldMatrix(n, n, tuple(ent), field)


# -- text format --------------------------------------------------------------

class MatrixParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def parse_matrix_text(text: str) -> FieldMatrix:
    """Parse the ``s t p`` header format followed by ``s`` rows of ``t`` residues."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MatrixParseError(1, "empty input")
    head = lines[0].split()
    if len(head) != 3:
        raise MatrixParseError(1, "header must be 's t p'")
    try:
        s, t, p = (int(x) for x in head)
    except ValueError:
        raise MatrixParseError(1, "header values must be integers") from None
    if s < 1 or t < 1:
        raise MatrixParseError(1, "dimensions must be positive")
    try:
        field = PrimeField(p)
    except FieldError as exc:
        raise MatrixParseError(1, str(exc)) from None
    if len(lines) - 1 < s:
        raise MatrixParseError(len(lines) + 1, f"expected {s} matrix rows, got {len(lines) - 1}")
    if len(lines) - 1 > s:
        raise MatrixParseError(s + 2, f"unexpected extra row (matrix has {s} rows)")
    rows = []
    for k, line in enumerate(lines[1:], start=2):
        parts = line.split(" ")
        if len(parts) != t:
            raise MatrixParseError(k, f"expected {t} entries separated by single spaces")
        try:
            vals = [int(x) for x in parts]
        except ValueError:
            raise MatrixParseError(k, "entries must be integers") from None
        if any(not 0 <= v < p for v in vals):
            raise MatrixParseError(k, f"entries must lie in [0, {p})")
        rows.append(vals)
    return FieldMatrix.from_rows(rows, field)


def format_matrix_text(a: FieldMatrix) -> str:
    return f"{a.rows} {a.cols} {a.field.p}\n{a}\n"


def iter_all_matrices(s: int, t: int, field: PrimeField) -> Iterable[FieldMatrix]:
    """Every matrix of ``F^{s x t}``, ordered by row-major entry tuple."""
    from itertools import product

    for ent in product(range(field.p), repeat=s * t):
        yield FieldMatrix(s, t, ent, field)
