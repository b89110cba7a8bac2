"""Closed patterns and the pattern subgroups of U_n.

A pattern is a set of 1-based pairs ``(i, j)`` with ``i < j``; it is closed
when ``(i, j), (j, k)`` in the set forces ``(i, k)``.  The pattern group is the
set of unitriangular matrices supported on the diagonal plus the pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .qpoly import QPolynomial


@dataclass(frozen=True)
class ClosedPattern:
    n: int
    pairs: tuple[tuple[int, int], ...]
    _set: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ps = tuple(sorted(set(self.pairs)))
        _check_bounds(self.n, ps)
        if not is_closed(ps):
            raise ValueError("pattern is not closed")
        object.__setattr__(self, "pairs", ps)
        object.__setattr__(self, "_set", frozenset(ps))

    def __contains__(self, pair) -> bool:
        return pair in self._set

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def order_exponent(self) -> int:
        """``log_q`` of the group order."""
        return len(self.pairs)

    def digest_key(self) -> str:
        return f"{self.n}:" + ",".join(f"{i}-{j}" for i, j in self.pairs)

    def without_first_row(self) -> "ClosedPattern":
        return ClosedPattern(self.n, tuple(pr for pr in self.pairs if pr[0] != 1))

    def __and__(self, other: "ClosedPattern") -> "ClosedPattern":
        if self.n != other.n:
            raise ValueError("patterns of different sizes")
        return ClosedPattern(self.n, tuple(self._set & other._set))


def _check_bounds(n: int, pairs: Iterable[tuple[int, int]]):
    if n < 1:
        raise ValueError("pattern size must be positive")
    for i, j in pairs:
        if not 1 <= i < j <= n:
            raise ValueError(f"pair ({i},{j}) out of range for n={n}")


def is_closed(pairs: Iterable[tuple[int, int]]) -> bool:
    s = set(pairs)
    out: dict[int, list[int]] = {}
    for i, j in s:
        out.setdefault(i, []).append(j)
    for i, j in s:
        for k in out.get(j, ()):
            if (i, k) not in s:
                return False
    return True


def closure(n: int, pairs: Iterable[tuple[int, int]]) -> ClosedPattern:
    """Smallest closed pattern containing ``pairs``."""
    s = set(pairs)
    _check_bounds(n, s)
    # Warshall: reachability over the strict order i < j.
    for j in range(1, n + 1):
        left = [i for i in range(1, j) if (i, j) in s]
        right = [k for k in range(j + 1, n + 1) if (j, k) in s]
        for i in left:
            for k in right:
                s.add((i, k))
    return ClosedPattern(n, tuple(s))


def pattern_U(n: int) -> ClosedPattern:
    return ClosedPattern(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def pattern_P(n: int, i: int) -> ClosedPattern:
    """Column ``i`` trivial."""
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    return ClosedPattern(n, tuple(pr for pr in pattern_U(n).pairs if pr[1] != i))


def pattern_Q(n: int, i1: int, i2: int) -> ClosedPattern:
    """Column ``i1`` trivial and column ``i2`` trivial except at ``(i1, i2)``."""
    if not 1 <= i1 < i2 <= n:
        raise ValueError(f"need 1 <= i1 < i2 <= n, got ({i1},{i2}), n={n}")
    drop = {(y, i1) for y in range(1, i1)} | {(x, i2) for x in range(1, i2) if x != i1}
    return ClosedPattern(n, tuple(pr for pr in pattern_U(n).pairs if pr not in drop))


def minimal_pairs(pattern: ClosedPattern) -> tuple[tuple[int, int], ...]:
    """Pairs of the pattern that are not the end-to-end composite of a chain."""
    return tuple(pr for pr in pattern.pairs if not _has_chain(pattern, *pr))


def _has_chain(pattern: ClosedPattern, i: int, k: int) -> bool:
    # Depth-first search for i -> j_1 -> ... -> k through pattern pairs, at least two steps.
    s = pattern._set
    stack = [j for j in range(i + 1, k) if (i, j) in s]
    seen = set(stack)
    while stack:
        j = stack.pop()
        if (j, k) in s:
            return True
        for m in range(j + 1, k):
            if (j, m) in s and m not in seen:
                seen.add(m)
                stack.append(m)
    return False


def derived_pattern(pattern: ClosedPattern) -> ClosedPattern:
    """Pattern of the commutator subgroup: the non-minimal pairs."""
    mins = set(minimal_pairs(pattern))
    return ClosedPattern(pattern.n, tuple(pr for pr in pattern.pairs if pr not in mins))


def linear_character_count(pattern: ClosedPattern) -> QPolynomial:
    return QPolynomial.monomial(len(minimal_pairs(pattern)))


def pattern_by_kind(kind: str, n: int, i: int | None = None, j: int | None = None) -> ClosedPattern:
    kind = kind.upper()
    if kind == "U":
        return pattern_U(n)
    if kind == "P":
        if i is None:
            raise ValueError("pattern P needs --i")
        return pattern_P(n, i)
    if kind == "Q":
        if i is None or j is None:
            raise ValueError("pattern Q needs --i and --j")
        return pattern_Q(n, i, j)
    raise ValueError(f"unknown pattern kind {kind!r}")
