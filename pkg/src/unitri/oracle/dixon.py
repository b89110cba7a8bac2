"""Character degrees from the class algebra, computed modulo a prime l.

With class sums K_i and structure constants a_{ijk} (K_i K_j = sum_k a_{ijk} K_k),
the vector of central character values (omega_chi(K_k))_k is a common
eigenvector of the matrices M_i[j, k] = a_{ijk}.  Splitting F_l^k into common
eigenlines gives one line per irreducible character, and

    sum_i omega(K_i) omega(K_i') / |C_i| = |G| / chi(1)^2

(i' the inverse class) recovers chi(1)^2 modulo l.  Degrees are powers of p,
so the residue pins down the degree once l separates the candidates.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from sympy import isprime

from . import modular
from .groups import ConjugacyClassData, GroupTable, ResourceError, conjugacy_classes

PRODUCT_GUARD = 10 ** 10
_CHUNK_ENTRIES = 1 << 22  # int64 entries per product block


class SplitError(RuntimeError):
    """The class algebra did not split into one-dimensional common eigenspaces."""


@dataclass(frozen=True)
class DegreeHistogram:
    counts: dict[int, int]

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(sorted(self.counts.items())))

    @property
    def num_characters(self) -> int:
        return sum(self.counts.values())

    @property
    def sum_of_squares(self) -> int:
        return sum(d * d * m for d, m in self.counts.items())

    def get(self, degree: int) -> int:
        return self.counts.get(degree, 0)

    def exponents(self, p: int) -> dict[int, int]:
        """Re-key by log_p(degree); raises if some degree is not a power of p."""
        out = {}
        for d, m in self.counts.items():
            e = _log_exact(d, p)
            if e is None:
                raise ValueError(f"degree {d} is not a power of {p}")
            out[e] = m
        return out

    def __str__(self) -> str:
        return "{" + ", ".join(f"{d}:{m}" for d, m in self.counts.items()) + "}"


def _log_exact(d: int, p: int) -> int | None:
    e = 0
    while d % p == 0:
        d //= p
        e += 1
    return e if d == 1 else None


def select_modulus(order: int, exponent: int, p: int, start: int | None = None) -> int:
    """Smallest prime l = 1 (mod exponent), l > 2 sqrt|G|, separating p-power squares."""
    floor = 2 * math.isqrt(order) + 1 if start is None else start
    emax = _max_degree_exponent(order, p)
    ell = ((floor // exponent) + 1) * exponent + 1
    while True:
        if isprime(ell):
            squares = {pow(p, 2 * e, ell) for e in range(emax + 1)}
            if len(squares) == emax + 1:
                return ell
        ell += exponent


def _max_degree_exponent(order: int, p: int) -> int:
    e = 0
    while p ** (2 * (e + 1)) <= order:
        e += 1
    return e


class ClassAlgebra:
    """Class matrices M_i, computed on demand (not kept: k^2 entries each)."""

    def __init__(self, group: GroupTable, classes: ConjugacyClassData):
        self.group = group
        self.classes = classes
        reps = group.mats[classes.representatives].astype(np.int64)
        k, n = classes.count, group.n
        # zcat[a, k*n + b] = Z_k[a, b]
        self._zcat = reps.transpose(1, 0, 2).reshape(n, k * n)
        self._members = None

    def _members_of(self, i: int) -> np.ndarray:
        if self._members is None:
            order = np.argsort(self.classes.class_of, kind="stable")
            bounds = np.concatenate([[0], np.cumsum(self.classes.sizes)])
            self._members = (order, bounds)
        order, bounds = self._members
        return order[bounds[i]:bounds[i + 1]]

    def structure_matrix(self, i: int) -> np.ndarray:
        """Exact integer matrix with entry [j, k] = a_{ijk}."""
        g, cl = self.group, self.classes
        k, n, p = cl.count, g.n, g.p
        out = np.zeros(k * k, dtype=np.int64)
        members = self._members_of(i)
        col = np.arange(k, dtype=np.int64)
        step = max(1, _CHUNK_ENTRIES // (n * n * k))
        for s in range(0, members.size, step):
            xs = members[s:s + step]
            xinv = g.mats[g.inverse[xs]].astype(np.int64)
            prod = (xinv @ self._zcat).reshape(xs.size, n, k, n)
            digits = prod[:, g._rows, :, g._cols] % p        # (|P|, c, k)
            ids = np.tensordot(g._weights, digits, axes=(0, 0))  # (c, k)
            lab = cl.class_of[g.local(ids.reshape(-1))].reshape(xs.size, k)
            out += np.bincount((lab * k + col).reshape(-1), minlength=k * k)
        mat = out.reshape(k, k)
        if not np.all(mat.sum(axis=0) == cl.sizes[i]):
            raise AssertionError("class constants do not sum to the class size")
        return mat


def _normalize(basis: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    red, piv = modular.rref(basis.T, ell)
    return red.T.copy(), piv


def split_class_algebra(algebra: ClassAlgebra, ell: int) -> np.ndarray:
    """Common eigenvectors (rows) normalized to 1 at the identity class."""
    cl = algebra.classes
    k = cl.count
    spaces = [(np.eye(k, dtype=np.int64), list(range(k)))]
    order = sorted(range(1, k), key=lambda i: (int(cl.sizes[i]), int(cl.representatives[i])))
    for i in order:
        if all(b.shape[1] == 1 for b, _ in spaces):
            break
        m = algebra.structure_matrix(i) % ell
        nxt = []
        for b, piv in spaces:
            d = b.shape[1]
            if d == 1:
                nxt.append((b, piv))
                continue
            r = (m @ b)[piv, :] % ell
            lams = modular.roots(modular.charpoly(r, ell), ell)
            if len(lams) == 1:
                if not np.array_equal(r, (lams[0] * np.eye(d, dtype=np.int64)) % ell):
                    raise SplitError("restricted class matrix is not diagonalizable")
                nxt.append((b, piv))
                continue
            got = 0
            for lam in lams:
                null = modular.nullspace((r - lam * np.eye(d, dtype=np.int64)) % ell, ell)
                got += null.shape[1]
                nxt.append(_normalize((b @ null) % ell, ell))
            if got != d:
                raise SplitError("eigenspaces do not fill the subspace")
        spaces = nxt
    if any(b.shape[1] != 1 for b, _ in spaces):
        raise SplitError("class matrices did not separate all characters")
    vecs = np.stack([b[:, 0] for b, _ in spaces])
    lead = vecs[:, 0]
    if np.any(lead == 0):
        raise SplitError("eigenvector vanishes at the identity class")
    inv = np.array([pow(int(x), -1, ell) for x in lead], dtype=np.int64)
    return (vecs * inv[:, None]) % ell


def character_degrees(group: GroupTable, classes: ConjugacyClassData | None = None,
                      max_modulus_tries: int = 4) -> DegreeHistogram:
    if classes is None:
        classes = conjugacy_classes(group)
    k, order, p = classes.count, group.order, group.p
    if k * order > PRODUCT_GUARD:
        raise ResourceError(f"k*|G| = {k * order} exceeds {PRODUCT_GUARD}")
    if k == order:
        return DegreeHistogram({1: order})
    algebra = ClassAlgebra(group, classes)
    ell = select_modulus(order, group.exponent, p)
    last_err = None
    for _ in range(max_modulus_tries):
        try:
            return _degrees_mod(algebra, ell)
        except SplitError as err:
            last_err = err
            ell = select_modulus(order, group.exponent, p, start=ell + 1)
    raise SplitError(f"no modulus split the class algebra: {last_err}")


def _degrees_mod(algebra: ClassAlgebra, ell: int) -> DegreeHistogram:
    cl, g = algebra.classes, algebra.group
    order, p = g.order, g.p
    vecs = split_class_algebra(algebra, ell)
    inv_sizes = np.array([pow(int(s), -1, ell) for s in cl.sizes], dtype=np.int64)
    partner = vecs[:, cl.inverse_class]
    norms = ((vecs * partner) % ell * inv_sizes[None, :]).sum(axis=1) % ell
    emax = _max_degree_exponent(order, p)
    table = {pow(p, 2 * e, ell): p ** e for e in range(emax + 1)}
    hist: Counter[int] = Counter()
    for s in norms:
        s = int(s)
        if s == 0:
            raise SplitError("degenerate norm")
        sq = (order % ell) * pow(s, -1, ell) % ell
        if sq not in table:
            raise SplitError("degree residue matches no power of p")
        hist[table[sq]] += 1
    result = DegreeHistogram(dict(hist))
    if result.sum_of_squares != order or result.num_characters != cl.count:
        raise SplitError("recovered degrees violate the sum-of-squares identity")
    return result
