"""Degree census through an abelian normal first-row subgroup.

When a pattern contains its whole first row, the first-row matrices form an
abelian normal subgroup M (a copy of F^{n-1}) complemented by the pattern
group H of the remaining pairs.  Irr(M) is identified with column vectors on
which H acts by chi -> Y^{-1} chi (Y the lower-right block).  Each H-orbit
contributes the degrees of its stabilizer, scaled by the orbit length.
"""

from __future__ import annotations

from collections import Counter

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..pattern import ClosedPattern
from .dixon import DegreeHistogram, character_degrees
from .groups import DEFAULT_BOUND, enumerate_group, subgroup


class UnsupportedGroup(ValueError):
    pass


def _check(pattern: ClosedPattern):
    n = pattern.n
    if n < 2 or any((1, j) not in pattern for j in range(2, n + 1)):
        raise UnsupportedGroup("pattern must contain every first-row pair (1, j)")


def first_row_orbits(h, p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orbits of H on F^{n-1} column vectors.

    Returns ``(vectors, labels, reps)``: every vector (row ``c`` encodes
    ``sum v_a p^a``), its orbit label, and the smallest code in each orbit.
    """
    m = h.n - 1
    codes = np.arange(p ** m, dtype=np.int64)
    vecs = np.zeros((codes.size, m), dtype=np.int64)
    rem = codes.copy()
    for a in range(m):
        rem, vecs[:, a] = np.divmod(rem, p)
    weights = p ** np.arange(m, dtype=np.int64)
    src, dst = [codes], [codes]
    for g in h.generators:
        yinv = h.mats[h.inverse[g]][1:, 1:].astype(np.int64)
        img = (vecs @ yinv.T) % p
        src.append(codes)
        dst.append(img @ weights)
    s, d = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(s.size, dtype=np.int8), (s, d)), shape=(codes.size,) * 2)
    _, labels = connected_components(graph, directed=True, connection="weak")
    k = int(labels.max()) + 1
    reps = np.full(k, codes.size, dtype=np.int64)
    np.minimum.at(reps, labels, codes)
    return vecs, labels, np.sort(reps)


def clifford_first_row_census(pattern: ClosedPattern, p: int, bound: int = DEFAULT_BOUND) -> DegreeHistogram:
    _check(pattern)
    h = enumerate_group(pattern.without_first_row(), p, bound=bound)
    vecs, labels, reps = first_row_orbits(h, p)
    sizes = np.bincount(labels)
    y = h.mats[:, 1:, 1:].astype(np.int64)
    total: Counter[int] = Counter()
    for rep in reps:
        chi = vecs[rep]
        orbit_len = int(sizes[labels[rep]])
        fixed = np.all((y @ chi) % p == chi, axis=1)
        stab = subgroup(h, fixed) if not fixed.all() else h
        if h.order != stab.order * orbit_len:
            raise AssertionError("orbit-stabilizer count mismatch")
        for d, mult in character_degrees(stab).counts.items():
            total[d * orbit_len] += mult
    return DegreeHistogram(dict(total))
