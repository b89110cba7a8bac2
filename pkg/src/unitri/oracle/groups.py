"""Enumerated pattern groups (and their subgroups) as numpy arrays.

Elements are stored as an ``(N, n, n)`` array of residues together with their
mixed-radix ids (the same encoding as :func:`unitri.ffmat.encode_element`).
Local indices are positions in the sorted id array, so the identity is
always local index 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..ffmat import PrimeField
from ..pattern import ClosedPattern, minimal_pairs

DEFAULT_BOUND = 2 ** 21
CHUNK = 1 << 15


class ResourceError(RuntimeError):
    pass


def batched_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` with broadcasting, chunked along the leading batch axis."""
    lead = max(x.shape[0] if x.ndim == 3 else 0 for x in (a, b))
    if lead <= CHUNK:
        return ((a.astype(np.int64) @ b.astype(np.int64)) % p).astype(_dtype(p))
    parts = []
    for s in range(0, lead, CHUNK):
        aa = a[s:s + CHUNK] if a.ndim == 3 else a
        bb = b[s:s + CHUNK] if b.ndim == 3 else b
        parts.append(((aa.astype(np.int64) @ bb.astype(np.int64)) % p).astype(_dtype(p)))
    return np.concatenate(parts)


def _dtype(p: int):
    return np.int8 if p < 128 else np.int32


def unitri_inverse_batch(mats: np.ndarray, p: int) -> np.ndarray:
    """Inverses of unitriangular matrices via the finite Neumann series."""
    n = mats.shape[-1]
    eye = np.eye(n, dtype=np.int64)
    out = np.empty_like(mats)
    for s in range(0, mats.shape[0], CHUNK):
        x = mats[s:s + CHUNK].astype(np.int64)
        neg = (eye - x) % p  # -(X - I)
        acc = np.broadcast_to(eye, x.shape).copy()
        term = acc.copy()
        for _ in range(n - 1):
            term = (term @ neg) % p
            acc = (acc + term) % p
        out[s:s + CHUNK] = acc
    return out


@dataclass
class GroupTable:
    """A finite group of unitriangular matrices, fully enumerated."""

    pattern: ClosedPattern          # ambient pattern, fixes the id encoding
    field: PrimeField
    mats: np.ndarray                # (N, n, n)
    ids: np.ndarray                 # sorted encodings, ids[0] == 0
    generators: list[int]           # local indices
    inverse: np.ndarray = field(repr=False, default=None)
    exponent: int = 0

    def __post_init__(self):
        p = self.field.p
        self._rows = np.array([i - 1 for i, _ in self.pattern.pairs], dtype=np.intp)
        self._cols = np.array([j - 1 for _, j in self.pattern.pairs], dtype=np.intp)
        self._weights = np.array([p ** r for r in range(len(self.pattern.pairs))], dtype=np.int64)
        self._dense = bool(len(self.ids) == p ** len(self.pattern.pairs))
        if self.inverse is None:
            self.inverse = self.local(self.encode(unitri_inverse_batch(self.mats, p)))
        if not self.exponent:
            self.exponent = _exponent(self.mats, p)

    @property
    def order(self) -> int:
        return int(self.ids.shape[0])

    @property
    def n(self) -> int:
        return self.pattern.n

    @property
    def p(self) -> int:
        return self.field.p

    def encode(self, mats: np.ndarray) -> np.ndarray:
        """Ids of an ``(..., n, n)`` array of elements."""
        digits = mats[..., self._rows, self._cols].astype(np.int64)
        return digits @ self._weights

    def encode_entries(self, digits: np.ndarray) -> np.ndarray:
        return digits.astype(np.int64) @ self._weights

    def local(self, ids: np.ndarray) -> np.ndarray:
        if self._dense:
            return ids
        pos = np.searchsorted(self.ids, ids)
        pos = np.minimum(pos, len(self.ids) - 1)
        if not np.array_equal(self.ids[pos], ids):
            raise ValueError("product left the subgroup")
        return pos

    def mul(self, a, b) -> np.ndarray:
        """Local index of ``a * b`` for local indices (broadcasting)."""
        return self.local(self.encode(batched_mul(self.mats[a], self.mats[b], self.p)))

    def right_mul_all(self, g: int) -> np.ndarray:
        return self.local(self.encode(batched_mul(self.mats, self.mats[g].astype(np.int64), self.p)))

    def conjugate_all(self, g: int) -> np.ndarray:
        """Local index of ``g^{-1} x g`` for every element x."""
        gi = self.mats[self.inverse[g]].astype(np.int64)
        gg = self.mats[g].astype(np.int64)
        y = batched_mul(self.mats, gg, self.p)
        return self.local(self.encode(batched_mul(gi, y, self.p)))


def _exponent(mats: np.ndarray, p: int) -> int:
    n = mats.shape[-1]
    eye = np.eye(n, dtype=np.int64)
    exp = 1
    y = mats
    while True:
        flat = y.reshape(y.shape[0], -1)
        if np.array_equal(flat, np.broadcast_to(eye.reshape(-1), flat.shape)):
            return exp
        z = y
        for _ in range(p - 1):
            z = batched_mul(z, y, p)
        y = z
        exp *= p


def enumerate_group(pattern: ClosedPattern, p: int, bound: int = DEFAULT_BOUND) -> GroupTable:
    f = PrimeField(p)
    order = p ** len(pattern.pairs)
    if order > bound:
        raise ResourceError(f"|G| = {p}^{len(pattern.pairs)} exceeds the enumeration bound {bound}")
    n = pattern.n
    ids = np.arange(order, dtype=np.int64)
    mats = np.zeros((order, n, n), dtype=_dtype(p))
    mats[:, np.arange(n), np.arange(n)] = 1
    rem = ids.copy()
    for i, j in pattern.pairs:
        rem, d = np.divmod(rem, p)
        mats[:, i - 1, j - 1] = d
    gens = []
    weights = {pr: p ** r for r, pr in enumerate(pattern.pairs)}
    for pr in minimal_pairs(pattern):
        gens.append(int(weights[pr]))
    return GroupTable(pattern, f, mats, ids, gens)


def subgroup(parent: GroupTable, mask: np.ndarray) -> GroupTable:
    """Subgroup of ``parent`` given by a boolean membership mask."""
    idx = np.nonzero(mask)[0]
    if idx.size == 0 or idx[0] != 0:
        raise ValueError("subgroup must contain the identity")
    mats = parent.mats[idx]
    ids = parent.ids[idx]
    inv_parent = parent.inverse[idx]
    inverse = np.searchsorted(idx, inv_parent)
    sub = GroupTable(parent.pattern, parent.field, mats, ids, [], inverse=inverse)
    sub.generators = _greedy_generators(sub)
    return sub


def _closure(g: GroupTable, gens: list[int]) -> np.ndarray:
    inside = np.zeros(g.order, dtype=bool)
    inside[0] = True
    frontier = np.array([0])
    while frontier.size:
        new = []
        for s in gens:
            prod = g.local(g.encode(batched_mul(g.mats[frontier], g.mats[s].astype(np.int64), g.p)))
            fresh = np.unique(prod[~inside[prod]])
            inside[fresh] = True
            new.append(fresh)
        frontier = np.unique(np.concatenate(new)) if new else np.array([], dtype=np.int64)
    return inside


def _greedy_generators(g: GroupTable) -> list[int]:
    gens: list[int] = []
    inside = np.zeros(g.order, dtype=bool)
    inside[0] = True
    while not inside.all():
        cand = int(np.nonzero(~inside)[0][0])
        gens.append(cand)
        inside = _closure(g, gens)
    return gens


@dataclass
class ConjugacyClassData:
    class_of: np.ndarray        # class index per local element index
    representatives: np.ndarray  # smallest local index (= smallest id) per class
    sizes: np.ndarray
    inverse_class: np.ndarray

    @property
    def count(self) -> int:
        return int(self.sizes.shape[0])


def conjugacy_classes(g: GroupTable) -> ConjugacyClassData:
    n = g.order
    src, dst = [], []
    for s in g.generators:
        src.append(np.arange(n))
        dst.append(g.conjugate_all(s))
    if src:
        src_a, dst_a = np.concatenate(src), np.concatenate(dst)
    else:
        src_a = dst_a = np.arange(n)
    graph = coo_matrix((np.ones(src_a.size, dtype=np.int8), (src_a, dst_a)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    k = int(labels.max()) + 1
    reps = np.full(k, n, dtype=np.int64)
    np.minimum.at(reps, labels, np.arange(n))
    order = np.argsort(reps, kind="stable")
    relabel = np.empty(k, dtype=np.int64)
    relabel[order] = np.arange(k)
    class_of = relabel[labels]
    reps = reps[order]
    sizes = np.bincount(class_of, minlength=k)
    inverse_class = class_of[g.inverse[reps]]
    return ConjugacyClassData(class_of, reps, sizes, inverse_class)
