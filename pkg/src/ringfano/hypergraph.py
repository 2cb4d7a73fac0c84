"""Bitset-backed 3-uniform hypergraphs.

Edges are stored as a packed little-endian bit array indexed by the
colexicographic rank of each sorted triple ``i < j < k``::

    rank(i, j, k) = C(k, 3) + C(j, 2) + i

The rank of a triple does not depend on the number of vertices, so the
bitset of a graph on ``n`` vertices is a prefix of the bitset of the same
edges viewed on ``n' > n`` vertices.  Heavy queries (degrees, co-degrees,
edge listing) go through numpy; the combinatorial searches work on
per-pair co-neighbourhood bitmasks built lazily from the edge list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError, UnsupportedError

__all__ = [
    "TripleGraph",
    "KGraph",
    "rank_triple",
    "unrank_triple",
    "rank_pair",
    "unrank_pair",
    "degree",
    "co_neighborhood",
    "min_l_degree",
    "blow_up",
    "induced",
    "edge_density",
]

_POPCOUNT = np.array([bin(b).count("1") for b in range(256)], dtype=np.uint8)

# Rank arrays are processed in slices of this many triples to bound memory.
_CHUNK = 1 << 22


def rank_triple(i: int, j: int, k: int, n: int | None = None) -> int:
    """Colex rank of the triple ``i < j < k``.

    ``n`` is only used for range validation.
    """
    if not 0 <= i < j < k:
        raise InvalidInputError(f"triple must satisfy 0 <= i < j < k, got {(i, j, k)}")
    if n is not None and k >= n:
        raise InvalidInputError(f"vertex {k} out of range for n={n}")
    return comb(k, 3) + comb(j, 2) + i


def unrank_triple(r: int, n: int | None = None) -> tuple[int, int, int]:
    """Inverse of :func:`rank_triple`."""
    if r < 0 or (n is not None and r >= comb(n, 3)):
        raise InvalidInputError(f"rank {r} out of range for n={n}")
    k = 2
    while comb(k + 1, 3) <= r:
        k += 1
    r -= comb(k, 3)
    j = 1
    while comb(j + 1, 2) <= r:
        j += 1
    return r - comb(j, 2), j, k


def rank_pair(u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    if u == v or u < 0:
        raise InvalidInputError(f"invalid pair {(u, v)}")
    return v * (v - 1) // 2 + u


def unrank_pair(r: int) -> tuple[int, int]:
    v = int((1 + (1 + 8 * r) ** 0.5) / 2)
    while v * (v - 1) // 2 > r:
        v -= 1
    while (v + 1) * v // 2 <= r:
        v += 1
    return r - v * (v - 1) // 2, v


def _c3(x: np.ndarray) -> np.ndarray:
    return x * (x - 1) * (x - 2) // 6


def _c2(x: np.ndarray) -> np.ndarray:
    return x * (x - 1) // 2


def ranks_of(triples: np.ndarray) -> np.ndarray:
    """Vectorised colex ranks of an ``(m, 3)`` array of sorted triples."""
    t = np.asarray(triples, dtype=np.int64).reshape(-1, 3)
    return _c3(t[:, 2]) + _c2(t[:, 1]) + t[:, 0]


def unrank_array(ranks: np.ndarray, n: int) -> np.ndarray:
    """Vectorised inverse of :func:`ranks_of` for vertices below ``n``."""
    r = np.asarray(ranks, dtype=np.int64)
    ks = np.arange(n + 1, dtype=np.int64)
    k = np.searchsorted(_c3(ks), r, side="right") - 1
    r2 = r - _c3(k)
    j = np.searchsorted(_c2(ks), r2, side="right") - 1
    i = r2 - _c2(j)
    return np.stack([i, j, k], axis=1)


def _pack(n: int, ranks: np.ndarray) -> np.ndarray:
    nbits = comb(n, 3)
    r = np.asarray(ranks, dtype=np.int64)
    if nbits <= 1 << 28:
        flags = np.zeros(nbits, dtype=bool)
        flags[r] = True
        return np.packbits(flags, bitorder="little")
    bits = np.zeros((nbits + 7) // 8, dtype=np.uint8)
    np.bitwise_or.at(bits, r >> 3, (1 << (r & 7)).astype(np.uint8))
    return bits


def _popcount(bits: np.ndarray) -> int:
    step = 1 << 24
    return sum(int(_POPCOUNT[bits[i : i + step]].sum(dtype=np.int64)) for i in range(0, len(bits), step))


class TripleGraph:
    """An immutable 3-uniform hypergraph on vertices ``0..n-1``.

    Build one with :meth:`from_edges`, :meth:`from_ranks` or
    :meth:`from_predicate`; all derived data is cached on first use.
    """

    def __init__(self, n: int, bits: np.ndarray, *, copy: bool = True):
        if n < 0:
            raise InvalidInputError(f"vertex count must be non-negative, got {n}")
        expected = (comb(n, 3) + 7) // 8
        if bits.dtype != np.uint8 or bits.shape != (expected,):
            raise InvalidInputError("bitset has the wrong shape for this vertex count")
        self.n = n
        if copy:
            bits = bits.copy()
        spare = expected * 8 - comb(n, 3)
        if spare and expected:
            bits[-1] &= np.uint8(0xFF >> spare)
        bits.setflags(write=False)
        self._bits = bits
        self.edge_count = _popcount(bits)

    # -- construction -------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "TripleGraph":
        return cls(n, _pack(n, np.empty(0, dtype=np.int64)), copy=False)

    @classmethod
    def complete(cls, n: int) -> "TripleGraph":
        return cls.from_ranks(n, np.arange(comb(n, 3), dtype=np.int64))

    @classmethod
    def from_ranks(cls, n: int, ranks) -> "TripleGraph":
        r = np.asarray(ranks, dtype=np.int64)
        if len(r) and (r.min() < 0 or r.max() >= comb(n, 3)):
            raise InvalidInputError(f"triple rank out of range for n={n}")
        return cls(n, _pack(n, r), copy=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "TripleGraph":
        """Build from triples in any vertex order; repeated triples collapse."""
        rows = []
        for e in edges:
            a, b, c = sorted(int(v) for v in e)
            if a == b or b == c:
                raise InvalidInputError(f"edge {tuple(e)} repeats a vertex")
            if a < 0 or c >= n:
                raise InvalidInputError(f"edge {tuple(e)} out of range for n={n}")
            rows.append((a, b, c))
        if not rows:
            return cls.empty(n)
        return cls.from_ranks(n, ranks_of(np.array(rows, dtype=np.int64)))

    @classmethod
    def from_predicate(cls, n: int, predicate) -> "TripleGraph":
        """Keep every triple for which ``predicate(i, j, k)`` is true.

        ``predicate`` receives three int64 arrays with ``i < j < k``
        elementwise and must return a boolean array.
        """
        total = comb(n, 3)
        bits = np.zeros((total + 7) // 8, dtype=np.uint8)
        for start in range(0, total, _CHUNK):
            r = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            t = unrank_array(r, n)
            mask = np.asarray(predicate(t[:, 0], t[:, 1], t[:, 2]), dtype=bool)
            packed = np.packbits(mask, bitorder="little")
            bits[start // 8 : start // 8 + len(packed)] = packed
        return cls(n, bits, copy=False)

    @classmethod
    def from_rank_intervals(cls, n: int, starts, ends) -> "TripleGraph":
        """Edges are the ranks in ``[starts[i], ends[i])``.

        Intervals must be sorted and pairwise disjoint.  Bits are filled
        chunk by chunk, so nothing proportional to the edge count is
        allocated besides the bitset itself.
        """
        total = comb(n, 3)
        lo = np.asarray(starts, dtype=np.int64)
        hi = np.asarray(ends, dtype=np.int64)
        if lo.shape != hi.shape or np.any(lo > hi):
            raise InvalidInputError("interval starts and ends must pair up with start <= end")
        keep = lo < hi
        lo, hi = lo[keep], hi[keep]
        if len(lo) and (lo[0] < 0 or hi[-1] > total or np.any(lo[1:] < hi[:-1])):
            raise InvalidInputError("intervals must be sorted, disjoint and inside the rank range")
        bits = np.zeros((total + 7) // 8, dtype=np.uint8)
        step = _CHUNK * 16
        for c0 in range(0, total, step):
            c1 = min(total, c0 + step)
            a = np.searchsorted(hi, c0, side="right")
            b = np.searchsorted(lo, c1, side="left")
            if a >= b:
                continue
            diff = np.zeros(c1 - c0 + 1, dtype=np.int8)
            diff[np.maximum(lo[a:b], c0) - c0] = 1
            diff[np.minimum(hi[a:b], c1) - c0] -= 1
            flags = np.cumsum(diff[:-1], dtype=np.int8).view(bool)
            bits[c0 // 8 : c0 // 8 + (c1 - c0 + 7) // 8] = np.packbits(flags, bitorder="little")
        return cls(n, bits, copy=False)

    # -- basic queries ------------------------------------------------

    @property
    def bits(self) -> np.ndarray:
        """Packed little-endian membership bits (read-only view)."""
        return self._bits

    @cached_property
    def edges(self) -> int:
        """The membership bitset as a Python integer (bit r set iff rank r is an edge)."""
        return int.from_bytes(self._bits.tobytes(), "little")

    def has_edge(self, i: int, j: int, k: int) -> bool:
        a, b, c = sorted((i, j, k))
        if a == b or b == c or a < 0 or c >= self.n:
            return False
        r = comb(c, 3) + comb(b, 2) + a
        return bool(self._bits[r >> 3] >> (r & 7) & 1)

    def __contains__(self, triple) -> bool:
        return self.has_edge(*triple)

    @cached_property
    def ranks(self) -> np.ndarray:
        if not self.edge_count:
            return np.empty(0, dtype=np.int64)
        flags = np.unpackbits(self._bits, bitorder="little")[: comb(self.n, 3)]
        return np.flatnonzero(flags).astype(np.int64)

    @cached_property
    def triple_array(self) -> np.ndarray:
        """``(m, 3)`` int64 array of edges in ascending rank order."""
        if not self.edge_count:
            return np.empty((0, 3), dtype=np.int64)
        return unrank_array(self.ranks, self.n)

    def triples(self) -> list[tuple[int, int, int]]:
        return [tuple(map(int, row)) for row in self.triple_array]

    def __iter__(self):
        return iter(self.triples())

    def __len__(self) -> int:
        return self.edge_count

    def __eq__(self, other) -> bool:
        if not isinstance(other, TripleGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash((self.n, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"TripleGraph(n={self.n}, m={self.edge_count})"

    # -- derived data -------------------------------------------------

    @cached_property
    def degrees(self) -> np.ndarray:
        t = self.triple_array
        return np.bincount(t.ravel(), minlength=self.n).astype(np.int64)

    @cached_property
    def codegrees(self) -> np.ndarray:
        """Symmetric ``n x n`` matrix of co-degrees (zero diagonal)."""
        n = self.n
        t = self.triple_array
        idx = np.concatenate(
            [t[:, 0] * n + t[:, 1], t[:, 0] * n + t[:, 2], t[:, 1] * n + t[:, 2]]
        )
        m = np.bincount(idx, minlength=n * n).reshape(n, n).astype(np.int64)
        return m + m.T

    @cached_property
    def pair_masks(self) -> list[list[int]]:
        """``pair_masks[u][v]`` is the co-neighbourhood of ``{u, v}`` as a bitmask."""
        n = self.n
        masks = [[0] * n for _ in range(n)]
        for a, b, c in self.triple_array.tolist():
            masks[a][b] |= 1 << c
            masks[b][a] |= 1 << c
            masks[a][c] |= 1 << b
            masks[c][a] |= 1 << b
            masks[b][c] |= 1 << a
            masks[c][b] |= 1 << a
        return masks

    @cached_property
    def twin_classes(self) -> list[int]:
        """Class id per vertex; vertices share a class iff swapping them is an automorphism."""
        n = self.n
        masks = self.pair_masks
        cls = [-1] * n
        reps: list[int] = []
        for v in range(n):
            for cid, r in enumerate(reps):
                keep = ~((1 << v) | (1 << r))
                mv, mr = masks[v], masks[r]
                if all(
                    (mv[u] & keep) == (mr[u] & keep)
                    for u in range(n)
                    if u != v and u != r
                ):
                    cls[v] = cid
                    break
            else:
                cls[v] = len(reps)
                reps.append(v)
        return cls


@dataclass(frozen=True)
class KGraph:
    """A k-uniform hypergraph stored as a set of strictly increasing tuples."""

    n: int
    k: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.k < 1 or self.n < 0:
            raise InvalidInputError(f"invalid KGraph parameters n={self.n}, k={self.k}")
        for e in self.edges:
            if len(e) != self.k or any(a >= b for a, b in zip(e, e[1:])):
                raise InvalidInputError(f"edge {e} is not a strictly increasing {self.k}-tuple")
            if e[0] < 0 or e[-1] >= self.n:
                raise InvalidInputError(f"edge {e} out of range for n={self.n}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)

    def pair_coverage(self) -> dict[tuple[int, int], int]:
        """Number of edges containing each vertex pair."""
        cover = {p: 0 for p in combinations(range(self.n), 2)}
        for e in self.edges:
            for p in combinations(e, 2):
                cover[p] += 1
        return cover

    def to_triple_graph(self) -> TripleGraph:
        if self.k != 3:
            raise UnsupportedError("only 3-uniform KGraphs convert to TripleGraph")
        return TripleGraph.from_edges(self.n, self.edges)


# -- module-level operations ------------------------------------------


def _check_vertices(G: TripleGraph, U: Sequence[int]) -> None:
    if len(set(U)) != len(U):
        raise InvalidInputError(f"duplicate vertices in {tuple(U)}")
    for v in U:
        if not 0 <= v < G.n:
            raise InvalidInputError(f"vertex {v} out of range for n={G.n}")


def degree(G: TripleGraph, U: Sequence[int]) -> int:
    """``d(U)``: number of edges containing the vertex set ``U`` (``|U|`` is 1 or 2)."""
    U = tuple(U)
    if len(U) not in (1, 2):
        raise UnsupportedError(f"degree is defined here for |U| in {{1, 2}}, got {len(U)}")
    _check_vertices(G, U)
    if len(U) == 1:
        return int(G.degrees[U[0]])
    return int(G.codegrees[U[0], U[1]])


def co_neighborhood(G: TripleGraph, x: int, y: int) -> frozenset[int]:
    """All ``z`` with ``{x, y, z}`` an edge."""
    _check_vertices(G, (x, y))
    z = np.array([v for v in range(G.n) if v != x and v != y], dtype=np.int64)
    if not len(z):
        return frozenset()
    t = np.sort(np.stack([np.full_like(z, x), np.full_like(z, y), z], axis=1), axis=1)
    r = ranks_of(t)
    hit = (G.bits[r >> 3] >> (r & 7)) & 1
    return frozenset(int(v) for v in z[hit.astype(bool)])


def min_l_degree(G: TripleGraph, l: int) -> int | None:
    """Minimum degree over all ``l``-subsets; ``None`` when ``n < l + 1``."""
    if l not in (1, 2):
        raise UnsupportedError(f"min_l_degree supports l in {{1, 2}}, got {l}")
    if G.n < l + 1:
        return None
    if l == 1:
        return int(G.degrees.min())
    c = G.codegrees
    iu = np.triu_indices(G.n, 1)
    return int(c[iu].min())


def blow_up(G: TripleGraph, s: int) -> TripleGraph:
    """Replace each vertex ``v`` by clones ``v*s .. v*s+s-1``.

    An edge of the blow-up takes one clone from each vertex of an edge of
    ``G``; clones of a common vertex never share an edge.
    """
    if s < 1:
        raise InvalidInputError(f"blow-up factor must be positive, got {s}")
    if s == 1:
        return G
    t = G.triple_array
    if not len(t):
        return TripleGraph.empty(G.n * s)
    c = np.array(np.meshgrid(range(s), range(s), range(s), indexing="ij")).reshape(3, -1).T
    out = (t[:, None, :] * s + c[None, :, :]).reshape(-1, 3)
    return TripleGraph.from_ranks(G.n * s, ranks_of(out))


def induced(G: TripleGraph, S: Iterable[int]) -> TripleGraph:
    """Subgraph induced on ``S``, relabelled to ``0..|S|-1`` in ascending order."""
    S = sorted(set(S))
    _check_vertices(G, S)
    relabel = np.full(G.n, -1, dtype=np.int64)
    relabel[S] = np.arange(len(S))
    t = relabel[G.triple_array] if G.edge_count else np.empty((0, 3), dtype=np.int64)
    keep = (t >= 0).all(axis=1)
    return TripleGraph.from_ranks(len(S), ranks_of(t[keep]))


def edge_density(G: TripleGraph) -> float | None:
    """``e(G) / C(n, 3)``; ``None`` for graphs on fewer than three vertices."""
    total = comb(G.n, 3)
    if total == 0:
        return None
    return G.edge_count / total
