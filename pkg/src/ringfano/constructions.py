"""Generators for the named 3-graphs.

Every generator is a pure function of its parameters.  Vertex layouts:

* ``build_fano``: ``(a, x, y, z, x', y', z') -> 0..6``.
* ``build_fstar``: same layout with the hub ``u`` at 0, so the identity
  map embeds the Fano plane.
* ``build_ring``: ``x_i -> 2i``, ``y_i -> 2i + 1``.
* ``build_B``: the first ``ceil(n/2)`` indices form part 0.
* ``build_G_half``: ``a_1..a_{n//2}`` first, then ``b_1..b_{ceil(n/2)}``.
* ``build_turan_T`` / ``build_S``: parts are consecutive index blocks.

The ``count_*`` functions give exact edge counts by following the same
part structure without materialising the graph; they are what large-n
density sweeps use.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb, floor, isqrt

import numpy as np

from .errors import InvalidInputError, InvalidLabelingError, UnsupportedError
from .hypergraph import KGraph, TripleGraph, edge_density

__all__ = [
    "Kind",
    "ConstructionSpec",
    "build",
    "edge_count",
    "construction_density",
    "build_fano",
    "build_fstar",
    "build_B",
    "build_ring",
    "build_ring_star",
    "ring_edges",
    "build_G_half",
    "build_turan_T",
    "build_S",
    "s_part_sizes",
    "build_Q3",
    "build_pg2",
    "build_complete",
    "k4_minus_edge",
    "random_graph",
    "is_prime",
    "count_B",
    "count_G_half",
    "count_turan_T",
    "count_S",
]

FANO_EDGES = ((0, 1, 4), (0, 2, 5), (0, 3, 6), (1, 2, 6), (1, 3, 5), (2, 3, 4), (4, 5, 6))


class Kind(str, enum.Enum):
    FANO = "fano"
    FSTAR = "fstar"
    B = "b"
    G_HALF = "g-half"
    TURAN_T = "turan-t"
    S_ITER = "s"
    RING = "ring"
    RING_STAR = "ring-star"
    Q3 = "q3"
    PG2 = "pg2"
    COMPLETE = "complete"


@dataclass(frozen=True)
class ConstructionSpec:
    """A named construction plus its size parameters.

    ``params`` keys by kind: ``n`` for B, G_HALF, TURAN_T, COMPLETE and
    S_ITER (which also takes ``depth`` and ``alpha``); ``t`` for RING and
    RING_STAR (plus ``labeling``); ``q`` for PG2.
    """

    kind: Kind
    params: dict = field(default_factory=dict)
    alpha: float | None = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        p = self.params
        need = {
            Kind.B: ("n",),
            Kind.G_HALF: ("n",),
            Kind.TURAN_T: ("n",),
            Kind.COMPLETE: ("n",),
            Kind.S_ITER: ("n",),
            Kind.RING: ("t",),
            Kind.RING_STAR: ("t", "labeling"),
            Kind.PG2: ("q",),
        }.get(kind, ())
        missing = [k for k in need if k not in p]
        if missing:
            raise InvalidInputError(f"{kind.value} needs parameters {missing}")
        if kind in (Kind.RING, Kind.RING_STAR) and p["t"] < 2:
            raise InvalidInputError("rings need t >= 2")
        if kind is Kind.PG2 and not is_prime(p["q"]):
            raise UnsupportedError(f"PG2 is implemented for prime q only, got {p['q']}")
        if kind is Kind.S_ITER:
            if self.alpha is None or not 0 < self.alpha < 1:
                raise InvalidInputError("S construction needs alpha in (0, 1)")
            if p.get("depth", 0) < 0:
                raise InvalidInputError("depth must be non-negative")
        if "n" in p and p["n"] < 0:
            raise InvalidInputError("n must be non-negative")

    def describe(self) -> str:
        items = [f"{k}={v}" for k, v in sorted(self.params.items()) if k != "labeling"]
        if self.alpha is not None:
            items.append(f"alpha={self.alpha:g}")
        return f"{self.kind.value}(" + ", ".join(items) + ")"


def build(spec: ConstructionSpec):
    """Dispatch a :class:`ConstructionSpec` to its generator."""
    p = spec.params
    match spec.kind:
        case Kind.FANO:
            return build_fano()
        case Kind.FSTAR:
            return build_fstar()
        case Kind.B:
            return build_B(p["n"])
        case Kind.G_HALF:
            return build_G_half(p["n"])
        case Kind.TURAN_T:
            return build_turan_T(p["n"])
        case Kind.S_ITER:
            return build_S(p["n"], spec.alpha, p.get("depth", 0))
        case Kind.RING:
            return build_ring(p["t"])
        case Kind.RING_STAR:
            return build_ring_star(p["t"], p["labeling"])
        case Kind.Q3:
            return build_Q3()
        case Kind.PG2:
            return build_pg2(p["q"])
        case Kind.COMPLETE:
            return build_complete(p["n"])
    raise UnsupportedError(f"unknown construction {spec.kind}")


# -- small fixed graphs -----------------------------------------------


def build_fano() -> TripleGraph:
    return TripleGraph.from_edges(7, FANO_EDGES)


def build_fstar() -> TripleGraph:
    # parts {x, x'} = {1, 4}, {y, y'} = {2, 5}, {z, z'} = {3, 6}; hub u = 0
    cross = [tuple(sorted(c)) for c in product((1, 4), (2, 5), (3, 6))]
    hub = [(0, 1, 4), (0, 2, 5), (0, 3, 6)]
    return TripleGraph.from_edges(7, cross + hub)


def build_complete(n: int) -> TripleGraph:
    return TripleGraph.complete(n)


def k4_minus_edge() -> TripleGraph:
    return TripleGraph.from_edges(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])


# -- rings -------------------------------------------------------------


def ring_edges(t: int) -> list[tuple[int, int, int]]:
    """Ring edges in label space: label ``2i`` is ``x_i``, ``2i + 1`` is ``y_i``."""
    if t < 2:
        raise InvalidInputError(f"rings need t >= 2, got {t}")
    out = []
    for i in range(t):
        j = (i + 1) % t
        out.append((2 * i, 2 * i + 1, 2 * j))
        out.append((2 * i, 2 * i + 1, 2 * j + 1))
    return out


def build_ring(t: int) -> TripleGraph:
    """The ring on ``2t`` vertices (``R_2`` is the complete graph on 4 vertices)."""
    return build_ring_star(t, list(range(2 * t)))


def build_ring_star(t: int, labeling) -> TripleGraph:
    """Ring-family member obtained by sending label ``l`` to vertex ``labeling[l]``.

    ``labeling`` has length ``2t`` and must be onto ``0..m-1`` for some
    ``m <= 2t``; any ring edge whose three labels share a vertex is
    rejected.
    """
    labeling = [int(v) for v in labeling]
    if len(labeling) != 2 * t:
        raise InvalidLabelingError(f"labeling must have {2 * t} entries, got {len(labeling)}")
    m = max(labeling) + 1
    if sorted(set(labeling)) != list(range(m)):
        raise InvalidLabelingError("labeling must be onto 0..m-1")
    edges = []
    for a, b, c in ring_edges(t):
        e = (labeling[a], labeling[b], labeling[c])
        if len(set(e)) < 3:
            raise InvalidLabelingError(f"labels {(a, b, c)} collapse to {e}")
        edges.append(e)
    return TripleGraph.from_edges(m, edges)


def build_Q3() -> TripleGraph:
    """``R_3`` plus the edges ``x1 y1 x0`` and ``x1 y1 y0``."""
    edges = [tuple(e) for e in ring_edges(3)] + [(2, 3, 0), (2, 3, 1)]
    return TripleGraph.from_edges(6, edges)


# -- partition constructions -------------------------------------------


def build_B(n: int) -> TripleGraph:
    """Balanced complete bipartite 3-graph: all triples meeting both parts."""
    big = (n + 1) // 2

    def pred(i, j, k):
        side = np.stack([i, j, k]) < big
        s = side.sum(axis=0)
        return (s > 0) & (s < 3)

    return TripleGraph.from_predicate(n, pred)


def count_B(n: int) -> int:
    return comb(n, 3) - comb(n // 2, 3) - comb((n + 1) // 2, 3)


def build_G_half(n: int) -> TripleGraph:
    """Half-graph construction: triples ``a_i b_j a_k`` and ``a_i b_j b_k`` with ``i, j < k``."""
    na = n // 2

    def pred(i, j, k):
        v = np.stack([i, j, k])
        in_a = v < na
        sub = np.where(in_a, v + 1, v - na + 1)  # 1-based subscripts
        res = np.zeros(i.shape, dtype=bool)
        # some vertex (the "k") tops both others, which lie one in A and one in B
        for top in range(3):
            p, q = [o for o in range(3) if o != top]
            mixed = in_a[p] != in_a[q]
            res |= mixed & (sub[top] > sub[p]) & (sub[top] > sub[q])
        return res

    return TripleGraph.from_predicate(n, pred)


def count_G_half(n: int) -> int:
    na, nb = n // 2, n - n // 2
    total = 0
    for k in range(1, na + 1):  # a_i b_j a_k
        total += (k - 1) * min(k - 1, nb)
    for k in range(1, nb + 1):  # a_i b_j b_k
        total += min(k - 1, na) * (k - 1)
    return total


def _turan_sizes(n: int) -> list[int]:
    return [n // 3 + (1 if r < n % 3 else 0) for r in range(3)]


def build_turan_T(n: int) -> TripleGraph:
    """Turan's construction: transversals plus two in ``V_i`` and one in ``V_{i+1}``."""
    sizes = _turan_sizes(n)
    bounds = np.cumsum([0] + sizes)

    def pred(i, j, k):
        part = np.searchsorted(bounds, np.stack([i, j, k]), side="right") - 1
        cnt = np.stack([(part == p).sum(axis=0) for p in range(3)])
        transversal = (cnt == 1).all(axis=0)
        cyc = np.zeros(i.shape, dtype=bool)
        for p in range(3):
            cyc |= (cnt[p] == 2) & (cnt[(p + 1) % 3] == 1)
        return transversal | cyc

    return TripleGraph.from_predicate(n, pred)


def count_turan_T(n: int) -> int:
    a, b, c = _turan_sizes(n)
    return a * b * c + comb(a, 2) * b + comb(b, 2) * c + comb(c, 2) * a


def s_part_sizes(n: int, alpha: float) -> tuple[int, int, int]:
    """Part sizes of S(n): ``|V1|`` is ``(1 - alpha) n`` rounded half-up, ``V2 >= V3`` split the rest."""
    v1 = min(n, floor((1 - alpha) * n + 0.5))
    rest = n - v1
    return v1, (rest + 1) // 2, rest // 2


def _s_blocks(n: int, alpha: float, depth: int):
    """Per level and vertex: start of its block, start of that block's ``V2``, and its part (0 = no split)."""
    levels = depth + 1
    bstart = np.full((levels, n), -1, dtype=np.int64)
    v2start = np.zeros((levels, n), dtype=np.int64)
    part = np.zeros((levels, n), dtype=np.int8)
    blocks = [(0, n)]
    for lvl in range(levels):
        children = []
        for start, size in blocks:
            if size < 3:
                continue
            v1, v2, v3 = s_part_sizes(size, alpha)
            sl = slice(start, start + size)
            bstart[lvl, sl] = start
            v2start[lvl, sl] = start + v1
            part[lvl, start : start + v1] = 1
            part[lvl, start + v1 : start + v1 + v2] = 2
            part[lvl, start + v1 + v2 : start + size] = 3
            children += [(start + v1, v2), (start + v1 + v2, v3)]
        blocks = children
    return bstart, v2start, part


def build_S(n: int, alpha: float, depth: int = 0) -> TripleGraph:
    """The odd-ring-free construction S(n), iterated ``depth`` times inside ``V2`` and ``V3``.

    ``alpha`` is the fraction of vertices outside ``V1``.  Edges: two
    vertices of ``V1`` with one outside it, and one vertex from each part.

    For ``j < k`` split at block ``B``, the valid ``i < j`` form one run
    of ``B``'s vertices, hence one contiguous interval of colex ranks.
    """
    if not 0 < alpha < 1:
        raise InvalidInputError(f"alpha must lie in (0, 1), got {alpha}")
    if depth < 0:
        raise InvalidInputError(f"depth must be non-negative, got {depth}")
    bstart, v2start, part = _s_blocks(n, alpha, depth)
    starts, ends = [], []
    for k in range(2, n):
        js = np.arange(k, dtype=np.int64)
        lo = np.zeros(k, dtype=np.int64)
        hi = np.zeros(k, dtype=np.int64)
        together = np.ones(k, dtype=bool)
        for lvl in range(depth + 1):
            pk = part[lvl, k]
            if pk == 0:
                break
            in_block = together & (bstart[lvl, :k] == bstart[lvl, k])
            pj = part[lvl, :k]
            split = in_block & (pj != pk)
            lo[split] = bstart[lvl, k]
            hi[split] = np.where(pj[split] == 1, js[split], v2start[lvl, k])
            together = in_block & (pj == pk)
        base = comb(k, 3) + js * (js - 1) // 2
        starts.append(base + lo)
        ends.append(base + hi)
    if not starts:
        return TripleGraph.empty(n)
    return TripleGraph.from_rank_intervals(n, np.concatenate(starts), np.concatenate(ends))


def count_S(n: int, alpha: float, depth: int = 0) -> int:
    @lru_cache(maxsize=None)
    def rec(m: int, d: int) -> int:
        if m < 3:
            return 0
        v1, v2, v3 = s_part_sizes(m, alpha)
        e = comb(v1, 2) * (v2 + v3) + v1 * v2 * v3
        if d > 0:
            e += rec(v2, d - 1) + rec(v3, d - 1)
        return e

    return rec(n, depth)


# -- projective planes -------------------------------------------------


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, isqrt(q) + 1))


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    # normalised representatives: first non-zero coordinate equals 1
    pts = []
    for v in product(range(q), repeat=3):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def build_pg2(q: int) -> KGraph:
    """Projective plane over GF(q) as a ``(q + 1)``-graph; ``q`` must be prime."""
    if not is_prime(q):
        raise UnsupportedError(f"PG2(q) is implemented for prime q only, got {q}")
    pts = _projective_points(q)
    edges = set()
    for line in pts:  # lines are dual points: p on L iff <p, L> = 0
        e = tuple(
            idx
            for idx, p in enumerate(pts)
            if (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0
        )
        edges.add(e)
    return KGraph(len(pts), q + 1, frozenset(edges))


# -- random hosts ------------------------------------------------------


def random_graph(n: int, p: float, seed: int) -> TripleGraph:
    """Binomial random 3-graph: each triple kept independently with probability ``p``."""
    rng = np.random.default_rng(seed)
    total = comb(n, 3)
    keep = rng.random(total) < p
    return TripleGraph.from_ranks(n, np.flatnonzero(keep))


# -- counting and densities --------------------------------------------


def edge_count(spec: ConstructionSpec) -> int:
    """Exact edge count of a construction, without building it for the big partition kinds."""
    p = spec.params
    match spec.kind:
        case Kind.B:
            return count_B(p["n"])
        case Kind.G_HALF:
            return count_G_half(p["n"])
        case Kind.TURAN_T:
            return count_turan_T(p["n"])
        case Kind.S_ITER:
            return count_S(p["n"], spec.alpha, p.get("depth", 0))
        case Kind.COMPLETE:
            return comb(p["n"], 3)
        case Kind.PG2:
            return build_pg2(p["q"]).edge_count
    return build(spec).edge_count


def construction_density(spec: ConstructionSpec) -> float | None:
    """``e / C(n, 3)`` for a construction."""
    if spec.kind in (Kind.B, Kind.G_HALF, Kind.TURAN_T, Kind.S_ITER, Kind.COMPLETE):
        n = spec.params["n"]
        return edge_count(spec) / comb(n, 3) if n >= 3 else None
    g = build(spec)
    if isinstance(g, KGraph):
        raise UnsupportedError("density is defined for 3-graphs only")
    return edge_density(g)
