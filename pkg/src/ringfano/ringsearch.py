"""Ring-family search through the pair digraph.

The pair digraph of a 3-graph ``G`` has one node per 2-subset of
``V(G)``, with an arc ``{u, v} -> {u', v'}`` exactly when ``u v u'`` and
``u v v'`` are both edges.  A directed cycle ``P_0 -> P_1 -> ... -> P_0``
with ``P_i = {x_i, y_i}`` is precisely a (possibly collapsed) ring in
``G``, so short-cycle search doubles as ring search.

For ring blow-ups ``R_t(2)`` the same idea is lifted to nodes that are
pairs of disjoint vertex pairs ``(X, Y)``; those nodes are generated
lazily from common co-neighbourhoods since there are ``O(n^4)`` of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra, shortest_path

from .errors import IntegrityError, InvalidInputError
from .hypergraph import TripleGraph, rank_pair, unrank_pair

__all__ = [
    "Digraph",
    "PairDigraph",
    "DirectedCycle",
    "CSReport",
    "RingStarWitness",
    "RingBlowupWitness",
    "build_pair_digraph",
    "shortest_directed_cycle",
    "verify_cs_bound",
    "cycle_to_ring_star",
    "find_ring_star",
    "PairPairDigraph",
    "build_pairpair_digraph",
    "find_ring_blowup",
]


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Digraph:
    """Simple digraph on nodes ``0..N-1`` with sorted out-adjacency tuples."""

    def __init__(self, out: Sequence[Sequence[int]]):
        self.out: list[tuple[int, ...]] = [tuple(sorted(set(o))) for o in out]
        N = len(self.out)
        for u, o in enumerate(self.out):
            for v in o:
                if not 0 <= v < N:
                    raise InvalidInputError(f"arc {u}->{v} leaves the node range")
                if v == u:
                    raise InvalidInputError(f"self-loop at {u}")
        self._out_sets = None
        self._dist = None

    @classmethod
    def from_arcs(cls, n_nodes: int, arcs) -> "Digraph":
        out = [[] for _ in range(n_nodes)]
        for u, v in arcs:
            out[u].append(v)
        return cls(out)

    @property
    def node_count(self) -> int:
        return len(self.out)

    @property
    def arc_count(self) -> int:
        return sum(len(o) for o in self.out)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, o in enumerate(self.out):
            for v in o:
                yield u, v

    def has_arc(self, u: int, v: int) -> bool:
        if self._out_sets is None:
            self._out_sets = [frozenset(o) for o in self.out]
        return v in self._out_sets[u]

    def out_degree(self, u: int) -> int:
        return len(self.out[u])

    def min_out_degree(self) -> int:
        return min((len(o) for o in self.out), default=0)

    def to_csr(self) -> csr_matrix:
        N = self.node_count
        src = np.fromiter((u for u, o in enumerate(self.out) for _ in o), dtype=np.int64)
        dst = np.fromiter((v for o in self.out for v in o), dtype=np.int64)
        return csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))

    def cyclic_nodes(self) -> np.ndarray:
        """Boolean mask of nodes lying on some directed cycle (non-trivial strong components)."""
        N = self.node_count
        if N == 0:
            return np.zeros(0, dtype=bool)
        _, labels = connected_components(self.to_csr(), directed=True, connection="strong")
        sizes = np.bincount(labels)
        return sizes[labels] > 1

    def is_acyclic(self) -> bool:
        return not self.cyclic_nodes().any()

    def distances(self) -> np.ndarray:
        """All-pairs BFS distances (``inf`` where unreachable); cached."""
        if self._dist is None:
            N = self.node_count
            if N == 0:
                self._dist = np.zeros((0, 0))
            else:
                self._dist = shortest_path(self.to_csr(), method="D", unweighted=True)
        return self._dist


class PairDigraph(Digraph):
    """Pair digraph of a host 3-graph; node ``r`` is the pair ``unrank_pair(r)``."""

    def __init__(self, n_host: int, out):
        super().__init__(out)
        self.n_host = n_host

    def pair(self, node: int) -> tuple[int, int]:
        return unrank_pair(node)

    def node(self, u: int, v: int) -> int:
        return rank_pair(u, v)


@dataclass(frozen=True)
class DirectedCycle:
    nodes: tuple[int, ...]

    def __post_init__(self):
        if len(self.nodes) < 2:
            raise InvalidInputError("a directed cycle needs at least two nodes")
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidInputError("cycle nodes must be distinct")

    def __len__(self) -> int:
        return len(self.nodes)

    def arcs(self) -> list[tuple[int, int]]:
        L = len(self.nodes)
        return [(self.nodes[i], self.nodes[(i + 1) % L]) for i in range(L)]

    def is_valid_in(self, D: Digraph) -> bool:
        return all(D.has_arc(u, v) for u, v in self.arcs())


@dataclass(frozen=True)
class CSReport:
    """Outcome of checking the short-cycle bound ``girth <= 2N / (r + 1)``."""

    nodes: int
    r: int
    girth: int | None
    bound: int | None
    holds: bool


def build_pair_digraph(G: TripleGraph) -> PairDigraph:
    n = G.n
    masks = G.pair_masks
    out = []
    for v in range(n):
        for u in range(v):
            z = np.array(_bits(masks[u][v]), dtype=np.int64)
            if len(z) < 2:
                out.append(())
                continue
            i, j = np.triu_indices(len(z), 1)
            lo, hi = z[i], z[j]
            out.append(tuple(np.sort(hi * (hi - 1) // 2 + lo).tolist()))
    # ``out`` was filled in colex pair order, matching rank_pair
    return PairDigraph(n, out)


def shortest_directed_cycle(D: Digraph, max_length: int | None = None) -> DirectedCycle | None:
    """A minimum-length directed cycle, or ``None`` (also when longer than ``max_length``).

    Among all minimum-length cycles the one returned has the
    lexicographically smallest node sequence when each cycle is written
    starting from its smallest node.
    """
    N = D.node_count
    if N == 0:
        return None
    cyclic = D.cyclic_nodes()
    if not cyclic.any():
        return None
    sources = np.flatnonzero(cyclic)
    kw = {}
    if max_length is not None:
        if max_length < 2:
            return None
        kw["limit"] = max_length - 1
    csr = D.to_csr()
    dist = dijkstra(csr, directed=True, unweighted=True, indices=sources, **kw)
    row_of = {int(s): k for k, s in enumerate(sources)}
    row_idx = np.full(N, -1, dtype=np.int64)
    row_idx[sources] = np.arange(len(sources))
    src = np.repeat(np.arange(N), np.diff(csr.indptr))
    dst = csr.indices.astype(np.int64)
    keep = cyclic[src] & cyclic[dst]
    src, dst = src[keep], dst[keep]
    # a cycle through s closes via an arc u -> s; its length is dist(s, u) + 1
    lengths = dist[row_idx[dst], src] + 1
    finite = np.isfinite(lengths)
    if not finite.any():
        return None
    best = int(lengths[finite].min())
    if max_length is not None and best > max_length:
        return None
    s = int(dst[finite & (lengths == best)].min())
    # dist(v, s) for every source v
    to_s = dist[:, s]
    seq = [s]
    cur = s
    for step in range(best - 1):
        remaining = best - step - 1
        nxt = None
        for v in D.out[cur]:
            k = row_of.get(v)
            if k is not None and to_s[k] == remaining:
                nxt = v
                break
        if nxt is None:  # pragma: no cover - would contradict the girth computation
            raise IntegrityError("failed to trace a minimum cycle")
        seq.append(nxt)
        cur = nxt
    if not D.has_arc(cur, s):  # pragma: no cover
        raise IntegrityError("traced path does not close")
    return DirectedCycle(tuple(seq))


def verify_cs_bound(D: Digraph) -> CSReport:
    """Check that a digraph with minimum out-degree ``r >= 1`` has a cycle of length at most ``2N / (r + 1)``."""
    N = D.node_count
    r = D.min_out_degree()
    cyc = shortest_directed_cycle(D)
    girth = len(cyc) if cyc is not None else None
    if r < 1:
        return CSReport(N, r, girth, None, True)
    bound = (2 * N) // (r + 1)
    return CSReport(N, r, girth, bound, girth is not None and girth <= bound)


# -- ring-family witnesses ---------------------------------------------


@dataclass(frozen=True)
class RingStarWitness:
    """A ring-family member in the host: ``pairs[i] = (x_i, y_i)``."""

    t: int
    pairs: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int, int], ...]

    def labeling(self) -> list[int]:
        """Host vertex per ring label ``x_0, y_0, x_1, ...``."""
        return [v for p in self.pairs for v in p]

    def to_dict(self) -> dict:
        return {
            "found": True,
            "t": self.t,
            "pairs": [list(p) for p in self.pairs],
            "edges": [list(e) for e in self.edges],
        }


def _ring_triples(pairs) -> list[tuple[int, int, int]]:
    t = len(pairs)
    out = []
    for i in range(t):
        x, y = pairs[i]
        nx, ny = pairs[(i + 1) % t]
        out.append(tuple(sorted((x, y, nx))))
        out.append(tuple(sorted((x, y, ny))))
    return out


def cycle_to_ring_star(G: TripleGraph, cycle: DirectedCycle) -> RingStarWitness:
    pairs = tuple(unrank_pair(v) for v in cycle.nodes)
    for a, b in pairs:
        if b >= G.n:
            raise IntegrityError(f"pair {(a, b)} outside host")
    edges = _ring_triples(pairs)
    for e in edges:
        if not G.has_edge(*e):
            raise IntegrityError(f"cycle arc requires missing edge {e}")
    return RingStarWitness(len(pairs), pairs, tuple(edges))


def find_ring_star(G: TripleGraph, t_max: int = 9) -> RingStarWitness | None:
    """Shortest ring-family member with ``t <= t_max``, or ``None``."""
    D = build_pair_digraph(G)
    cyc = shortest_directed_cycle(D, max_length=t_max)
    if cyc is None:
        return None
    return cycle_to_ring_star(G, cyc)


# -- ring blow-ups -------------------------------------------------------


@dataclass(frozen=True)
class RingBlowupWitness:
    """A copy of ``R_t(2)``: ``positions[i] = (X_i, Y_i)``, the clone pairs of ``x_i`` and ``y_i``."""

    t: int
    positions: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    edges: tuple[tuple[int, int, int], ...] = field(repr=False)

    def vertices(self) -> list[int]:
        return [v for X, Y in self.positions for v in (*X, *Y)]

    def clone_pairs(self) -> list[tuple[int, int]]:
        """The ``2t`` clone pairs in ring-label order ``x_0, y_0, x_1, ...``."""
        return [P for X, Y in self.positions for P in (X, Y)]

    def to_dict(self) -> dict:
        return {
            "found": True,
            "t": self.t,
            "pairs": [[list(X), list(Y)] for X, Y in self.positions],
            "edges": [list(e) for e in self.edges],
        }


def _blowup_triples(positions) -> list[tuple[int, int, int]]:
    t = len(positions)
    out = []
    for i in range(t):
        X, Y = positions[i]
        nX, nY = positions[(i + 1) % t]
        for a in X:
            for b in Y:
                for c in (*nX, *nY):
                    out.append(tuple(sorted((a, b, c))))
    return out


Node = tuple[tuple[int, int], tuple[int, int]]


class PairPairDigraph:
    """Lazy digraph on pairs of disjoint vertex pairs.

    Node ``(A, B)`` (stored with ``A < B``) has an arc to ``(C, D)`` iff
    ``a b c`` is an edge for every ``a in A``, ``b in B``, ``c in C | D``.
    The arc condition is symmetric in ``A, B`` and only sees ``C | D``, so
    ordered and unordered pairs give the same cycles.
    """

    def __init__(self, G: TripleGraph):
        self.G = G
        self.masks = G.pair_masks

    def common(self, node: Node) -> int:
        (a1, a2), (b1, b2) = node
        m = self.masks
        return m[a1][b1] & m[a1][b2] & m[a2][b1] & m[a2][b2]

    def has_arc(self, src: Node, dst: Node) -> bool:
        need = 0
        for P in dst:
            for v in P:
                need |= 1 << v
        return self.common(src) & need == need

    @staticmethod
    def nodes_within(mask: int) -> Iterator[Node]:
        """All nodes whose four vertices lie in ``mask``, in ascending order."""
        vs = _bits(mask)
        k = len(vs)
        for i1 in range(k):
            c1 = vs[i1]
            for i2 in range(i1 + 1, k):
                c2 = vs[i2]
                for j1 in range(i1 + 1, k):
                    if j1 == i2:
                        continue
                    d1 = vs[j1]
                    for j2 in range(j1 + 1, k):
                        if j2 == i2:
                            continue
                        yield (c1, c2), (d1, vs[j2])

    def out_neighbors(self, node: Node) -> Iterator[Node]:
        return self.nodes_within(self.common(node))


def build_pairpair_digraph(G: TripleGraph) -> PairPairDigraph:
    return PairPairDigraph(G)


def _node_mask(node: Node) -> int:
    (a1, a2), (b1, b2) = node
    return (1 << a1) | (1 << a2) | (1 << b1) | (1 << b2)


def find_ring_blowup(G: TripleGraph, t_max: int = 9, t_min: int = 2) -> RingBlowupWitness | None:
    """Smallest-``t`` vertex-disjoint copy of ``R_t(2)`` with ``t <= t_max``.

    Within one ``t`` the cycle returned is the lexicographically smallest
    node sequence starting from its smallest node.
    """
    if G.n < 8 or t_max < 2:
        return None
    D = build_pair_digraph(G)
    cyclic = D.cyclic_nodes()
    if not cyclic.any():
        return None
    P = PairPairDigraph(G)
    full = (1 << G.n) - 1
    # vertices appearing in at least one cyclic pair
    live = 0
    for r in np.flatnonzero(cyclic).tolist():
        a, b = unrank_pair(r)
        live |= (1 << a) | (1 << b)

    def cross_ok(node: Node) -> bool:
        (a1, a2), (b1, b2) = node
        return (
            cyclic[rank_pair(a1, b1)]
            and cyclic[rank_pair(a1, b2)]
            and cyclic[rank_pair(a2, b1)]
            and cyclic[rank_pair(a2, b2)]
        )

    dist = None

    for t in range(max(2, t_min), t_max + 1):
        if 4 * t > G.n:
            break
        if t >= 3 and dist is None:
            dist = D.distances()
        for start in P.nodes_within(live & full):
            if not cross_ok(start):
                continue
            (sa1, _), (sb1, _) = start
            s_node = rank_pair(sa1, sb1)
            s_mask = _node_mask(start)
            path = [start]

            def dfs(cur: Node, used: int, remaining: int) -> bool:
                cm = P.common(cur)
                if remaining == 1:
                    return cm & s_mask == s_mask
                for nxt in P.nodes_within(cm & ~used & live):
                    if nxt <= start or not cross_ok(nxt):
                        continue
                    if dist is not None:
                        (c1, _), (d1, _) = nxt
                        if dist[rank_pair(c1, d1), s_node] > remaining - 1:
                            continue
                    path.append(nxt)
                    if dfs(nxt, used | _node_mask(nxt), remaining - 1):
                        return True
                    path.pop()
                return False

            if dfs(start, s_mask, t):
                positions = tuple(path)
                edges = _blowup_triples(positions)
                for e in edges:
                    if not G.has_edge(*e):  # pragma: no cover
                        raise IntegrityError(f"blow-up witness misses edge {e}")
                return RingBlowupWitness(t, positions, tuple(edges))
    return None
