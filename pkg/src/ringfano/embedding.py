"""Subgraph containment for 3-graphs by backtracking over bitmasks.

Pattern vertices are placed in a fixed static order (see
:func:`search_order`); host candidates are tried in ascending index order,
so the first embedding found is the lexicographically smallest image
sequence in that order.  Pruning:

* degree and co-degree compatibility between pattern and host;
* every pattern edge whose other two vertices are already placed
  restricts candidates to the host co-neighbourhood of their images;
* forward checking of later vertices whose candidate sets just shrank;
* host twins (vertices whose transposition is an automorphism): only the
  smallest unused member of a twin class is tried.  Swapping a used twin
  for a smaller unused one yields a lexicographically smaller embedding,
  so this never hides the lexicographic minimum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import TripleGraph

__all__ = ["Embedding", "find_embedding", "search_order", "contains"]


@dataclass(frozen=True)
class Embedding:
    """Injective, edge-preserving map; ``mapping[v]`` is the host image of pattern vertex ``v``."""

    mapping: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]

    def __len__(self) -> int:
        return len(self.mapping)

    def image_edges(self, pattern: TripleGraph) -> list[tuple[int, int, int]]:
        return [
            tuple(sorted(self.mapping[v] for v in e)) for e in pattern.triples()
        ]


def search_order(pattern: TripleGraph) -> tuple[int, ...]:
    """Static placement order for pattern vertices.

    Start from the highest-degree vertex; then repeatedly take the vertex
    that closes the most pattern edges with the placed set, breaking ties
    by edges touching the placed set, then degree, then smallest index.
    """
    n = pattern.n
    if n == 0:
        return ()
    deg = pattern.degrees.tolist()
    edges = pattern.triples()
    inc = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            inc[v].append(e)
    placed: list[int] = []
    seen = set()
    first = min(range(n), key=lambda v: (-deg[v], v))
    placed.append(first)
    seen.add(first)
    while len(placed) < n:
        best = None
        best_key = None
        for v in range(n):
            if v in seen:
                continue
            closes = touches = 0
            for e in inc[v]:
                others = [u for u in e if u != v]
                k = sum(u in seen for u in others)
                closes += k == 2
                touches += k >= 1
            key = (-closes, -touches, -deg[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        placed.append(best)
        seen.add(best)
    return tuple(placed)


class _Plan:
    """Per-pattern precomputation shared across hosts."""

    def __init__(self, pattern: TripleGraph):
        self.order = search_order(pattern)
        pos = {v: i for i, v in enumerate(self.order)}
        p = pattern.n
        self.size = p
        self.degree = [int(pattern.degrees[v]) for v in self.order]
        # edge constraints: for position k, pairs (a, b) of earlier positions
        self.pairs: list[list[tuple[int, int]]] = [[] for _ in range(p)]
        for e in pattern.triples():
            ps = sorted(pos[v] for v in e)
            self.pairs[ps[2]].append((ps[0], ps[1]))
        cod = pattern.codegrees
        # co-degree requirements against earlier positions
        self.cod_req: list[list[tuple[int, int]]] = [[] for _ in range(p)]
        for k in range(p):
            for a in range(k):
                c = int(cod[self.order[a], self.order[k]])
                if c:
                    self.cod_req[k].append((a, c))
        # forward checks triggered once position k is placed
        self.forward: list[list[tuple[int, list[tuple[int, int]]]]] = [[] for _ in range(p)]
        for k in range(p):
            for m in range(k + 1, p):
                if any(max(a, b) == k for a, b in self.pairs[m]):
                    ready = [(a, b) for a, b in self.pairs[m] if max(a, b) <= k]
                    self.forward[k].append((m, ready))


class _HostIndex:
    def __init__(self, host: TripleGraph):
        self.n = host.n
        self.masks = host.pair_masks
        self.deg = host.degrees.tolist()
        self.cod = host.codegrees.tolist()
        self._deg_ok: dict[int, int] = {}
        self._cod_ok: dict[tuple[int, int], int] = {}
        cls = host.twin_classes
        self.lower_twins = [0] * host.n
        for v in range(host.n):
            m = 0
            for u in range(v):
                if cls[u] == cls[v]:
                    m |= 1 << u
            self.lower_twins[v] = m

    def deg_ok(self, d: int) -> int:
        m = self._deg_ok.get(d)
        if m is None:
            m = 0
            for v, dv in enumerate(self.deg):
                if dv >= d:
                    m |= 1 << v
            self._deg_ok[d] = m
        return m

    def cod_ok(self, x: int, c: int) -> int:
        key = (x, c)
        m = self._cod_ok.get(key)
        if m is None:
            m = 0
            row = self.cod[x]
            for v in range(self.n):
                if row[v] >= c:
                    m |= 1 << v
            self._cod_ok[key] = m
        return m


def _search(plan: _Plan, hx: _HostIndex, use_twins: bool = True) -> list[int] | None:
    p = plan.size
    img = [0] * p
    full = (1 << hx.n) - 1
    masks = hx.masks
    lower_twins = hx.lower_twins

    def domain(k: int, used: int, pairs) -> int:
        d = hx.deg_ok(plan.degree[k]) & ~used & full
        for a, b in pairs:
            d &= masks[img[a]][img[b]]
            if not d:
                return 0
        return d

    def rec(k: int, used: int) -> bool:
        if k == p:
            return True
        cand = domain(k, used, plan.pairs[k])
        for a, c in plan.cod_req[k]:
            if not cand:
                break
            cand &= hx.cod_ok(img[a], c)
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            if use_twins and lower_twins[v] & ~used:
                continue
            img[k] = v
            nused = used | low
            ok = True
            for m, ready in plan.forward[k]:
                if not domain(m, nused, ready):
                    ok = False
                    break
            if ok and rec(k + 1, nused):
                return True
        return False

    if rec(0, 0):
        return img
    return None


def find_embedding(pattern: TripleGraph, host: TripleGraph) -> Embedding | None:
    """Return an edge-preserving injection of ``pattern`` into ``host``, or ``None``.

    The witness is the lexicographically smallest sequence of host images
    taken in :func:`search_order` of the pattern; repeated calls return the
    same embedding.
    """
    if pattern.n > host.n or pattern.edge_count > host.edge_count:
        return None
    if pattern.n == 0:
        return Embedding(())
    plan = _Plan(pattern)
    img = _search(plan, _HostIndex(host))
    if img is None:
        return None
    mapping = [0] * pattern.n
    for k, v in enumerate(plan.order):
        mapping[v] = img[k]
    return Embedding(tuple(mapping))


def contains(host: TripleGraph, pattern: TripleGraph) -> bool:
    return find_embedding(pattern, host) is not None
