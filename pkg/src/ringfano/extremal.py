"""Property checks and exhaustive Turan-number search for tiny n."""

from __future__ import annotations

import os
from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb

from .embedding import find_embedding
from .errors import DeskScaleCapError, InvalidInputError
from .hypergraph import TripleGraph, min_l_degree

__all__ = [
    "TuranResult",
    "has_lm_property",
    "max_edge_free_set",
    "covers_pairs",
    "contains_member",
    "brute_ex",
    "brute_ex2",
    "flat_ex",
    "brute_cap",
    "EDGES",
    "MIN_CODEGREE",
]

EDGES = "edges"
MIN_CODEGREE = "codegree"
_DEFAULT_CAP = 6


def brute_cap() -> int:
    """Largest ``n`` accepted by the exhaustive searches (env ``RINGFANO_BRUTE_CAP`` overrides 6)."""
    raw = os.environ.get("RINGFANO_BRUTE_CAP")
    if raw is None:
        return _DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise InvalidInputError(f"RINGFANO_BRUTE_CAP must be an integer, got {raw!r}") from None


def has_lm_property(H: TripleGraph, m: int) -> bool:
    """True iff every ``m``-subset of ``V(H)`` spans at least one edge."""
    if m < 0:
        raise InvalidInputError(f"m must be non-negative, got {m}")
    edge_masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in H.triples()]
    for S in combinations(range(H.n), m):
        s = 0
        for v in S:
            s |= 1 << v
        if not any(e & s == e for e in edge_masks):
            return False
    return True


def max_edge_free_set(H: TripleGraph) -> frozenset[int]:
    """A largest vertex set spanning no edge (branch and bound, include-first)."""
    n = H.n
    # earlier[v]: masks {a, b} with a < b < v and {a, b, v} an edge
    earlier: list[list[int]] = [[] for _ in range(n)]
    for a, b, c in H.triples():
        earlier[c].append((1 << a) | (1 << b))
    best = [0, 0]  # size, mask

    def rec(v: int, chosen: int, size: int) -> None:
        if size + (n - v) <= best[0]:
            return
        if v == n:
            best[0], best[1] = size, chosen
            return
        if not any(p & chosen == p for p in earlier[v]):
            rec(v + 1, chosen | (1 << v), size + 1)
        rec(v + 1, chosen, size)

    rec(0, 0, 0)
    return frozenset(v for v in range(n) if best[1] >> v & 1)


def covers_pairs(H: TripleGraph) -> bool:
    """At least four vertices and every pair in some edge."""
    if H.n < 4:
        return False
    return min_l_degree(H, 2) >= 1


def contains_member(G: TripleGraph, family) -> int | None:
    """Index of the first pattern in ``family`` that embeds in ``G``."""
    for idx, P in enumerate(family):
        if find_embedding(P, G) is not None:
            return idx
    return None


@dataclass
class TuranResult:
    n: int
    family: list[str]
    mode: str
    value: int
    witness: TripleGraph
    nodes_explored: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family": list(self.family),
            "mode": self.mode,
            "value": self.value,
            "witness": {"n": self.witness.n, "edges": [list(e) for e in self.witness.triples()]},
            "nodes_explored": self.nodes_explored,
        }


class _Anchored:
    """Finds a copy of ``pattern`` that uses a given host triple."""

    def __init__(self, pattern: TripleGraph):
        self.p = pattern.n
        edges = pattern.triples()
        self.plans = []
        for anchor in edges:
            rest = [v for v in range(self.p) if v not in anchor]
            placed = list(anchor)
            steps = []
            # place remaining vertices, most-constrained first
            while rest:
                def closes(v):
                    return sum(1 for e in edges if v in e and all(u in placed or u == v for u in e))
                v = max(rest, key=lambda u: (closes(u), -u))
                rest.remove(v)
                placed.append(v)
                steps.append(v)
            order = list(anchor) + steps
            pos = {v: i for i, v in enumerate(order)}
            cons: list[list[tuple[int, int]]] = [[] for _ in range(self.p)]
            for e in edges:
                ps = sorted(pos[u] for u in e)
                if ps[2] >= 3:
                    cons[ps[2]].append((ps[0], ps[1]))
            self.plans.append(cons)

    def embeds_through(self, masks, n: int, triple) -> bool:
        if self.p > n:
            return False
        full = (1 << n) - 1
        p = self.p
        for cons in self.plans:
            for a, b, c in permutations(triple):
                img = [a, b, c] + [0] * (p - 3)

                def rec(k: int, used: int) -> bool:
                    if k == p:
                        return True
                    cand = full & ~used
                    for x, y in cons[k]:
                        cand &= masks[img[x]][img[y]]
                    while cand:
                        low = cand & -cand
                        cand ^= low
                        img[k] = low.bit_length() - 1
                        if rec(k + 1, used | low):
                            return True
                    return False

                if rec(3, (1 << a) | (1 << b) | (1 << c)):
                    return True
        return False


def _family_names(family, names) -> list[str]:
    if names is not None:
        return list(names)
    return [f"pattern{i}(n={P.n},m={P.edge_count})" for i, P in enumerate(family)]


def brute_ex(n: int, family, mode: str = EDGES, names=None, cap: int | None = None) -> TuranResult:
    """Exact ``ex(n, family)`` (or ``ex_2`` with ``mode="codegree"``) by pruned depth-first search.

    Triples are decided in ascending rank order, "include" before
    "exclude"; a branch dies as soon as the newest triple completes a
    forbidden copy.  The witness is the first optimal graph met in that
    order.
    """
    cap = brute_cap() if cap is None else cap
    if n > cap:
        raise DeskScaleCapError(f"n={n} exceeds the desk-scale cap of {cap}")
    if mode not in (EDGES, MIN_CODEGREE):
        raise InvalidInputError(f"unknown mode {mode!r}")
    if n < 0 or (mode == MIN_CODEGREE and n < 3):
        raise InvalidInputError(f"n={n} too small for mode {mode}")
    family = list(family)
    checkers = [_Anchored(P) for P in family if P.n <= n and P.edge_count > 0]
    # patterns with no edges embed in any host with enough vertices
    trivially_blocked = any(P.edge_count == 0 and P.n <= n for P in family)
    # colex order, so search position equals TripleGraph rank
    triples = sorted(combinations(range(n), 3), key=lambda t: (t[2], t[1], t[0]))
    T = len(triples)
    masks = [[0] * n for _ in range(n)]
    cod = [[0] * n for _ in range(n)]
    pair_ranks = {p: [] for p in combinations(range(n), 2)}
    for r, (a, b, c) in enumerate(triples):
        for p in ((a, b), (a, c), (b, c)):
            pair_ranks[p].append(r)
    pairs = list(pair_ranks)

    chosen: list[int] = []
    best_val = -1
    best_set: list[int] = []
    nodes = 0

    def value() -> int:
        if mode == EDGES:
            return len(chosen)
        return min(cod[a][b] for a, b in pairs)

    def bound(idx: int) -> int:
        if mode == EDGES:
            return len(chosen) + (T - idx)
        return min(
            cod[a][b] + len(pair_ranks[(a, b)]) - bisect_left(pair_ranks[(a, b)], idx)
            for a, b in pairs
        )

    def add(a, b, c, sign):
        for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
            masks[x][y] ^= 1 << z
            masks[y][x] ^= 1 << z
            cod[x][y] += sign
            cod[y][x] += sign

    def rec(idx: int) -> None:
        nonlocal best_val, best_set, nodes
        nodes += 1
        if bound(idx) <= best_val:
            return
        if idx == T:
            best_val = value()
            best_set = list(chosen)
            return
        a, b, c = triples[idx]
        add(a, b, c, +1)
        if not any(ch.embeds_through(masks, n, (a, b, c)) for ch in checkers):
            chosen.append(idx)
            rec(idx + 1)
            chosen.pop()
        add(a, b, c, -1)
        rec(idx + 1)

    if trivially_blocked:
        raise InvalidInputError("family contains an edgeless pattern that fits in n vertices")
    rec(0)
    witness = TripleGraph.from_edges(n, [triples[r] for r in best_set])
    if contains_member(witness, family) is not None:  # pragma: no cover
        raise AssertionError("brute_ex produced a witness containing a forbidden pattern")
    return TuranResult(n, _family_names(family, names), mode, best_val, witness, nodes)


def brute_ex2(n: int, family, names=None, cap: int | None = None) -> TuranResult:
    """Maximum minimum co-degree over ``n``-vertex graphs with no member of ``family``."""
    return brute_ex(n, family, MIN_CODEGREE, names, cap)


def flat_ex(n: int, family, mode: str = EDGES, cap: int = 5) -> tuple[int, TripleGraph]:
    """Reference value by enumerating every 3-graph on ``n`` labelled vertices."""
    if n > cap:
        raise DeskScaleCapError(f"flat enumeration over 2^{comb(n, 3)} graphs refused (cap n={cap})")
    if mode == MIN_CODEGREE and n < 3:
        raise InvalidInputError("co-degree mode needs n >= 3")
    T = comb(n, 3)
    best = -1
    best_g = TripleGraph.empty(n)
    for code in range(1 << T):
        ranks = [r for r in range(T) if code >> r & 1]
        G = TripleGraph.from_ranks(n, ranks)
        val = G.edge_count if mode == EDGES else min_l_degree(G, 2)
        if val <= best:
            continue
        if contains_member(G, family) is None:
            best, best_g = val, G
    return best, best_g
