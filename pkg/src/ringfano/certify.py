"""Independent re-verification of witnesses.

These checkers rebuild the required triples from the witness's vertex
data alone (never from the producer's edge lists) and test them against
the host directly.
"""

from __future__ import annotations

from .hypergraph import TripleGraph

__all__ = ["check_embedding", "check_ring_star", "check_ring_blowup", "check_fstar"]


def check_embedding(pattern: TripleGraph, host: TripleGraph, mapping) -> bool:
    mapping = list(mapping)
    if len(mapping) != pattern.n or len(set(mapping)) != len(mapping):
        return False
    if any(not 0 <= v < host.n for v in mapping):
        return False
    return all(host.has_edge(mapping[a], mapping[b], mapping[c]) for a, b, c in pattern.triples())


def check_ring_star(host: TripleGraph, witness) -> bool:
    pairs = [tuple(p) for p in witness.pairs]
    t = len(pairs)
    if t < 2 or witness.t != t:
        return False
    for x, y in pairs:
        if x == y or not (0 <= x < host.n and 0 <= y < host.n):
            return False
    for i in range(t):
        x, y = pairs[i]
        for z in pairs[(i + 1) % t]:
            if z in (x, y) or not host.has_edge(x, y, z):
                return False
    return True


def check_ring_blowup(host: TripleGraph, witness) -> bool:
    pos = [(tuple(X), tuple(Y)) for X, Y in witness.positions]
    t = len(pos)
    if t < 2 or witness.t != t:
        return False
    verts = [v for X, Y in pos for v in (*X, *Y)]
    if len(verts) != 4 * t or len(set(verts)) != 4 * t:
        return False
    if any(not 0 <= v < host.n for v in verts):
        return False
    for i in range(t):
        X, Y = pos[i]
        nX, nY = pos[(i + 1) % t]
        for a in X:
            for b in Y:
                for c in nX + nY:
                    if not host.has_edge(a, b, c):
                        return False
    return True


def check_fstar(host: TripleGraph, witness) -> bool:
    u = witness.u
    (x, x2), (y, y2), (z, z2) = witness.pairs
    verts = [u, x, x2, y, y2, z, z2]
    if len(set(verts)) != 7 or any(not 0 <= v < host.n for v in verts):
        return False
    for a in (x, x2):
        for b in (y, y2):
            for c in (z, z2):
                if not host.has_edge(a, b, c):
                    return False
    return all(host.has_edge(u, p, q) for p, q in witness.pairs)
