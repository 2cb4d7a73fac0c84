from __future__ import annotations

from itertools import combinations, permutations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import edge_set, simple_cycles_min_length
from ringfano.certify import check_ring_blowup, check_ring_star
from ringfano.constructions import build_B, build_complete, build_G_half, build_ring, build_turan_T, random_graph, ring_edges
from ringfano.embedding import find_embedding
from ringfano.errors import InvalidInputError
from ringfano.hypergraph import TripleGraph, blow_up
from ringfano.ringsearch import (
    Digraph,
    DirectedCycle,
    build_pair_digraph,
    find_ring_blowup,
    find_ring_star,
    shortest_directed_cycle,
    verify_cs_bound,
)


@st.composite
def digraphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(arcs), unique=True)) if arcs else []
    return n, set(chosen)


@given(digraphs())
@settings(max_examples=200)
def test_shortest_cycle_matches_enumeration(nd):
    n, arcs = nd
    D = Digraph.from_arcs(n, arcs)
    cyc = shortest_directed_cycle(D)
    girth = simple_cycles_min_length(n, arcs)
    if girth is None:
        assert cyc is None and D.is_acyclic()
        return
    assert len(cyc) == girth and cyc.is_valid_in(D)
    # lexicographically smallest among minimum cycles written from their smallest node
    best = min(
        seq
        for seq in permutations(range(n), girth)
        if seq[0] == min(seq) and all((seq[i], seq[(i + 1) % girth]) in arcs for i in range(girth))
    )
    assert cyc.nodes == best
    if girth > 2:
        assert shortest_directed_cycle(D, max_length=girth - 1) is None


def test_directed_cycle_validation():
    with pytest.raises(InvalidInputError):
        DirectedCycle((1,))
    with pytest.raises(InvalidInputError):
        DirectedCycle((1, 2, 1))


def test_cs_bound_on_examples():
    cyc5 = Digraph.from_arcs(5, [(i, (i + 1) % 5) for i in range(5)])
    rep = verify_cs_bound(cyc5)
    assert (rep.r, rep.girth, rep.bound, rep.holds) == (1, 5, 5, True)
    complete = Digraph([[v for v in range(6) if v != u] for u in range(6)])
    rep = verify_cs_bound(complete)
    assert rep.girth == 2 and rep.bound == 2 and rep.holds
    sink = Digraph.from_arcs(3, [(0, 1), (1, 2)])
    assert verify_cs_bound(sink).bound is None


@given(st.integers(4, 7), st.integers(0, 1000))
@settings(max_examples=40, deadline=None)
def test_pair_digraph_arcs_follow_definition(n, seed):
    G = random_graph(n, 0.6, seed)
    E = edge_set(G)
    D = build_pair_digraph(G)
    pairs = list(combinations(range(n), 2))
    expect = set()
    for (u, v), (a, b) in product(pairs, pairs):
        if {u, v} & {a, b}:
            continue
        if frozenset((u, v, a)) in E and frozenset((u, v, b)) in E:
            expect.add((D.node(u, v), D.node(a, b)))
    assert set(D.arcs()) == expect


def _ring_star_exists(G: TripleGraph, t: int) -> bool:
    """Brute force over all label maps of R_t that keep each ring edge on three vertices."""
    E = edge_set(G)
    edges = ring_edges(t)
    for img in product(range(G.n), repeat=2 * t):
        if all(len({img[a], img[b], img[c]}) == 3 and frozenset((img[a], img[b], img[c])) in E for a, b, c in edges):
            return True
    return False


@given(st.integers(4, 6), st.floats(0.2, 0.9), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_ring_star_search_is_complete(n, p, seed):
    G = random_graph(n, p, seed)
    w = find_ring_star(G, t_max=3)
    exists = [t for t in (2, 3) if _ring_star_exists(G, t)]
    if not exists:
        assert w is None
    else:
        assert w is not None and w.t == exists[0]
        assert check_ring_star(G, w)


def test_G_half_is_ring_free():
    for n in range(4, 25):
        G = build_G_half(n)
        assert build_pair_digraph(G).is_acyclic()
        assert find_ring_star(G) is None


def test_turan_T_ring_star_parity():
    # T(n) contains R_3, so its pair digraph has a 3-cycle but no 2-cycle
    w = find_ring_star(build_turan_T(9))
    assert w is not None and w.t == 3


@given(st.integers(0, 10**6), st.sampled_from([0.5, 0.7, 0.9]))
@settings(max_examples=15, deadline=None)
def test_ring_blowup_matches_embedding_oracle(seed, p):
    G = random_graph(12, p, seed)
    w = find_ring_blowup(G, t_max=3)
    oracle = [t for t in (2, 3) if find_embedding(blow_up(build_ring(t), 2), G) is not None]
    if not oracle:
        assert w is None
    else:
        assert w is not None and w.t == oracle[0]
        assert check_ring_blowup(G, w)
        assert len(w.edges) == 16 * w.t


def test_ring_blowup_known_hosts():
    H = blow_up(build_ring(3), 2)
    w = find_ring_blowup(H, 9)
    assert w.t == 3 and check_ring_blowup(H, w)
    assert find_ring_blowup(build_G_half(20), 9) is None
    w = find_ring_blowup(build_complete(12), 9)
    assert w.t == 2 and check_ring_blowup(build_complete(12), w)
    assert find_ring_blowup(build_B(20), 9).t == 2


def test_random_digraph_cs_bound_holds():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(2, 30))
        r = int(rng.integers(1, n))
        out = [sorted(rng.choice([v for v in range(n) if v != u], size=r, replace=False).tolist()) for u in range(n)]
        assert verify_cs_bound(Digraph(out)).holds
