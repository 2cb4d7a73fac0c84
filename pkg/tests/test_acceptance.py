"""One test per acceptance criterion; the terminal summary prints a PASS/FAIL line for each."""

from __future__ import annotations

import time
from collections import deque
from contextlib import contextmanager
from math import comb, sqrt

import numpy as np
import pytest

from conftest import embeds
from ringfano.certify import check_embedding, check_ring_blowup
from ringfano.constructions import (
    build_B,
    build_complete,
    build_fano,
    build_G_half,
    build_ring,
    build_S,
    build_turan_T,
    k4_minus_edge,
    random_graph,
)
from ringfano.densitylab import (
    codegree_bound_rings,
    optimize_alpha,
    s_base_density,
    s_iterated_density,
    turan_bound_rings,
)
from ringfano.embedding import find_embedding
from ringfano.extremal import brute_ex, flat_ex, has_lm_property
from ringfano.fanofinder import find_fano
from ringfano.hypergraph import blow_up, edge_density, min_l_degree
from ringfano.ringsearch import Digraph, build_pair_digraph, find_ring_blowup, find_ring_star, verify_cs_bound

SEED = 20261015


@contextmanager
def budget(seconds: float):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, budget {seconds}s"


def _bfs_girth(n: int, out: list[list[int]]) -> int | None:
    best = None
    for s in range(n):
        dist = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for v in out[u]:
                if v == s:
                    L = dist[u] + 1
                    best = L if best is None else min(best, L)
                elif v not in dist:
                    dist[v] = dist[u] + 1
                    q.append(v)
    return best


@pytest.mark.criterion(1, "R_t has the (t+1) property and lacks the t property, t = 2..8, under 5 s")
def test_ring_lm_property():
    with budget(5):
        for t in range(2, 9):
            R = build_ring(t)
            assert has_lm_property(R, t + 1), t
            assert not has_lm_property(R, t), t


@pytest.mark.criterion(2, "Fano does not embed in B(7..14); min co-degree of B(n) is floor(n/2) for n = 4..200, under 60 s")
def test_B_fano_free_and_codegree():
    with budget(60):
        F = build_fano()
        for n in range(7, 15):
            assert find_embedding(F, build_B(n)) is None, n
        for n in range(4, 201):
            assert min_l_degree(build_B(n), 2) == n // 2, n
    # independent oracle on the smallest hosts
    assert not embeds(F, build_B(7))


@pytest.mark.criterion(3, "G_half(4..24): pair digraph acyclic and no ring-family member, under 60 s")
def test_G_half_ring_free():
    with budget(60):
        for n in range(4, 25):
            G = build_G_half(n)
            assert build_pair_digraph(G).is_acyclic(), n
            assert find_ring_star(G) is None, n


@pytest.mark.criterion(4, "R_2, R_4 absent from T(8..12); R_3 present in T(6), T(9), T(12)")
def test_turan_T_ring_parity():
    R2, R3, R4 = build_ring(2), build_ring(3), build_ring(4)
    for n in range(8, 13):
        T = build_turan_T(n)
        assert find_embedding(R2, T) is None, n
        assert find_embedding(R4, T) is None, n
    for n in (6, 9, 12):
        T = build_turan_T(n)
        emb = find_embedding(R3, T)
        assert emb is not None and check_embedding(R3, T, emb.mapping), n


@pytest.mark.criterion(5, "R_3, R_5 absent from S(30, .4226, d) for d in {0, 1}; R_2 present in S(30, .4226, 0)")
def test_S_ring_parity():
    for d in (0, 1):
        S = build_S(30, 0.4226, d)
        assert find_embedding(build_ring(3), S) is None, d
        assert find_embedding(build_ring(5), S) is None, d
    S = build_S(30, 0.4226, 0)
    emb = find_embedding(build_ring(2), S)
    assert emb is not None and check_embedding(build_ring(2), S, emb.mapping)


@pytest.mark.criterion(6, "short-cycle bound on all 4096 four-node digraphs with min out-degree >= 1 and 1000 random ones, under 60 s")
def test_chvatal_szemeredi_bound():
    arcs = [(u, v) for u in range(4) for v in range(4) if u != v]
    rng = np.random.default_rng(SEED)
    with budget(60):
        seen = checked = 0
        for code in range(1 << len(arcs)):
            seen += 1
            chosen = [a for b, a in enumerate(arcs) if code >> b & 1]
            D = Digraph.from_arcs(4, chosen)
            if D.min_out_degree() < 1:
                continue
            checked += 1
            rep = verify_cs_bound(D)
            out = [[v for (u, v) in chosen if u == w] for w in range(4)]
            assert rep.girth == _bfs_girth(4, out)
            assert rep.holds and rep.girth <= 2 * 4 // (rep.r + 1), code
        assert seen == 4096 and checked > 0
        for i in range(1000):
            n = int(rng.integers(2, 61))
            r = int(rng.integers(1, min(n - 1, 8) + 1))
            out = [sorted(rng.choice([v for v in range(n) if v != u], size=r, replace=False).tolist()) for u in range(n)]
            rep = verify_cs_bound(Digraph(out))
            assert rep.holds, i
            if i < 100:
                assert rep.girth == _bfs_girth(n, out)
                assert rep.girth <= 2 * n // (rep.r + 1)


@pytest.mark.slow
@pytest.mark.criterion(7, "densities B(1000) -> 3/4, G_half(1000) -> 1/2, T(999) -> 5/9 within 2e-3")
def test_density_limits():
    for build, n, limit in ((build_B, 1000, 0.75), (build_G_half, 1000, 0.5), (build_turan_T, 999, 5 / 9)):
        G = build(n)
        assert abs(edge_density(G) - limit) < 2e-3, build.__name__
        del G


@pytest.mark.slow
@pytest.mark.criterion(8, "S optima 0.577350 at 0.42265 and 0.588863 at 0.438558; closed form within 0.01 of S(3000, a, 6), under 2 min")
def test_S_optimization():
    with budget(120):
        base = optimize_alpha(s_base_density)
        assert abs(base.value - 0.577350) <= 1e-4
        assert abs(base.argmax - 0.42265) <= 1e-3
        it = optimize_alpha(s_iterated_density)
        assert abs(it.value - 0.588863) <= 5e-4
        assert abs(it.argmax - 0.438558) <= 2e-3
        for a in (0.40, 0.4226, 0.4386, 0.46):
            assert abs(edge_density(build_S(3000, a, 6)) - s_iterated_density(a)) <= 0.01, a


@pytest.mark.criterion(9, "Fano pipeline: K_12 verified, B(50) fails with a stage, 20 seeded G(40, .85) hosts agree with the oracle")
def test_fano_pipeline():
    F = build_fano()
    K = build_complete(12)
    res = find_fano(K)
    assert res.found and check_embedding(F, K, res.embedding.mapping)
    res = find_fano(build_B(50))
    assert not res.found and res.stage
    for s in np.random.SeedSequence(SEED).generate_state(20).tolist():
        G = random_graph(40, 0.85, int(s))
        res = find_fano(G)
        oracle = find_embedding(F, G) is not None
        assert res.found == oracle, s
        if res.found:
            assert check_embedding(F, G, res.embedding.mapping)


@pytest.mark.criterion(10, "blow-up search finds a verified t = 3 witness in blow_up(R_3, 2) and none in G_half(20)")
def test_ring_blowup_search():
    H = blow_up(build_ring(3), 2)
    w = find_ring_blowup(H, 9)
    assert w is not None and w.t == 3 and check_ring_blowup(H, w)
    assert find_ring_blowup(build_G_half(20), 9) is None


@pytest.mark.criterion(11, "exact ex(n, F) equals flat enumeration for n = 4, 5; ex(4, K4) = 3; ex(n, {}) = C(n, 3) for n <= 6")
def test_brute_ex():
    for n in (4, 5):
        for fam in ([build_complete(4)], [k4_minus_edge()]):
            assert brute_ex(n, fam).value == flat_ex(n, fam)[0]
    assert brute_ex(4, [build_complete(4)]).value == 3
    for n in range(0, 7):
        assert brute_ex(n, []).value == comb(n, 3)


@pytest.mark.criterion(12, "co-degree bound sqrt(2)/3 < 1/2 at t = 9, equals 1/2 at t = 8; Turan bound at t = 2001 within 1e-3 of 1/2")
def test_bound_constants():
    c9 = codegree_bound_rings(9)
    assert c9 == pytest.approx(sqrt(2) / 3, rel=1e-15) and c9 < 0.5
    assert codegree_bound_rings(8) == pytest.approx(0.5, rel=1e-15)
    assert abs(turan_bound_rings(2001) - 0.5) < 1e-3


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
