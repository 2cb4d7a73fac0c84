from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import strategies as st

from ringfano.hypergraph import TripleGraph

# -- independent oracles ------------------------------------------------------
# These re-derive everything from first principles (plain sets and loops) and
# never call the library's search code.


def edge_set(G: TripleGraph) -> set[frozenset[int]]:
    return {frozenset(e) for e in G.triples()}


def all_embeddings(pattern: TripleGraph, host: TripleGraph):
    """Every injective edge-preserving map, as tuples indexed by pattern vertex."""
    H = edge_set(host)
    P = pattern.triples()
    for img in permutations(range(host.n), pattern.n):
        if all(frozenset((img[a], img[b], img[c])) in H for a, b, c in P):
            yield img


def embeds(pattern: TripleGraph, host: TripleGraph) -> bool:
    return next(all_embeddings(pattern, host), None) is not None


def naive_B(n: int) -> set[frozenset[int]]:
    half = (n + 1) // 2
    return {frozenset(t) for t in combinations(range(n), 3) if len({v < half for v in t}) == 2}


def naive_G_half(n: int) -> set[frozenset[int]]:
    a = {f"a{i}": i - 1 for i in range(1, n // 2 + 1)}
    b = {f"b{j}": n // 2 + j - 1 for j in range(1, (n + 1) // 2 + 1)}
    out = set()
    for i in range(1, n // 2 + 1):
        for j in range(1, (n + 1) // 2 + 1):
            for k in range(1, n + 1):
                if not (i < k and j < k):
                    continue
                if f"a{k}" in a and k != i:
                    out.add(frozenset((a[f"a{i}"], b[f"b{j}"], a[f"a{k}"])))
                if f"b{k}" in b and k != j:
                    out.add(frozenset((a[f"a{i}"], b[f"b{j}"], b[f"b{k}"])))
    return out


def naive_T(n: int) -> set[frozenset[int]]:
    sizes = [n // 3 + (1 if r < n % 3 else 0) for r in range(3)]
    part, v = {}, 0
    for p, s in enumerate(sizes):
        for _ in range(s):
            part[v] = p
            v += 1
    out = set()
    for t in combinations(range(n), 3):
        ps = sorted(part[x] for x in t)
        if len(set(ps)) == 3:
            out.add(frozenset(t))
        elif len(set(ps)) == 2:
            doubled = max(set(ps), key=ps.count)
            single = min(set(ps), key=ps.count)
            if single == (doubled + 1) % 3:
                out.add(frozenset(t))
    return out


def naive_S(n: int, alpha: float, depth: int) -> set[frozenset[int]]:
    out = set()

    def rec(vs, d):
        m = len(vs)
        if m < 3:
            return
        v1 = min(m, int((1 - alpha) * m + 0.5))
        rest = m - v1
        v2 = (rest + 1) // 2
        P1, P2, P3 = vs[:v1], vs[v1 : v1 + v2], vs[v1 + v2 :]
        label = {**{v: 1 for v in P1}, **{v: 2 for v in P2}, **{v: 3 for v in P3}}
        for t in combinations(vs, 3):
            ps = sorted(label[v] for v in t)
            if ps == [1, 2, 3] or (ps[0] == ps[1] == 1 and ps[2] != 1):
                out.add(frozenset(t))
        if d > 0:
            rec(P2, d - 1)
            rec(P3, d - 1)

    rec(list(range(n)), depth)
    return out


def naive_ring(t: int) -> set[frozenset[int]]:
    x = lambda i: 2 * (i % t)  # noqa: E731
    y = lambda i: 2 * (i % t) + 1  # noqa: E731
    return {frozenset(e) for i in range(t) for e in ((x(i), y(i), x(i + 1)), (x(i), y(i), y(i + 1)))}


def simple_cycles_min_length(n: int, arcs: set[tuple[int, int]]) -> int | None:
    """Girth by enumerating every vertex sequence (fine for n <= 5)."""
    best = None
    for L in range(2, n + 1):
        for seq in permutations(range(n), L):
            if all((seq[i], seq[(i + 1) % L]) in arcs for i in range(L)):
                return L
    return best


# -- hypothesis strategies ----------------------------------------------------


@st.composite
def triple_graphs(draw, min_n: int = 0, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    all_t = list(combinations(range(n), 3))
    chosen = draw(st.lists(st.sampled_from(all_t), unique=True, max_size=len(all_t))) if all_t else []
    return TripleGraph.from_edges(n, chosen)


# -- acceptance summary -------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "PASS" if rep.outcome == "passed" else "FAIL" if rep.outcome == "failed" else "SKIP"
        prev = _CRITERIA.get(num)
        if prev is None or prev[0] == "PASS":
            _CRITERIA[num] = (status, text)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, text = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {text}")
