"""Reproducible pass/fail battery over the library's headline checks.

Each claim is a function returning ``(passed, details)``.  Reports hold
no timings or paths that vary between runs, so two runs with the same
configuration serialise to identical bytes.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, isclose, sqrt
from pathlib import Path
from typing import Callable

import numpy as np

from .certify import check_embedding, check_ring_blowup
from .constructions import (
    build_B,
    build_complete,
    build_fano,
    build_G_half,
    build_pg2,
    build_Q3,
    build_ring,
    build_S,
    build_turan_T,
    count_B,
    count_G_half,
    count_turan_T,
    k4_minus_edge,
    random_graph,
)
from .densitylab import (
    codegree_bound_rings,
    optimize_alpha,
    collapsing_series_density,
    s_base_density,
    s_finite_depth_density,
    s_iterated_density,
    turan_bound_rings,
)
from .embedding import find_embedding
from .errors import FormatError, RingFanoError
from .extremal import brute_ex, brute_ex2, flat_ex, has_lm_property
from .fanofinder import find_fano
from .hypergraph import TripleGraph, blow_up, edge_density, min_l_degree
from .io import read_3g
from .ringsearch import Digraph, build_pair_digraph, find_ring_blowup, find_ring_star, verify_cs_bound

__all__ = [
    "DEFAULT_SEED",
    "ClaimResult",
    "Claim",
    "VerifyConfig",
    "FixtureError",
    "CLAIMS",
    "run_all",
    "report_json",
    "exit_code",
    "render_figures",
]

DEFAULT_SEED = 0x9E3779B97F4A7C15

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


class FixtureError(RingFanoError, OSError):
    """A host file listed in the configuration could not be loaded."""

    def __init__(self, path, message: str):
        self.path = str(path)
        self.message = message
        super().__init__(f"{self.path}: {message}")

    def to_dict(self) -> dict:
        return {"error": "fixture", "file": self.path, "message": self.message}


@dataclass
class ClaimResult:
    claim_id: str
    statement: str
    status: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"claim_id": self.claim_id, "statement": self.statement, "status": self.status, "details": self.details}


@dataclass
class VerifyConfig:
    only: list[str] | None = None
    skip_slow: bool = False
    seed: int = DEFAULT_SEED
    fixtures: list[str] = field(default_factory=list)
    jobs: int = 1


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    check: Callable[["VerifyConfig", dict], tuple[bool, dict]]
    slow: bool = False


def _child_seeds(seed: int, count: int) -> list[int]:
    return [int(s.generate_state(1, np.uint64)[0]) for s in np.random.SeedSequence(seed).spawn(count)]


# -- claim bodies ----------------------------------------------------------


def _ring_lm(cfg, fx):
    rows = {}
    for t in range(2, 9):
        R = build_ring(t)
        rows[str(t)] = {"lm_t_plus_1": has_lm_property(R, t + 1), "lm_t": has_lm_property(R, t)}
    ok = all(r["lm_t_plus_1"] and not r["lm_t"] for r in rows.values())
    return ok, {"t": rows}


def _b_fano_free(cfg, fx):
    F = build_fano()
    embeds = [n for n in range(7, 15) if find_embedding(F, build_B(n)) is not None]
    wrong = [n for n in range(4, 201) if min_l_degree(build_B(n), 2) != n // 2]
    return not embeds and not wrong, {
        "fano_embeds_for_n": embeds,
        "codegree_mismatch_for_n": wrong,
        "fano_range": [7, 14],
        "codegree_range": [4, 200],
    }


def _g_half_ring_free(cfg, fx):
    cyclic, found = [], []
    for n in range(4, 25):
        G = build_G_half(n)
        if not build_pair_digraph(G).is_acyclic():
            cyclic.append(n)
        if find_ring_star(G) is not None:
            found.append(n)
    return not cyclic and not found, {"cyclic_pair_digraph_n": cyclic, "ring_found_n": found, "range": [4, 24]}


def _embedding_table(host_for, patterns, ns):
    table = {}
    for n in ns:
        H = host_for(n)
        for name, P in patterns.items():
            emb = find_embedding(P, H)
            ok = emb is None or check_embedding(P, H, emb.mapping)
            table[f"{name}@{n}"] = None if emb is None else list(emb.mapping) if ok else "INVALID"
    return table


def _turan_parity(cfg, fx):
    R2, R3, R4 = build_ring(2), build_ring(3), build_ring(4)
    absent = _embedding_table(build_turan_T, {"R2": R2, "R4": R4}, range(8, 13))
    present = _embedding_table(build_turan_T, {"R3": R3}, (6, 9, 12))
    ok = all(v is None for v in absent.values()) and all(isinstance(v, list) for v in present.values())
    return ok, {"must_be_absent": absent, "must_be_present": present}


def _s_parity(cfg, fx):
    R2, R3, R5 = build_ring(2), build_ring(3), build_ring(5)
    absent = {}
    for d in (0, 1):
        absent.update(
            {f"{k}@depth{d}": v for k, v in _embedding_table(lambda n: build_S(n, 0.4226, d), {"R3": R3, "R5": R5}, [30]).items()}
        )
    present = _embedding_table(lambda n: build_S(n, 0.4226, 0), {"R2": R2}, [30])
    ok = all(v is None for v in absent.values()) and all(isinstance(v, list) for v in present.values())
    return ok, {"alpha": 0.4226, "must_be_absent": absent, "must_be_present": present}


def _random_digraph(rng: np.random.Generator) -> Digraph:
    n = int(rng.integers(2, 61))
    r = int(rng.integers(1, min(n - 1, 8) + 1))
    p_extra = float(rng.uniform(0, 0.1))
    out = []
    for u in range(n):
        others = np.delete(np.arange(n), u)
        base = set(rng.choice(others, size=r, replace=False).tolist())
        extra = others[rng.random(n - 1) < p_extra].tolist()
        out.append(sorted(base | set(extra)))
    return Digraph(out)


def _chvatal_szemeredi(cfg, fx):
    arcs = [(u, v) for u in range(4) for v in range(4) if u != v]
    enumerated = checked = 0
    violations = []
    for code in range(1 << len(arcs)):
        enumerated += 1
        D = Digraph.from_arcs(4, [a for b, a in enumerate(arcs) if code >> b & 1])
        if D.min_out_degree() < 1:
            continue
        checked += 1
        rep = verify_cs_bound(D)
        if not rep.holds:
            violations.append(code)
    rng = np.random.default_rng(cfg.seed)
    rand_bad = []
    for i in range(1000):
        rep = verify_cs_bound(_random_digraph(rng))
        if not rep.holds:
            rand_bad.append(i)
    ok = enumerated == 4096 and not violations and not rand_bad
    return ok, {
        "enumerated_4_node": enumerated,
        "with_min_outdegree_1": checked,
        "violations_4_node": violations,
        "random_checked": 1000,
        "random_violations": rand_bad,
        "seed": cfg.seed,
    }


def _density_limits(cfg, fx):
    cases = {
        "B(1000)": (build_B, count_B, 1000, 0.75),
        "G_half(1000)": (build_G_half, count_G_half, 1000, 0.5),
        "T(999)": (build_turan_T, count_turan_T, 999, 5 / 9),
    }
    rows = {}
    ok = True
    for name, (build, count, n, limit) in cases.items():
        G = build(n)
        d = edge_density(G)
        agree = G.edge_count == count(n)
        rows[name] = {"edges": G.edge_count, "density": d, "limit": limit, "gap": abs(d - limit), "count_agrees": agree}
        ok &= abs(d - limit) < 2e-3 and agree
        del G
    return ok, rows


def _s_optimization(cfg, fx):
    base = optimize_alpha(s_base_density)
    it = optimize_alpha(s_iterated_density)
    collapsing = optimize_alpha(collapsing_series_density)
    gens = {}
    for a in (0.40, 0.4226, 0.4386, 0.46):
        d = edge_density(build_S(3000, a, 6))
        gens[f"{a:g}"] = {
            "generated": d,
            "closed_form": s_iterated_density(a),
            "depth6_closed_form": s_finite_depth_density(a, 6),
            "gap": abs(d - s_iterated_density(a)),
        }
    ok = (
        abs(base.value - 0.577350) <= 1e-4
        and abs(base.argmax - 0.42265) <= 1e-3
        and abs(it.value - 0.588863) <= 5e-4
        and abs(it.argmax - 0.438558) <= 2e-3
        and all(g["gap"] <= 0.01 for g in gens.values())
    )
    return ok, {
        "base": {"argmax": base.argmax, "max": base.value},
        "iterated": {"argmax": it.argmax, "max": it.value},
        "collapsing_series": {"argmax": collapsing.argmax, "max": collapsing.value},
        "generator_n": 3000,
        "generator_depth": 6,
        "generator_vs_closed_form": gens,
    }


def _fano_pipeline(cfg, fx):
    F = build_fano()
    k12 = find_fano(build_complete(12))
    b50 = find_fano(build_B(50))
    hosts = []
    ok = k12.found and check_embedding(F, build_complete(12), k12.embedding.mapping)
    ok &= (not b50.found) and b50.stage is not None
    for s in _child_seeds(cfg.seed, 20):
        G = random_graph(40, 0.85, s)
        res = find_fano(G)
        verified = res.found and check_embedding(F, G, res.embedding.mapping)
        oracle = find_embedding(F, G) is not None
        agree = res.found == oracle
        hosts.append({"seed": s, "found": res.found, "stage": res.stage, "verified": verified, "oracle": oracle})
        ok &= agree and (verified or not res.found)
    for path, G in fx.items():
        res = find_fano(G)
        verified = res.found and check_embedding(F, G, res.embedding.mapping)
        hosts.append({"fixture": path, "found": res.found, "stage": res.stage, "verified": verified})
        ok &= verified or not res.found
    return ok, {
        "k12": {"found": k12.found, "mapping": list(k12.embedding.mapping) if k12.found else None},
        "b50": {"found": b50.found, "stage": b50.stage, "details": b50.details},
        "random_hosts": hosts,
    }


def _ring_blowup(cfg, fx):
    H = blow_up(build_ring(3), 2)
    w = find_ring_blowup(H, 9)
    none = find_ring_blowup(build_G_half(20), 9)
    ok = w is not None and w.t == 3 and check_ring_blowup(H, w) and none is None
    return ok, {"blowup_R3": None if w is None else w.to_dict(), "g_half_20": None if none is None else none.to_dict()}


def _brute_crosscheck(cfg, fx):
    fams = {"K4": [build_complete(4)], "K4-e": [k4_minus_edge()]}
    rows = {}
    ok = True
    for n in (4, 5):
        for name, fam in fams.items():
            b = brute_ex(n, fam).value
            f = flat_ex(n, fam)[0]
            rows[f"{name}@{n}"] = {"brute": b, "flat": f}
            ok &= b == f
    k4 = brute_ex(4, fams["K4"]).value
    empty = {str(n): brute_ex(n, []).value for n in range(0, 7)}
    ok &= k4 == 3 and all(v == comb(int(n), 3) for n, v in empty.items())
    return ok, {"brute_vs_flat": rows, "ex_4_K4": k4, "ex_n_empty": empty}


def _bound_constants(cfg, fx):
    c9, c8, t2001 = codegree_bound_rings(9), codegree_bound_rings(8), turan_bound_rings(2001)
    ok = isclose(c9, sqrt(2) / 3, rel_tol=1e-15) and c9 < 0.5 and isclose(c8, 0.5, rel_tol=1e-15)
    ok &= abs(t2001 - 0.5) < 1e-3
    return ok, {"codegree_t9": c9, "codegree_t8": c8, "turan_t2001": t2001}


def _q3_blowup(cfg, fx):
    Q = build_Q3()
    H = blow_up(Q, 2)
    rows = {}
    for t in (3, 5):
        host = Q if t == 3 else H
        emb = find_embedding(build_ring(t), host)
        rows[f"R{t}"] = None if emb is None else list(emb.mapping)
    return all(v is not None for v in rows.values()), rows


def _pg2(cfg, fx):
    rows = {}
    for q in (2, 3, 5, 7):
        P = build_pg2(q)
        cover = set(P.pair_coverage().values())
        rows[str(q)] = {"points": P.n, "lines": P.edge_count, "pair_coverage": sorted(cover)}
    fano_iso = find_embedding(build_fano(), build_pg2(2).to_triple_graph()) is not None
    ok = fano_iso and all(
        r["points"] == q * q + q + 1 == r["lines"] and r["pair_coverage"] == [1] for q, r in ((int(k), v) for k, v in rows.items())
    )
    return ok, {"planes": rows, "fano_isomorphic_to_pg2_2": fano_iso}


def _ex2_empty(cfg, fx):
    vals = {str(n): brute_ex2(n, []).value for n in range(3, 7)}
    return all(v == int(n) - 2 for n, v in vals.items()), vals


CLAIMS: tuple[Claim, ...] = (
    Claim("ring-lm-property", "R_t has the (2t, t+1)-property but not (2t, t), t = 2..8", _ring_lm),
    Claim("b-fano-free", "B(n) is Fano-free for n = 7..14 and has min co-degree floor(n/2) for n = 4..200", _b_fano_free),
    Claim("g-half-ring-free", "pair digraph of G_half(n) is acyclic and no ring-family member is found, n = 4..24", _g_half_ring_free),
    Claim("turan-t-parity", "T(n) avoids R_2 and R_4 for n = 8..12 and contains R_3 for n = 6, 9, 12", _turan_parity),
    Claim("s-parity", "S(30, 0.4226, d) avoids R_3 and R_5 for d = 0, 1 and contains R_2 at d = 0", _s_parity),
    Claim("chvatal-szemeredi", "directed girth is at most floor(2N/(r+1)) on every tested digraph with min out-degree r >= 1", _chvatal_szemeredi),
    Claim("density-limits", "B(1000), G_half(1000), T(999) are within 2e-3 of 3/4, 1/2, 5/9", _density_limits, slow=True),
    Claim("s-optimization", "S densities peak near 0.577350 and 0.588863 and match generated S(3000, alpha, 6)", _s_optimization, slow=True),
    Claim("fano-pipeline", "the ring blow-up / hub pipeline returns verified Fano copies exactly when they exist", _fano_pipeline),
    Claim("ring-blowup-search", "blow-up search finds t = 3 in blow_up(R_3, 2) and nothing in G_half(20)", _ring_blowup),
    Claim("brute-ex-crosscheck", "branch-and-bound ex(n, family) agrees with flat enumeration", _brute_crosscheck),
    Claim("bound-constants", "sqrt(2/9) < 1/2, sqrt(2/8) = 1/2, and 1/2 + 1/(t-1) is within 1e-3 of 1/2 at t = 2001", _bound_constants),
    Claim("q3-blowup-rings", "Q_3 contains R_3 and its 2-blow-up contains R_5", _q3_blowup),
    Claim("pg2-pair-coverage", "PG2(q) covers every pair exactly once for q = 2, 3, 5, 7 and PG2(2) is the Fano plane", _pg2),
    Claim("ex2-empty-family", "max min co-degree with nothing forbidden is n - 2 for n = 3..6", _ex2_empty),
)


def _load_fixtures(paths) -> dict[str, TripleGraph]:
    loaded = {}
    for p in paths:
        try:
            loaded[str(p)] = read_3g(p)
        except FormatError as exc:
            raise FixtureError(p, str(exc)) from exc
    return loaded


def _run_claim(claim: Claim, cfg: VerifyConfig, fixtures: dict) -> ClaimResult:
    try:
        passed, details = claim.check(cfg, fixtures)
    except RingFanoError as exc:
        return ClaimResult(claim.claim_id, claim.statement, FAIL, {"exception": type(exc).__name__, "message": str(exc)})
    return ClaimResult(claim.claim_id, claim.statement, PASS if passed else FAIL, details)


def _run_by_id(claim_id: str, cfg: VerifyConfig, fixtures: dict) -> ClaimResult:
    return _run_claim(next(c for c in CLAIMS if c.claim_id == claim_id), cfg, fixtures)


def run_all(config: VerifyConfig | None = None) -> list[ClaimResult]:
    """Run the selected claims; results follow registry order."""
    cfg = config or VerifyConfig()
    known = {c.claim_id for c in CLAIMS}
    if cfg.only:
        unknown = sorted(set(cfg.only) - known)
        if unknown:
            raise ValueError(f"unknown claim ids: {', '.join(unknown)}")
    fixtures = _load_fixtures(cfg.fixtures)
    todo, results = [], {}
    for c in CLAIMS:
        if cfg.only and c.claim_id not in cfg.only:
            results[c.claim_id] = ClaimResult(c.claim_id, c.statement, SKIPPED, {"reason": "not selected"})
        elif cfg.skip_slow and c.slow:
            results[c.claim_id] = ClaimResult(c.claim_id, c.statement, SKIPPED, {"reason": "slow claim skipped"})
        else:
            todo.append(c.claim_id)
    if cfg.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            done = pool.map(_run_by_id, todo, [cfg] * len(todo), [fixtures] * len(todo))
            results.update(zip(todo, done))
    else:
        for cid in todo:
            results[cid] = _run_by_id(cid, cfg, fixtures)
    return [results[c.claim_id] for c in CLAIMS]


def exit_code(results: list[ClaimResult]) -> int:
    return int(any(r.status == FAIL for r in results))


def report_json(results: list[ClaimResult], config: VerifyConfig) -> str:
    doc = {
        "seed": config.seed,
        "skip_slow": config.skip_slow,
        "only": sorted(config.only) if config.only else None,
        "fixtures": list(config.fixtures),
        "summary": {s: sum(r.status == s for r in results) for s in (PASS, FAIL, SKIPPED)},
        "claims": [r.to_dict() for r in results],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_figures(results: list[ClaimResult], out_dir) -> list[Path]:
    """Write figures for claims that carry plottable data; returns the files written."""
    from .constructions import ConstructionSpec
    from .densitylab import density_sweep
    from .plotting import plot_density_report, plot_s_curves

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    by_id = {r.claim_id: r for r in results}
    written = []
    opt = by_id.get("s-optimization")
    marks = {}
    if opt is not None and opt.status != SKIPPED and "iterated" in opt.details:
        d = opt.details
        marks = {
            "base max": (d["base"]["argmax"], d["base"]["max"]),
            "iterated max": (d["iterated"]["argmax"], d["iterated"]["max"]),
        }
    written.append(plot_s_curves(out / "s_density_curves.png", marks))
    lim = by_id.get("density-limits")
    if lim is not None and lim.status != SKIPPED:
        for kind in ("b", "g-half", "turan-t"):
            rep = density_sweep(ConstructionSpec(kind, {"n": 3}), range(50, 1001, 50))
            written.append(plot_density_report(rep, out / f"density_{kind}.png"))
    return written
