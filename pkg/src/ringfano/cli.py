"""Command-line entry point: ``ringfano <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .constructions import (
    ConstructionSpec,
    Kind,
    build,
    build_complete,
    build_fano,
    build_fstar,
    build_Q3,
    build_ring,
    k4_minus_edge,
)
from .densitylab import (
    collapsing_series_density,
    density_sweep,
    optimize_alpha,
    s_base_density,
    s_iterated_density,
)
from .errors import RingFanoError
from .extremal import EDGES, MIN_CODEGREE, brute_ex, has_lm_property, max_edge_free_set
from .fanofinder import find_fano
from .hypergraph import KGraph
from .io import read_3g, write_3g, write_kgraph
from .ringsearch import find_ring_blowup, find_ring_star
from .verify import DEFAULT_SEED, FixtureError, VerifyConfig, exit_code, render_figures, report_json, run_all

EXIT_USAGE = 2

_OBJECTIVES = {
    "s-base": s_base_density,
    "s-iter": s_iterated_density,
    "s-collapsing": collapsing_series_density,
}


def named_pattern(name: str):
    """Forbidden-pattern names accepted by ``brute-ex --forbid``."""
    key = name.strip().lower()
    fixed = {
        "k43": lambda: build_complete(4),
        "k43-e": k4_minus_edge,
        "fano": build_fano,
        "fstar": build_fstar,
        "q3": build_Q3,
    }
    if key in fixed:
        return fixed[key]()
    if key.startswith("r") and key[1:].isdigit() and int(key[1:]) >= 2:
        return build_ring(int(key[1:]))
    raise argparse.ArgumentTypeError(f"unknown pattern {name!r}; use k43, k43-e, fano, fstar, q3 or r<t>")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _spec_from_args(args) -> ConstructionSpec:
    params = {}
    for key in ("n", "t", "q", "depth"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if getattr(args, "labeling", None):
        params["labeling"] = [int(v) for v in args.labeling.split(",")]
    return ConstructionSpec(Kind(args.kind), params, getattr(args, "alpha", None))


# -- subcommands ---------------------------------------------------------


def cmd_gen(args) -> int:
    spec = _spec_from_args(args)
    G = build(spec)
    if isinstance(G, KGraph):
        write_kgraph(G, args.out, comment=spec.describe())
    else:
        write_3g(G, args.out, comment=spec.describe())
    return 0


def cmd_find_ring(args) -> int:
    G = read_3g(args.input)
    w = find_ring_blowup(G, args.tmax) if args.blowup else find_ring_star(G, args.tmax)
    _emit(w.to_dict() if w is not None else {"found": False})
    return 0


def cmd_find_fano(args) -> int:
    G = read_3g(args.input)
    res = find_fano(G, target=args.target, t_max=args.tmax)
    if args.json:
        _emit(res.to_dict())
    elif res.found:
        print(f"found {args.target}: mapping {list(res.embedding.mapping)} (ring t={res.ring.t}, hub {res.hub.u_star})")
    else:
        print(f"not found: stopped at stage {res.stage}")
    return 0


def cmd_brute_ex(args) -> int:
    names = [s for s in args.forbid.split(",") if s] if args.forbid else []
    family = [named_pattern(s) for s in names]
    mode = MIN_CODEGREE if args.mode == "codegree" else EDGES
    res = brute_ex(args.n, family, mode, names=names)
    _emit(res.to_dict())
    return 0


def cmd_check_lm(args) -> int:
    H = read_3g(args.input)
    free = sorted(max_edge_free_set(H))
    _emit({"n": H.n, "m": args.m, "lm_property": has_lm_property(H, args.m), "max_edge_free_set": free})
    return 0


def cmd_density(args) -> int:
    if args.optimize:
        f = _OBJECTIVES[args.optimize]
        res = optimize_alpha(f, tol=args.tol)
        _emit({"objective": args.optimize, "argmax": res.argmax, "max": res.value, "tol": args.tol})
        if args.plot:
            from .plotting import plot_s_curves

            plot_s_curves(args.plot, {f"{args.optimize} max": (res.argmax, res.value)})
        return 0
    if not args.construction:
        raise argparse.ArgumentTypeError("density needs --construction or --optimize")
    n_values = args.n_list or [args.n]
    spec = ConstructionSpec(Kind(args.construction), {"n": n_values[0], "depth": args.depth}, args.alpha)
    if spec.kind is not Kind.S_ITER:
        spec = ConstructionSpec(spec.kind, {"n": n_values[0]})
    report = density_sweep(spec, n_values, workers=args.jobs)
    rows = report.rows()
    out = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "density", "gap_to_limit"])
        for n, d, g in rows:
            writer.writerow([n, repr(d), repr(g)])
    finally:
        if out is not sys.stdout:
            out.close()
    if args.plot:
        from .plotting import plot_density_report

        plot_density_report(report, args.plot)
    print(f"# limit {report.limit_claim!r}  max |gap| {report.max_abs_gap!r}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    cfg = VerifyConfig(
        only=[s for s in args.only.split(",") if s] if args.only else None,
        skip_slow=args.skip_slow,
        seed=args.seed,
        fixtures=list(args.host or []),
        jobs=args.jobs,
    )
    try:
        results = run_all(cfg)
    except FixtureError as exc:
        payload = json.dumps(exc.to_dict(), indent=2, sort_keys=True) + "\n"
        if args.json:
            Path(args.json).write_text(payload, encoding="utf-8")
        sys.stderr.write(payload)
        return EXIT_USAGE
    text = report_json(results, cfg)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
    for r in results:
        print(f"{r.status.upper():8} {r.claim_id}")
    if args.figures:
        for p in render_figures(results, args.figures):
            print(f"figure   {p}")
    return exit_code(results)


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ringfano", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a construction to a graph file")
    g.add_argument("--kind", required=True, choices=[k.value for k in Kind])
    g.add_argument("--n", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--alpha", type=float)
    g.add_argument("--depth", type=int)
    g.add_argument("--labeling", help="comma-separated host vertex per ring label (ring-star only)")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("find-ring", help="search for a ring-family member or a 2-blow-up ring")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--tmax", type=int, default=9)
    r.add_argument("--blowup", action="store_true")
    r.set_defaults(func=cmd_find_ring)

    f = sub.add_parser("find-fano", help="run the Fano pipeline on a host")
    f.add_argument("--in", dest="input", required=True)
    f.add_argument("--target", choices=["fano", "fstar"], default="fano")
    f.add_argument("--tmax", type=int, default=9)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_find_fano)

    b = sub.add_parser("brute-ex", help="exact Turan number for tiny n")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--forbid", default="", help="comma-separated pattern names")
    b.add_argument("--mode", choices=["edges", "codegree"], default="edges")
    b.set_defaults(func=cmd_brute_ex)

    c = sub.add_parser("check-lm", help="does every m-subset span an edge")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--m", type=int, required=True)
    c.set_defaults(func=cmd_check_lm)

    d = sub.add_parser("density", help="density sweeps and S-construction optimisation")
    d.add_argument("--construction", choices=["b", "g-half", "turan-t", "s", "complete"])
    d.add_argument("--alpha", type=float)
    d.add_argument("--depth", type=int, default=0)
    d.add_argument("--n", type=int, default=1000)
    d.add_argument("--n-list", type=lambda s: [int(v) for v in s.split(",")])
    d.add_argument("--optimize", choices=sorted(_OBJECTIVES))
    d.add_argument("--tol", type=float, default=1e-7)
    d.add_argument("--csv", help="write rows here instead of stdout")
    d.add_argument("--plot", help="PNG path for a figure")
    d.add_argument("--jobs", type=int, default=1)
    d.set_defaults(func=cmd_density)

    v = sub.add_parser("verify", help="run the claim battery")
    v.add_argument("--only", help="comma-separated claim ids")
    v.add_argument("--skip-slow", action="store_true")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--host", action="append", help="extra .3g host for the Fano claim (repeatable)")
    v.add_argument("--json", help="report path")
    v.add_argument("--figures", help="directory for PNG figures")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RingFanoError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
