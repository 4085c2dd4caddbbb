"""Command-line entry point.

Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys

from .cograph import P4Witness, build_cotree
from .domination import gamma_exact, gamma_jk
from .formats import GraphParseError, read_graph, serialize_graph
from .harness import SweepConfig, vizing_sweep
from .labeling import (
    FAILS,
    audit_claim_external,
    audit_claim_external_all,
    audit_claim_single,
    certify,
)
from .product import cartesian_product


class UsageError(Exception):
    pass


def _graph(arg: str, flag: str):
    try:
        return read_graph(arg)
    except (GraphParseError, OSError, ValueError) as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _int_list(text: str | None, flag: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in re.split(r"[,\s]+", text.strip()) if x]
    except ValueError as exc:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from exc


def _dom_set(text: str | None, n_G: int) -> list[tuple[int, int]] | None:
    """``(g,h)`` pairs like ``(0,0),(2,1)`` or raw product ids ``0,6``."""
    if text is None:
        return None
    pairs = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
    if pairs:
        return [(int(g), int(h)) for g, h in pairs]
    ids = _int_list(text, "--dom-set") or []
    return [(v % n_G, v // n_G) for v in ids]


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_recognize(args) -> int:
    G = _graph(args.graph, "graph")
    res = build_cotree(G)
    if isinstance(res, P4Witness):
        print("cograph: no")
        print("P4 witness: ({},{},{},{})".format(*res.as_tuple()))
    else:
        print("cograph: yes")
        print(f"cotree: {res}")
    return 0


def cmd_gamma(args) -> int:
    G = _graph(args.graph, "graph")
    if args.jk:
        vals = _int_list(args.jk, "--jk") or []
        j, k = vals if len(vals) == 2 else (0, 0)
        if not k >= j >= 1:
            raise UsageError(f"--jk: need 'j,k' with k >= j >= 1, got {args.jk!r}")
        sol = gamma_jk(G, j, k)
        name = f"gamma[{j},{k}]"
    else:
        sol = gamma_exact(G, args.timeout)
        name = "gamma"
    if args.json:
        _dump(sol.to_dict())
    else:
        print(f"{name}: {sol.size}")
        print("witness: " + " ".join(map(str, sol.witness)))
    return 0


def cmd_product(args) -> int:
    G = _graph(args.G, "G")
    H = _graph(args.H, "H")
    P = cartesian_product(G, H, args.max_vertices)
    print(serialize_graph(P.prod, args.format).rstrip("\n"))
    if not args.gamma:
        return 0
    gG = gamma_exact(G, args.timeout).size
    gH = gamma_exact(H, args.timeout).size
    gP = gamma_exact(P.prod, args.timeout).size
    ok = gP >= gG * gH
    print(f"gamma(G)={gG} gamma(H)={gH} gamma(GxH)={gP} bound={gG * gH} inequality={'holds' if ok else 'VIOLATED'}")
    return 0 if ok else 1


def cmd_certify(args) -> int:
    G = _graph(args.G, "G")
    H = _graph(args.H, "H")
    rng = random.Random(args.seed) if args.seed is not None else None
    res = certify(
        G, H, _int_list(args.gamma_set, "--gamma-set"), _dom_set(args.dom_set, G.n), rng, args.timeout
    )
    _dump(res.to_dict(trace=args.trace))
    cert = res.certificate
    return 0 if cert.certified and cert.count_ok else 1


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        max_nG=args.max_ng,
        max_nH=args.max_nh,
        min_nG=args.min_ng,
        min_nH=args.min_nh,
        g_family=args.g_family,
        h_family=args.h_family,
        random_count=args.count,
        seed=args.seed or 0,
        quantify_gamma_sets="all" if args.all_gamma_sets or args.all else "first",
        quantify_gamma12_sets="all" if args.all_gamma12_sets or args.all else "first",
        tie_break="seeded" if args.seed is not None else "deterministic",
        tie_seed=args.seed or 0,
        timeout=args.timeout,
    )
    report = vizing_sweep(cfg)
    report.write(args.out)
    _dump(report.aggregates)
    agg = report.aggregates
    return 1 if agg["inequality_violations"] or agg["soundness_failures"] else 0


def cmd_audit(args) -> int:
    G = _graph(args.G, "G")
    if args.claim == "claim1":
        gamma_set = _int_list(args.gamma_set, "--gamma-set")
        if gamma_set is not None and args.u is not None:
            results = [audit_claim_external(G, gamma_set, args.u)]
        elif gamma_set is None and args.u is None:
            results = audit_claim_external_all(G)
        else:
            raise UsageError("--gamma-set and --u must be given together")
    else:
        if args.H is None:
            raise UsageError("claim2 needs an H graph")
        H = _graph(args.H, "H")
        res = certify(G, H, _int_list(args.gamma_set, "--gamma-set"), _dom_set(args.dom_set, G.n))
        results = [audit_claim_single(res.run.refined2)]
        results[0].instance.update({"G": args.G, "H": args.H, "gamma_set": list(res.C.gamma_set),
                                    "D": [list(p) for p in res.P.pairs(res.D)]})
    _dump([r.to_dict() for r in results])
    return 1 if any(r.outcome == FAILS for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="vizlab",
        description="Domination in Cartesian products with a cograph factor. "
        "Graphs are graph6 strings, @path to an edge-list or graph6 file, or - for stdin.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("recognize", help="cograph verdict with cotree or induced P4")
    s.add_argument("graph")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("gamma", help="exact domination number")
    s.add_argument("graph")
    s.add_argument("--jk", help="solve [j,k]-domination instead, e.g. 1,2")
    s.add_argument("--json", action="store_true")
    s.add_argument("--timeout", type=float, default=None)
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("product", help="Cartesian product G x H")
    s.add_argument("G")
    s.add_argument("H")
    s.add_argument("--gamma", action="store_true", help="also check the product inequality")
    s.add_argument("--format", choices=("graph6", "edge-list"), default="graph6")
    s.add_argument("--max-vertices", type=int, default=4096)
    s.add_argument("--timeout", type=float, default=10.0)
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("certify", help="run the labeling pipeline and verify its certificate")
    s.add_argument("G")
    s.add_argument("H")
    s.add_argument("--gamma-set", help="minimum [1,2]-set of G, e.g. 0,2")
    s.add_argument("--dom-set", help="dominating set of the product: (g,h) pairs or raw ids")
    s.add_argument("--trace", action="store_true", help="include per-stage label tables and history")
    s.add_argument("--seed", type=int, default=None, help="randomize arbitrary choices with this seed")
    s.add_argument("--timeout", type=float, default=10.0)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("sweep", help="exhaustive or random verification campaign")
    s.add_argument("--max-ng", type=int, required=True)
    s.add_argument("--max-nh", type=int, required=True)
    s.add_argument("--min-ng", type=int, default=1)
    s.add_argument("--min-nh", type=int, default=1)
    s.add_argument("--g-family", default="all-connected-cographs",
                   choices=("all-connected-cographs", "random-cographs"))
    s.add_argument("--h-family", default="all-connected-graphs", choices=("all-connected-graphs", "random"))
    s.add_argument("--count", type=int, default=10, help="instances per random family")
    s.add_argument("--all-gamma-sets", action="store_true", help="every minimum dominating set of each product")
    s.add_argument("--all-gamma12-sets", action="store_true", help="every minimum [1,2]-set of each G")
    s.add_argument("--all", action="store_true", help="both of the above")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--timeout", type=float, default=10.0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("audit", help="audit a single proof step")
    s.add_argument("claim", choices=("claim1", "claim2"))
    s.add_argument("G")
    s.add_argument("H", nargs="?")
    s.add_argument("--gamma-set")
    s.add_argument("--u", type=int)
    s.add_argument("--dom-set")
    s.set_defaults(func=cmd_audit)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
