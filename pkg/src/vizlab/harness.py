"""Sweep campaigns over the product inequality and the labeling pipeline.

Reports are line-delimited JSON: a header object, one object per row, and a
trailing aggregate object. Identical configurations produce identical bytes.
"""

from __future__ import annotations

import json
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable

from . import __version__
from .cograph import random_cograph
from .domination import (
    ENUMERATION_CAP,
    SolverTimeout,
    cell_partition,
    enumerate_min_dominating_sets,
    enumerate_min_jk_sets,
    gamma_exact,
)
from .enumeration import enumerate_connected_cographs, enumerate_connected_graphs
from .formats import from_graph6, to_graph6
from .graph import Graph, VertexSet, is_connected
from .labeling import (
    audit_claim_external_all,
    audit_claim_single,
    recheck_claim_external,
    run_pipeline,
    verify_certificate,
)
from .product import cartesian_product

WORKERS_ENV = "VIZLAB_WORKERS"


@dataclass(frozen=True)
class SweepConfig:
    max_nG: int
    max_nH: int
    min_nG: int = 1
    min_nH: int = 1
    g_family: str = "all-connected-cographs"
    h_family: str = "all-connected-graphs"
    random_count: int = 10
    seed: int = 0
    g_graphs: tuple[str, ...] = ()
    h_graphs: tuple[str, ...] = ()
    quantify_gamma_sets: str = "first"
    quantify_gamma12_sets: str = "first"
    tie_break: str = "deterministic"
    tie_seed: int = 0
    timeout: float = 10.0
    audit_claim1: bool = True
    max_enum_n: int = ENUMERATION_CAP

    def __post_init__(self) -> None:
        if self.g_family not in ("all-connected-cographs", "random-cographs", "explicit"):
            raise ValueError(f"unknown G family {self.g_family!r}")
        if self.h_family not in ("all-connected-graphs", "random", "explicit"):
            raise ValueError(f"unknown H family {self.h_family!r}")
        if self.g_family == "all-connected-cographs" and self.max_nG > 7:
            raise ValueError("exhaustive G family supports n_G <= 7")
        if self.h_family == "all-connected-graphs" and self.max_nH > 5:
            raise ValueError("exhaustive H family supports n_H <= 5")
        for name in ("quantify_gamma_sets", "quantify_gamma12_sets"):
            if getattr(self, name) not in ("first", "all"):
                raise ValueError(f"{name} must be 'first' or 'all'")
        if self.tie_break not in ("deterministic", "seeded"):
            raise ValueError("tie_break must be 'deterministic' or 'seeded'")
        if self.min_nG < 1 or self.min_nH < 1 or self.min_nG > self.max_nG or self.min_nH > self.max_nH:
            raise ValueError("size bounds must satisfy 1 <= min <= max")


def _random_connected_graph(n: int, rng: random.Random) -> Graph:
    while True:
        edges = [(u, v) for v in range(n) for u in range(v) if rng.random() < 0.5]
        G = Graph.from_edges(n, edges)
        if is_connected(G):
            return G


def g_family(cfg: SweepConfig) -> list[Graph]:
    if cfg.g_family == "explicit":
        return [from_graph6(s) for s in cfg.g_graphs]
    if cfg.g_family == "random-cographs":
        rng = random.Random(cfg.seed)
        return [
            random_cograph(rng.randint(cfg.min_nG, cfg.max_nG), rng.randrange(2**32), connected=True)
            for _ in range(cfg.random_count)
        ]
    return [G for n in range(cfg.min_nG, cfg.max_nG + 1) for G in enumerate_connected_cographs(n)]


def h_family(cfg: SweepConfig) -> list[Graph]:
    if cfg.h_family == "explicit":
        return [from_graph6(s) for s in cfg.h_graphs]
    if cfg.h_family == "random":
        rng = random.Random(cfg.seed + 1)
        return [_random_connected_graph(rng.randint(cfg.min_nH, cfg.max_nH), rng) for _ in range(cfg.random_count)]
    return [H for n in range(cfg.min_nH, cfg.max_nH + 1) for H in enumerate_connected_graphs(n)]


def _instance_rng(cfg: SweepConfig, key: str) -> tuple[random.Random | None, int | None]:
    if cfg.tie_break == "deterministic":
        return None, None
    seed = int.from_bytes(f"{cfg.tie_seed}:{key}".encode(), "big") % 2**63
    return random.Random(seed), seed


def pipeline_row(
    G: Graph,
    H: Graph,
    gamma_set: list[int],
    D_pairs: list[tuple[int, int]],
    gamma_G: int,
    gamma_H: int,
    gamma_product: int | None,
    tie_seed: int | None = None,
) -> dict:
    """Run the labeling pipeline on one instance and summarize it as a report row."""
    P = cartesian_product(G, H)
    C = cell_partition(G, gamma_set)
    D = P.vertex_set(D_pairs)
    rng = random.Random(tie_seed) if tie_seed is not None else None
    run = run_pipeline(P, D, C, rng)
    cert = verify_certificate(run.final, P, C, gamma_G, gamma_H, gamma_product)
    claim2 = audit_claim_single(run.refined2)
    return {
        "type": "pipeline",
        "G": to_graph6(G),
        "H": to_graph6(H),
        "gamma_set": gamma_set,
        "D": [list(p) for p in D_pairs],
        "tie_seed": tie_seed,
        "gamma_G": gamma_G,
        "gamma_H": gamma_H,
        "gamma_product": gamma_product,
        "all_single": cert.all_single,
        "all_projections_dominate": cert.all_projections_dominate,
        "certified": cert.certified,
        "count_ok": cert.count_ok,
        "sound": cert.sound,
        "claim2": claim2.outcome,
        "relabels": dict(sorted(Counter(ev.rule for ev in run.final.history).items())),
        "anomalies": cert.anomalies,
    }


def recheck_row(row: dict) -> bool:
    """Recompute a pipeline row from its own payload and compare the verdicts."""
    again = pipeline_row(
        from_graph6(row["G"]),
        from_graph6(row["H"]),
        row["gamma_set"],
        [tuple(p) for p in row["D"]],
        row["gamma_G"],
        row["gamma_H"],
        row["gamma_product"],
        row["tie_seed"],
    )
    keys = ("all_single", "all_projections_dominate", "certified", "count_ok", "sound", "claim2")
    return all(again[k] == row[k] for k in keys)


def _pair_rows(cfg: SweepConfig, G: Graph, H: Graph) -> list[dict]:
    g6, h6 = to_graph6(G), to_graph6(H)
    head = {"type": "pair", "G": g6, "H": h6, "n_G": G.n, "n_H": H.n}
    try:
        gG = gamma_exact(G, cfg.timeout).size
        gH = gamma_exact(H, cfg.timeout).size
        P = cartesian_product(G, H)
        sol = gamma_exact(P.prod, cfg.timeout)
    except SolverTimeout:
        return [{**head, "status": "timeout"}]
    rows = [{
        **head,
        "status": "ok",
        "gamma_G": gG,
        "gamma_H": gH,
        "gamma_product": sol.size,
        "bound": gG * gH,
        "inequality": sol.size >= gG * gH,
    }]
    gammas = enumerate_min_jk_sets(G, 1, 2)
    if cfg.quantify_gamma12_sets == "first":
        gammas = gammas[:1]
    if cfg.quantify_gamma_sets == "all" and P.prod.n <= cfg.max_enum_n:
        try:
            Ds = enumerate_min_dominating_sets(P.prod, cfg.max_enum_n, cfg.timeout)
        except SolverTimeout:
            rows.append({**head, "type": "note", "status": "timeout", "note": "enumeration of minimum D timed out"})
            Ds = [sol.witness]
    else:
        if cfg.quantify_gamma_sets == "all":
            rows.append({**head, "type": "note", "status": "guard",
                         "note": f"product has {P.prod.n} vertices; using the solver witness only"})
        Ds = [sol.witness]
    for S in gammas:
        for D in Ds:
            pairs = P.pairs(D)
            _, tie = _instance_rng(cfg, f"{g6}|{h6}|{S.to_list()}|{pairs}")
            rows.append(pipeline_row(G, H, S.to_list(), pairs, gG, gH, sol.size, tie))
    return rows


def _claim1_rows(G: Graph) -> list[dict]:
    out = []
    for res in audit_claim_external_all(G):
        row = {"type": "claim1", **res.to_dict()}
        row["rechecked"] = res.outcome == "not-applicable" or recheck_claim_external(G, res)
        out.append(row)
    return out


def _task(args: tuple) -> list[dict]:
    kind, cfg, G, H = args
    if kind == "claim1":
        return _claim1_rows(G)
    return _pair_rows(cfg, G, H)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class SweepReport:
    header: dict
    rows: list[dict] = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        dump = lambda obj: json.dumps(obj, sort_keys=True, separators=(",", ":"))
        return [dump({"type": "header", **self.header})] + [dump(r) for r in self.rows] + [
            dump({"type": "aggregate", **self.aggregates})
        ]

    def write(self, path: str | Path) -> None:
        Path(path).write_text("\n".join(self.lines()) + "\n")

    def of_type(self, kind: str) -> list[dict]:
        return [r for r in self.rows if r["type"] == kind]


def aggregate(rows: Iterable[dict]) -> dict:
    rows = list(rows)
    pairs = [r for r in rows if r["type"] == "pair"]
    pipes = [r for r in rows if r["type"] == "pipeline"]
    claim1 = [r for r in rows if r["type"] == "claim1"]
    anomaly_kinds: Counter = Counter()
    for r in pipes:
        anomaly_kinds.update(a["kind"] for a in r["anomalies"])
    certified = sum(r["certified"] for r in pipes)
    return {
        "pairs": len(pairs),
        "timeouts": sum(r["status"] == "timeout" for r in pairs),
        "inequality_violations": sum(r["status"] == "ok" and not r["inequality"] for r in pairs),
        "pipeline_runs": len(pipes),
        "pipeline_certified": certified,
        "pipeline_success_rate": round(certified / len(pipes), 6) if pipes else None,
        "soundness_failures": sum(not r["sound"] for r in pipes),
        "claim2": dict(sorted(Counter(r["claim2"] for r in pipes).items())),
        "claim1": dict(sorted(Counter(r["outcome"] for r in claim1).items())),
        "claim1_preamble_failures": sum(
            r["outcome"] != "not-applicable" and not r["payload"]["preamble_holds"] for r in claim1
        ),
        "claim1_recheck_failures": sum(not r["rechecked"] for r in claim1),
        "anomalies": dict(sorted(anomaly_kinds.items())),
    }


def vizing_sweep(cfg: SweepConfig) -> SweepReport:
    Gs, Hs = g_family(cfg), h_family(cfg)
    tasks: list[tuple] = []
    if cfg.audit_claim1:
        tasks += [("claim1", cfg, G, None) for G in Gs]
    tasks += [("pair", cfg, G, H) for G in Gs for H in Hs]
    workers = _workers()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_task, tasks, chunksize=4))
    else:
        chunks = [_task(t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    header = {"tool": "vizlab", "version": __version__, "config": asdict(cfg)}
    return SweepReport(header, rows, aggregate(rows))
