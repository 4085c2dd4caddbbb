"""Labeling of a dominating set of G □ H by cells of a minimum [1,2]-set of G.

Stages run in order: provisional labeling, first refinement, second
refinement, free-vertex relabeling. A certificate then checks that every
label class projects onto a dominating set of H. Failures of any stage are
recorded as anomalies, never raised, since the point is to observe where
the procedure works as stated.

Labels are sorted tuples of 1-based cell indices: ``(i,)`` or ``(i, j)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .cograph import is_cograph
from .domination import (
    CellPartition,
    cell_partition,
    enumerate_min_jk_sets,
    first_undominated,
    gamma_exact,
    gamma_jk,
    is_jk_set,
)
from .formats import to_graph6
from .graph import Graph, VertexSet, is_connected, iter_bits, mask_of
from .product import FiberStatus, ProductGraph, cartesian_product, vertical_status

Label = tuple[int, ...]

PROVISIONAL_CASES = ("provisional-a", "provisional-b", "provisional-c", "provisional-d")
REFINEMENT_1 = "refinement-1"
REFINEMENT_2 = "refinement-2"
FREE_RELABEL = "free-relabel"


class CorruptLabelState(ValueError):
    pass


@dataclass(frozen=True)
class LabelEvent:
    vertex: int
    old: Label | None
    new: Label
    rule: str
    fiber: int

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "old": list(self.old) if self.old is not None else None,
            "new": list(self.new),
            "rule": self.rule,
            "fiber": self.fiber,
        }


@dataclass
class LabelState:
    n_G: int
    labels: dict[int, Label] = field(default_factory=dict)
    provenance: dict[int, str] = field(default_factory=dict)
    history: list[LabelEvent] = field(default_factory=list)
    anomalies: list[dict] = field(default_factory=list)

    def assign(self, v: int, new: Label, rule: str) -> None:
        if len(new) not in (1, 2) or list(new) != sorted(set(new)):
            raise CorruptLabelState(f"bad label {new} for vertex {v}")
        old = self.labels.get(v)
        if old is not None and len(old) == 1 and len(new) == 2:
            raise CorruptLabelState(f"vertex {v}: single label may not become a pair")
        self.labels[v] = new
        self.provenance[v] = rule
        self.history.append(LabelEvent(v, old, new, rule, self.fiber(v)))

    def fiber(self, v: int) -> int:
        return v // self.n_G

    def fiber_members(self, h: int) -> list[int]:
        return sorted(v for v in self.labels if self.fiber(v) == h)

    def pairs(self) -> list[int]:
        return sorted(v for v, lab in self.labels.items() if len(lab) == 2)

    def copy(self) -> "LabelState":
        return LabelState(
            self.n_G, dict(self.labels), dict(self.provenance), list(self.history), list(self.anomalies)
        )

    def replay(self) -> dict[int, Label]:
        state: dict[int, Label] = {}
        for ev in self.history:
            if state.get(ev.vertex) != ev.old:
                raise CorruptLabelState(f"history out of order at vertex {ev.vertex}")
            state[ev.vertex] = ev.new
        return state

    def table(self) -> list[dict]:
        rows = []
        for v in sorted(self.labels):
            g, h = v % self.n_G, v // self.n_G
            rows.append({"vertex": [g, h], "label": list(self.labels[v]), "rule": self.provenance[v]})
        return rows


Chooser = Callable[[Sequence[int]], int]


def _chooser(rng: random.Random | None) -> Chooser:
    if rng is None:
        return min
    return lambda opts: rng.choice(sorted(opts))


def check_gamma12(G: Graph, gamma_set: Sequence[int]) -> None:
    """Reject ``gamma_set`` unless it is a minimum [1,2]-set of ``G``."""
    mask = mask_of(gamma_set)
    if len(set(gamma_set)) != len(gamma_set):
        raise ValueError(f"set {list(gamma_set)} has repeated entries")
    if not is_jk_set(G, mask, 1, 2):
        raise ValueError(f"set {list(gamma_set)} is not a [1,2]-set of G")
    best = gamma_jk(G, 1, 2).size
    if len(gamma_set) != best:
        raise ValueError(f"[1,2]-set of size {len(gamma_set)} is not minimum (minimum is {best})")


def provisional_labeling(
    P: ProductGraph,
    D: VertexSet,
    C: CellPartition,
    F: list[FiberStatus] | None = None,
    rng: random.Random | None = None,
    check_minimum: bool = True,
) -> LabelState:
    """Label every vertex of D by the cell or shared-neighbor set its column lies in.

    (a) column in Q_i -> i; (b) column in P_{i,j} with i, j undominated
    cells at this fiber -> pair; (c) only i undominated -> i; (d) neither
    -> min(i, j), or a seeded choice when ``rng`` is given.
    """
    miss = first_undominated(P.prod, D.mask)
    if miss is not None:
        g, h = P.decode(miss)
        raise ValueError(f"D does not dominate the product: ({g},{h}) uncovered")
    if check_minimum:
        check_gamma12(P.G, C.gamma_set)
    if F is None:
        F = vertical_status(P, D, C)
    pick = _chooser(rng)
    L = LabelState(P.G.n)
    for v in D:
        g, h = P.decode(v)
        sig = C.signature[g]
        if len(sig) == 1:
            L.assign(v, sig, "provisional-a")
        elif len(sig) == 2:
            i, j = sig
            und = F[h].undominated
            if i in und and j in und:
                L.assign(v, (i, j), "provisional-b")
            elif i in und or j in und:
                L.assign(v, (i,) if i in und else (j,), "provisional-c")
            else:
                L.assign(v, (pick(sig),), "provisional-d")
        else:
            raise ValueError(
                f"D-vertex ({g},{h}) lies in a shared set of {len(sig)} cells; "
                "the dominating set of G must be a [1,2]-set"
            )
    return L


def first_refinement(
    L: LabelState,
    P: ProductGraph,
    D: VertexSet,
    C: CellPartition,
    F: list[FiberStatus],
    rng: random.Random | None = None,
) -> LabelState:
    """Resolve pairs whose shared-neighbor column is covered from a neighboring fiber.

    Fibers are processed in ascending ``h`` and the label of the covering
    vertex ``y`` is read from the evolving state.
    """
    out = L.copy()
    pick = _chooser(rng)
    H = P.H
    for h in range(H.n):
        und = set(F[h].undominated)
        for S, part in C.shared.items():
            if len(S) != 2 or not set(S) <= und:
                continue
            j1, j2 = S
            xs = [P.encode(g, h) for g in part if P.encode(g, h) in D]
            if not xs:
                continue
            for g in part:
                for h2 in iter_bits(H.rows[h]):
                    y = P.encode(g, h2)
                    if y not in D:
                        continue
                    ylab = out.labels[y]
                    for x in xs:
                        if out.labels[x] != S:
                            continue
                        if ylab == (j1,):
                            out.assign(x, (j2,), REFINEMENT_1)
                        elif ylab == (j2,):
                            out.assign(x, (j1,), REFINEMENT_1)
                        elif ylab == S:
                            out.assign(x, (pick(S),), REFINEMENT_1)
    return out


def _second_rule(lx: Label, ly: Label) -> Label | None:
    if len(ly) != 2:
        return None
    if len(lx) == 2:
        common = set(lx) & set(ly)
        if len(common) == 1:
            return tuple(set(ly) - common)
        return None
    if lx[0] in ly:
        return tuple(set(ly) - set(lx))
    return None


def second_refinement(L: LabelState) -> LabelState:
    """Within each fiber, split pairs against overlapping labels until nothing changes.

    Rule A: x = (j1,j2), y = (j2,j3) -> y = (j3). Rule B: x = (j1),
    y = (j1,j2) -> y = (j2). Ordered pairs are scanned in ascending id and the
    scan restarts after every change; each change removes one pair label.
    """
    out = L.copy()
    for h in sorted({out.fiber(v) for v in out.labels}):
        members = out.fiber_members(h)
        changed = True
        while changed:
            changed = False
            for x in members:
                for y in members:
                    if x == y:
                        continue
                    new = _second_rule(out.labels[x], out.labels[y])
                    if new is not None:
                        out.assign(y, new, REFINEMENT_2)
                        changed = True
                        break
                if changed:
                    break
    return out


def free_vertex_relabeling(
    L: LabelState,
    P: ProductGraph,
    D: VertexSet,
    C: CellPartition,
    F: list[FiberStatus],
) -> LabelState:
    """Give a free vertex the label of a vertically undominated cell that lacks one.

    A vertex is free when it carries a single label also carried by another
    vertex of its fiber. Cells are processed in ascending ``(h, i)``; a cell
    with no usable free vertex becomes an anomaly.
    """
    out = L.copy()
    G = P.G
    for st in F:
        h = st.h
        for i in st.undominated:
            members = out.fiber_members(h)
            cell = C.cells[i].mask
            dominators = [v for v in members if G.closed(v % G.n) & cell]
            if any(i in out.labels[v] for v in dominators):
                continue
            chosen = None
            for v in members:
                lab = out.labels[v]
                if len(lab) != 1 or lab[0] == i:
                    continue
                j1 = lab[0]
                if not any(out.labels[w] == lab for w in members if w != v):
                    continue
                g = v % G.n
                if C.private[j1].mask >> g & 1 and G.rows[g] & C.private[i].mask:
                    chosen = v
                    break
            if chosen is None:
                out.anomalies.append({
                    "kind": "no-free-vertex",
                    "fiber": h,
                    "cell": i,
                    "D_h": st.D_h.to_list(),
                    "labels": {str(v % G.n): list(out.labels[v]) for v in members},
                })
            else:
                out.assign(chosen, (i,), FREE_RELABEL)
    return out


@dataclass
class PipelineRun:
    fibers: list[FiberStatus]
    provisional: LabelState
    refined1: LabelState
    refined2: LabelState
    final: LabelState

    def stages(self) -> dict[str, list[dict]]:
        return {
            "provisional": self.provisional.table(),
            "refinement_1": self.refined1.table(),
            "refinement_2": self.refined2.table(),
            "final": self.final.table(),
        }


def run_pipeline(
    P: ProductGraph,
    D: VertexSet,
    C: CellPartition,
    rng: random.Random | None = None,
    check_minimum: bool = True,
) -> PipelineRun:
    F = vertical_status(P, D, C)
    L0 = provisional_labeling(P, D, C, F, rng, check_minimum)
    L1 = first_refinement(L0, P, D, C, F, rng)
    L2 = second_refinement(L1)
    L3 = free_vertex_relabeling(L2, P, D, C, F)
    return PipelineRun(F, L0, L1, L2, L3)


@dataclass
class Certificate:
    projections: dict[int, list[int]]
    dominating: dict[int, bool]
    all_single: bool
    all_projections_dominate: bool
    size: int
    gamma_G: int
    gamma_H: int
    k: int
    count_ok: bool
    gamma_product: int | None = None
    anomalies: list[dict] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.all_single and self.all_projections_dominate

    @property
    def k_matches_gamma(self) -> bool:
        return self.k == self.gamma_G

    @property
    def sound(self) -> bool:
        """A certified labeling must imply the inequality for D."""
        return not (self.certified and self.k_matches_gamma) or self.count_ok

    @property
    def inequality_ok(self) -> bool | None:
        if self.gamma_product is None:
            return None
        return self.gamma_product >= self.gamma_G * self.gamma_H

    def to_dict(self) -> dict:
        return {
            "projections": {str(i): hs for i, hs in self.projections.items()},
            "projection_dominates": {str(i): ok for i, ok in self.dominating.items()},
            "all_single": self.all_single,
            "all_projections_dominate": self.all_projections_dominate,
            "certified": self.certified,
            "size_D": self.size,
            "gamma_G": self.gamma_G,
            "gamma_H": self.gamma_H,
            "k": self.k,
            "k_matches_gamma": self.k_matches_gamma,
            "count_ok": self.count_ok,
            "sound": self.sound,
            "gamma_product": self.gamma_product,
            "inequality_ok": self.inequality_ok,
            "anomalies": self.anomalies,
        }


def verify_certificate(
    L: LabelState,
    P: ProductGraph,
    C: CellPartition,
    gamma_G: int,
    gamma_H: int,
    gamma_product: int | None = None,
) -> Certificate:
    k = C.k
    for v, lab in L.labels.items():
        if any(not 1 <= i <= k for i in lab):
            raise CorruptLabelState(f"vertex {v} carries label {lab} outside 1..{k}")
    H = P.H
    projections: dict[int, list[int]] = {i: [] for i in range(1, k + 1)}
    for v in sorted(L.labels):
        lab = L.labels[v]
        if len(lab) == 1 and L.fiber(v) not in projections[lab[0]]:
            projections[lab[0]].append(L.fiber(v))
    dominating = {i: first_undominated(H, mask_of(hs)) is None for i, hs in projections.items()}
    pairs = L.pairs()
    anomalies = list(L.anomalies)
    for v in pairs:
        anomalies.append({"kind": "surviving-pair", "vertex": [v % L.n_G, L.fiber(v)], "label": list(L.labels[v])})
    for i, ok in dominating.items():
        if not ok:
            anomalies.append({"kind": "projection-not-dominating", "label": i, "projection": projections[i]})
    if k != gamma_G:
        anomalies.append({"kind": "k-differs-from-gamma", "k": k, "gamma_G": gamma_G})
    size = len(L.labels)
    return Certificate(
        projections=projections,
        dominating=dominating,
        all_single=not pairs,
        all_projections_dominate=all(dominating.values()),
        size=size,
        gamma_G=gamma_G,
        gamma_H=gamma_H,
        k=k,
        count_ok=size >= gamma_G * gamma_H,
        gamma_product=gamma_product,
        anomalies=anomalies,
    )


@dataclass
class CertifyResult:
    P: ProductGraph
    C: CellPartition
    D: VertexSet
    run: PipelineRun
    certificate: Certificate

    def to_dict(self, trace: bool = True) -> dict:
        out = {
            "G": to_graph6(self.P.G),
            "H": to_graph6(self.P.H),
            "gamma_set": list(self.C.gamma_set),
            "D": [list(p) for p in self.P.pairs(self.D)],
            "cells": self.C.to_dict(),
            "fibers": [st.to_dict() for st in self.run.fibers],
            "certificate": self.certificate.to_dict(),
        }
        if trace:
            out["stages"] = self.run.stages()
            out["history"] = [ev.to_dict() for ev in self.run.final.history]
        return out


def certify(
    G: Graph,
    H: Graph,
    gamma_set: Sequence[int] | None = None,
    D: VertexSet | Sequence[tuple[int, int]] | None = None,
    rng: random.Random | None = None,
    timeout: float | None = None,
    gamma_product: int | None = None,
    solve_product: bool = True,
) -> CertifyResult:
    """Run the whole pipeline on ``(G, H)`` and verify the resulting certificate.

    Defaults: the lexicographically first minimum [1,2]-set of ``G`` and the
    solver's minimum dominating set of the product.
    """
    P = cartesian_product(G, H)
    if gamma_set is None:
        gamma_set = enumerate_min_jk_sets(G, 1, 2)[0].to_list()
    C = cell_partition(G, gamma_set)
    if D is None:
        sol = gamma_exact(P.prod, timeout)
        D = sol.witness
        gamma_product = sol.size
    else:
        if not isinstance(D, VertexSet):
            D = P.vertex_set(D)
        if gamma_product is None and solve_product:
            gamma_product = gamma_exact(P.prod, timeout).size
    run = run_pipeline(P, D, C, rng)
    cert = verify_certificate(
        run.final, P, C, gamma_exact(G, timeout).size, gamma_exact(H, timeout).size, gamma_product
    )
    return CertifyResult(P, C, D, run, cert)


# audits

@dataclass
class AuditResult:
    claim: str
    instance: dict
    outcome: str
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"claim": self.claim, "instance": self.instance, "outcome": self.outcome, "payload": self.payload}


HOLDS = "holds-with-witness"
FAILS = "fails-with-counterexample"
NOT_APPLICABLE = "not-applicable"


def audit_claim_external(G: Graph, gamma_set: Sequence[int], u: int) -> AuditResult:
    """Look for ``w`` in P_a ∪ P_b independent of ``u`` and of V - (Q_a ∪ Q_b).

    ``v_a, v_b`` are the two members of ``gamma_set`` adjacent to ``u``. The
    preamble flag records whether P_a ∪ P_b is nonempty at all.
    """
    if not is_connected(G):
        raise ValueError("G must be connected")
    if not is_cograph(G):
        raise ValueError("G must be a cograph")
    check_gamma12(G, gamma_set)
    gamma = gamma_exact(G).size
    if len(gamma_set) != gamma:
        raise ValueError(f"|Γ|={len(gamma_set)} differs from the domination number {gamma}")
    if u in gamma_set:
        raise ValueError(f"u={u} belongs to the dominating set")
    C = cell_partition(G, gamma_set)
    sig = C.signature[u]
    if len(sig) != 2:
        raise ValueError(f"u={u} is adjacent to {len(sig)} members of the set, need exactly 2")
    a, b = sig
    Pa, Pb = C.private[a].mask, C.private[b].mask
    outside = G.full_mask & ~(C.cells[a].mask | C.cells[b].mask)
    witness = None
    rejected = []
    for w in iter_bits(Pa | Pb):
        reasons = []
        if G.adjacent(u, w):
            reasons.append("adjacent-to-u")
        hits = G.rows[w] & outside
        if hits:
            reasons.append("adjacent-outside:" + ",".join(map(str, iter_bits(hits))))
        if not reasons:
            witness = w
            break
        rejected.append({"w": w, "reasons": reasons})
    payload = {
        "u": u,
        "a": a,
        "b": b,
        "v_a": C.gamma_set[a - 1],
        "v_b": C.gamma_set[b - 1],
        "P_a": C.private[a].to_list(),
        "P_b": C.private[b].to_list(),
        "preamble_holds": bool(Pa | Pb),
        "witness": witness,
        "rejected": rejected,
    }
    instance = {"G": to_graph6(G), "gamma_set": list(gamma_set), "u": u}
    return AuditResult("claim1", instance, HOLDS if witness is not None else FAILS, payload)


def recheck_claim_external(G: Graph, result: AuditResult) -> bool:
    """Re-derive the audit outcome from its payload using adjacency alone."""
    gamma_set = result.instance["gamma_set"]
    p = result.payload
    u, va, vb = p["u"], p["v_a"], p["v_b"]

    def private_to(x: int, w: int) -> bool:
        return w not in gamma_set and G.adjacent(w, x) and not any(G.adjacent(w, y) for y in gamma_set if y != x)

    Pa = [w for w in range(G.n) if private_to(va, w)]
    Pb = [w for w in range(G.n) if private_to(vb, w)]
    if Pa != p["P_a"] or Pb != p["P_b"] or p["preamble_holds"] != bool(Pa or Pb):
        return False
    Q = set(Pa) | set(Pb) | {va, vb}
    good = [w for w in sorted(set(Pa) | set(Pb))
            if not G.adjacent(u, w) and all(x in Q for x in range(G.n) if G.adjacent(w, x))]
    if result.outcome == HOLDS:
        return p["witness"] in good and p["witness"] == good[0]
    return result.outcome == FAILS and not good


def audit_claim_external_all(G: Graph) -> list[AuditResult]:
    """Audit every (Γ, u) with Γ a minimum [1,2]-set and u adjacent to two of Γ."""
    results = []
    for S in enumerate_min_jk_sets(G, 1, 2):
        gamma_set = S.to_list()
        for u in range(G.n):
            if u in S:
                continue
            if sum(G.adjacent(u, v) for v in gamma_set) == 2:
                results.append(audit_claim_external(G, gamma_set, u))
    if not results:
        results.append(AuditResult("claim1", {"G": to_graph6(G)}, NOT_APPLICABLE,
                                   {"reason": "no vertex is adjacent to exactly two members of any minimum [1,2]-set"}))
    return results


def audit_claim_single(L: LabelState) -> AuditResult:
    """Check that no pair label survives; report survivors with their history."""
    survivors = []
    for v in L.pairs():
        survivors.append({
            "vertex": [v % L.n_G, L.fiber(v)],
            "label": list(L.labels[v]),
            "fiber": L.fiber(v),
            "history": [ev.to_dict() for ev in L.history if ev.vertex == v],
        })
    outcome = FAILS if survivors else HOLDS
    return AuditResult("claim2", {"size_D": len(L.labels)}, outcome, {"surviving_pairs": survivors})
