"""Verification suites: every claim is a measured value checked against a bound.

Each suite returns a list of :class:`Claim` records.  A claim whose
hypotheses are met by no group of the tier is reported as ``skipped`` with a
reason instead of passing vacuously.
"""

from __future__ import annotations

import re
import threading
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
import sympy

from . import catalog
from .catalog import FAST, SLOW, TARGETED, GroupSpec
from .digraph import Digraph, _rep_distances, diameter, scc, undirected_components, component_diameter
from .graphs import (
    DENSE_LIMIT,
    NO_ARC,
    alt_identity_check,
    alternating_prime_graph,
    build_kind,
    build_prime_graph,
    default_budget,
    disconnection_certificate,
    engel_depths,
    hall_clique_check,
    odd_commuting_components,
)
from .group import Group, centralizer, normalizer, quotient, sylow
from .structure import (
    as_group,
    center,
    check_theta_isomorphism,
    compute_J,
    fitting,
    fitting_class_oracle,
    fstar_equals_fitting,
    hypercenter,
    hypercenter_engel_oracle,
    is_frobenius,
    is_metacyclic,
    is_nilpotent,
    is_simple,
    is_soluble,
    j_equals_jstar,
    minimal_class_closures,
    normal_subgroups,
    odd_automizer_chain_length,
    socle_if_almost_simple,
    sylow_automizer,
)
from .words import depths_from

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
SLOW_BUDGET = 10**11
RANDOM_CONJUGATIONS = 20

# One anchor per check kind; claim ids are ``<kind>.<subject>``.
ANCHORS = {
    "classification.predicted": "Gamma(G) strongly connected <=> G/Zinf(G) is not Frobenius, "
                                "PSL2(q) (q>=4 even or q=5 mod 8), Sz(q) (q>=8) or Aut(Sz(2^e)) (e odd prime)",
    "diameter.le16": "Gamma(G) strongly connected => diam(Gamma(G)) <= 16",
    "diameter.le12": "Gamma(G) strongly connected, G/Zinf(G) not almost simple => diam(Gamma(G)) <= 12",
    "diameter.max": "max diam(Gamma(G)) over strongly connected groups of the tier <= 16",
    "soluble.le4": "G soluble, Gamma(G) strongly connected => diam(Gamma(G)) <= 4",
    "soluble.attained": "some soluble G attains diam(Gamma(G)) = 4",
    "quotient.equal": "diam(Gamma(G/Zinf(G))) = diam(Gamma(G))",
    "normal.k4": "N non-nilpotent normal, d_Delta(G)(y1,y2) <= k on N\\{1} => diam(Delta(G)) <= k+4",
    "central.le3": "G = XY, [X,Y] = 1, X,Y != 1 => diam(Delta(G)) <= 3",
    "fstar.le16": "F*(G) != F(G), Delta(G) strongly connected => diam(Delta(G)) <= 16",
    "fstar.le7": "F*(G) != F(G), Delta(G) strongly connected, G not almost simple => diam(Delta(G)) <= 7",
    "sink.arcs": "x in G, f in F(G) => (x, f) is an arc of Lambda(G)",
    "commuting.le10": "Z(G) = 1 => every commuting-graph component has diameter <= 10",
    "commuting.hall": "Z(G) = 1, G non-soluble, component Psi without even-order elements "
                      "=> Psi = H\\{1} for an abelian isolated Hall subgroup H",
    "commuting.even": "Z(G) = 1, at least two involution classes => one commuting component "
                      "holds every element of even order",
    "prime.alt": "prime-graph components of Alt(5), Alt(6): {2},{3},{5}; Alt(7): {2,3},{5},{7}",
    "prime.altlarge": "Alt(n), n >= 8: pi = pi_1 u {p} for a prime p with n in {p, p+1, p+2}",
    "automizer.row": "S simple, p odd, |N_S(P):C_S(P)| odd => (S, p) matches an odd-automizer table row",
    "automizer.value": "named (S, p): |N_S(P):C_S(P)| equals the table value",
    "automizer.even": "A5, p odd: |N_S(P):C_S(P)| even",
    "chain.le2": "S simple, p_i | p_(i+1) - 1, all automizers odd => chain length <= 2",
    "theta.iso": "N_G(<x>)F(G) Frobenius with kernel F(G) => "
                 "|N_G(<x>):C_G(x)| = |N_(G/F)(<xF>):C_(G/F)(xF)|",
    "jstar.contra": "Zinf(G) = 1, F* = F, some d_Delta(G) > 4, J = J* => G Frobenius",
    "oddcent.metacyclic": "Zinf(G) = 1, F* = F, G not Frobenius, d_Gamma(x,y) > 4, "
                          "y_r of prime order r => C_G(y_r) odd and metacyclic",
    "alt.identity": "(1,3,5)^-1 (1..p)^-1 (1,3,5) (1..p) = (1,5,3)(2,4,6) and [x,_2 y] = 1",
    "alt.normalizer": "|N_Alt(p)(<x>)| = p(p-1)/2 for x of order p",
    "products.le8": "F*(G) = F(G), G/F(G) = S_1 x ... x S_l nonabelian simple => diam(Delta(G)) <= 8",
    "oracles.hypercenter": "Zinf(G) by central series = Zinf(G) by the Engel characterization",
    "oracles.fitting": "F(G) = left Engel elements = largest nilpotent normal subgroup",
    "oracles.monotone": "arcs(Gamma_n(G)) subset of arcs(Gamma_(n+1)(G)) on common vertices",
    "oracles.invariance": "(x, y) arc <=> (x^g, y^g) arc",
    "oracles.symmetric": "depth-1 Engel relation is symmetric",
    "ladder.bound": "measured diam(Gamma(G)) <= bound of the applicable case of the reduction ladder",
}


@dataclass(frozen=True)
class Claim:
    claim_id: str
    anchor: str
    status: str
    measured: str = ""
    bound: str = ""
    reason: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def claim(kind: str, subject: str, ok: bool | None, measured="", bound="", reason="") -> Claim:
    """Build a claim; ``ok=None`` marks it skipped."""
    status = SKIPPED if ok is None else (PASS if ok else FAIL)
    return Claim(f"{kind}.{subject}", ANCHORS[kind], status, str(measured), str(bound), reason)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    tier: str
    claims: tuple[Claim, ...]

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.claims)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "tier": self.tier, "claims": [c.to_dict() for c in self.claims]}


def _natural_key(text: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", text)]


# -- graph statistics ----------------------------------------------------------------


@dataclass(frozen=True)
class GraphStats:
    vertex_count: int
    arc_count: int
    scc_count: int
    strongly_connected: bool
    diameter: int | None  # None when not strongly connected
    witness_pair: tuple[int, int] | None  # element ids
    degenerate: bool

    @property
    def diameter_text(self) -> str:
        return "infinite" if self.diameter is None else str(self.diameter)


def graph_stats(D: Digraph, jobs: int = 1) -> GraphStats:
    s = scc(D)
    d = diameter(D, jobs) if s.is_strongly_connected else None
    witness = None
    if d is not None and d.witness_pair is not None:
        witness = (int(D.vertex_ids[d.witness_pair[0]]), int(D.vertex_ids[d.witness_pair[1]]))
    return GraphStats(
        vertex_count=len(D),
        arc_count=D.arc_count(),
        scc_count=s.component_count,
        strongly_connected=s.is_strongly_connected,
        diameter=None if d is None else int(d.diameter),
        witness_pair=witness,
        degenerate=D.degenerate,
    )


class Workspace:
    """Per-run cache of groups, graphs and statistics; safe to share between workers."""

    def __init__(self, budget: int | None = None, jobs: int = 1):
        self.budget = default_budget() if budget is None else budget
        self.jobs = max(1, int(jobs))
        self._cache: dict = {}
        self._locks: dict = {}
        self._guard = threading.Lock()

    def memo(self, key, fn: Callable):
        with self._guard:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    def map(self, fn: Callable, items) -> list:
        items = list(items)
        if self.jobs > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                return list(pool.map(fn, items))
        return [fn(x) for x in items]

    def group(self, spec: GroupSpec) -> Group:
        return self.memo(("group", spec), lambda: catalog.build(spec))

    def graph(self, G: Group, kind: str = "gamma") -> Digraph:
        if kind == "delta" and len(hypercenter(G)) == 1:
            kind = "gamma"
        return self.memo((kind, G), lambda: build_kind(G, kind, self.budget))

    def stats(self, G: Group, kind: str = "gamma") -> GraphStats:
        if kind == "delta" and len(hypercenter(G)) == 1:
            kind = "gamma"

        def compute():
            if len(G) > DENSE_LIMIT:
                # Large graphs are not kept once their statistics are known.
                return graph_stats(build_kind(G, kind, self.budget), self.jobs)
            return graph_stats(self.graph(G, kind), self.jobs)

        return self.memo(("stats", kind, G), compute)

    def rep_distances(self, G: Group, kind: str) -> tuple[Digraph, dict[int, np.ndarray]]:
        D = self.graph(G, kind)
        return D, self.memo(("dist", kind, G), lambda: _rep_distances(D, self.jobs))

    def zinf_quotient(self, G: Group) -> Group:
        def compute():
            Z = hypercenter(G)
            if len(Z) == 1:
                return G
            Q = quotient(G, Z)
            Q.name = f"{G.name}/Zinf"
            return Q

        return self.memo(("zq", G), compute)


def tier_specs(tier: str) -> list[GroupSpec]:
    if tier == FAST:
        return catalog.catalog_tier(FAST) + catalog.soluble_search_family() + catalog.extra_instances()
    return catalog.catalog_tier(tier)


def _workspace_for(tier: str, budget: int | None, jobs: int) -> Workspace:
    budget = default_budget() if budget is None else budget
    if tier == SLOW:
        budget = max(budget, SLOW_BUDGET)
    return Workspace(budget, jobs)


# -- recognising the exceptional simple groups by order --------------------------------


def _is_prime_power(q: int) -> bool:
    return q > 1 and len(sympy.factorint(q)) == 1


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // (2 if q % 2 else 1)


def suzuki_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


def simple_order_candidates(order: int) -> list[tuple[str, int]]:
    """Families among PSL2(q) and Sz(q) whose order equals ``order``.

    Orders within each family are strictly increasing, and a nonabelian
    simple group with the order of ``PSL2(q)`` or ``Sz(q)`` is isomorphic to
    it, so matching orders identifies these two families exactly.
    """
    out = []
    q = 4
    while q * (q * q - 1) // 2 <= order:  # lower bound for psl2_order, increasing in q
        if _is_prime_power(q) and psl2_order(q) == order:
            out.append(("psl2", q))
        q += 1
    q = 8
    while suzuki_order(q) <= order:
        if suzuki_order(q) == order:
            out.append(("suzuki", q))
        q *= 4
    return out


def predict_strongly_connected(G: Group, Q: Group | None = None) -> tuple[bool, str]:
    """Connectivity of the Engel graph predicted from the structure of ``G/Zinf(G)``."""
    if is_nilpotent(G):
        return True, "nilpotent: empty graph"
    if Q is None:
        Z = hypercenter(G)
        Q = G if len(Z) == 1 else quotient(G, Z)
    if is_frobenius(Q) is not None:
        return False, "G/Zinf Frobenius"
    if is_simple(Q):
        for fam, q in simple_order_candidates(len(Q)):
            if fam == "psl2" and ((q >= 4 and q % 2 == 0) or q % 8 == 5):
                return False, f"G/Zinf = PSL2({q})"
            if fam == "suzuki":
                return False, f"G/Zinf = Sz({q})"
        return True, "G/Zinf simple, not exceptional"
    S = socle_if_almost_simple(Q)
    if S is not None:
        e = len(Q) // len(S)
        for fam, q in simple_order_candidates(len(S)):
            if fam == "suzuki" and sympy.isprime(e) and e % 2 and q == 2**e:
                return False, f"G/Zinf = Aut(Sz({q}))"
    return True, "no exceptional quotient"


# -- the reduction ladder -----------------------------------------------------------


@dataclass
class ProofTrace:
    group: str
    steps: list[str] = field(default_factory=list)
    branch: str = ""
    bound: int | None = None
    measured: str = ""
    holds: bool = True

    def to_dict(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        lines = [f"group: {self.group}"]
        lines += [f"  - {s}" for s in self.steps]
        lines.append(f"branch: {self.branch}")
        lines.append(f"bound: {'none' if self.bound is None else self.bound}")
        lines.append(f"measured diameter: {self.measured}")
        lines.append(f"result: {'holds' if self.holds else 'VIOLATED'}")
        return "\n".join(lines)


def trace_proof(G: Group, ws: Workspace | None = None) -> ProofTrace:
    """Walk the case distinction that bounds the diameter and compare with the measurement."""
    ws = ws or Workspace()
    st = ws.stats(G, "gamma")
    tr = ProofTrace(G.name, measured=st.diameter_text)
    if st.degenerate:
        tr.steps.append(f"Gamma has {st.vertex_count} vertices (degenerate)")
        tr.branch = "degenerate graph"
        tr.bound = 0
        tr.holds = st.diameter == 0
        return tr
    if not st.strongly_connected:
        ok, why = predict_strongly_connected(G, ws.zinf_quotient(G))
        tr.steps.append(f"Gamma not strongly connected ({st.scc_count} components); prediction: {why}")
        tr.branch = "not strongly connected: no diameter bound applies"
        tr.holds = not ok
        return tr
    Z = hypercenter(G)
    if len(Z) > 1:
        Q = ws.zinf_quotient(G)
        sub = trace_proof(Q, ws)
        qst = ws.stats(Q, "gamma")
        same = qst.diameter == st.diameter
        tr.steps.append(f"Zinf != 1 (order {len(Z)}): reduce to quotient of order {len(Q)}")
        tr.steps.append(f"quotient diameter {qst.diameter_text} {'equals' if same else 'DIFFERS FROM'} "
                        f"diameter {st.diameter_text}")
        tr.steps += [f"quotient: {s}" for s in sub.steps]
        tr.branch = f"Zinf != 1: reduce to quotient; {sub.branch}"
        tr.bound = sub.bound
        tr.holds = same and sub.holds and (tr.bound is None or st.diameter <= tr.bound)
        return tr
    tr.steps.append("Zinf = 1")
    if not fstar_equals_fitting(G):
        tr.steps.append("C_G(F(G)) not inside F(G), so F* != F")
        if socle_if_almost_simple(G) is not None:
            tr.branch, tr.bound = "F* != F, almost simple", 16
        else:
            tr.branch, tr.bound = "F* != F, not almost simple", 7
    else:
        tr.steps.append("F* = F")
        F = fitting(G)
        J = compute_J(G)
        tr.steps.append(f"|F| = {len(F)}, |J| = {len(J)}")
        if j_equals_jstar(G):
            tr.branch, tr.bound = "J = J*: not Frobenius, so all distances <= 4", 4
        elif len(J) == len(F):
            tr.branch, tr.bound = "J = F: Delta(J*) has diameter <= 8", 12
        elif is_frobenius(as_group(J)) is None:
            tr.branch, tr.bound = "J not Frobenius: diam(Gamma(J)) <= 4", 8
        else:
            tr.branch, tr.bound = "J Frobenius with kernel F: Sylow-2 split over J*/F", 8
    tr.holds = st.diameter <= tr.bound
    return tr


# -- suites -----------------------------------------------------------------------


def _simple_groups(ws: Workspace, specs) -> list[tuple[GroupSpec, Group]]:
    out = []
    for s in specs:
        G = ws.group(s)
        if len(G) > 1 and is_simple(G):
            out.append((s, G))
    return out


def _certificate_claim(spec: GroupSpec, G: Group) -> Claim:
    """Classification via the class graph, for groups too large for the element graph."""
    predicted, why = predict_strongly_connected(G)
    bound = f"predicted {'connected' if predicted else 'disconnected'} ({why})"
    cert = disconnection_certificate(G)
    if cert is None:
        return claim("classification.predicted", spec.name, None, "class graph strongly connected", bound,
                     "class graph cannot certify strong connectivity of the element graph")
    measured = (f"not strongly connected: class of {G.label(cert.source_class_rep)} cannot reach "
                f"class of {G.label(cert.unreachable_class_rep)} ({cert.class_count} classes)")
    return claim("classification.predicted", spec.name, not predicted, measured, bound)


def suite_classification(ws: Workspace, tier: str) -> list[Claim]:
    def item(spec):
        G = ws.group(spec)
        if tier == TARGETED:
            return _certificate_claim(spec, G)
        st = ws.stats(G)
        predicted, why = predict_strongly_connected(G, ws.zinf_quotient(G))
        measured = ("strongly connected" if st.strongly_connected else f"{st.scc_count} components")
        if st.degenerate:
            measured += " (degenerate)"
        return claim("classification.predicted", spec.name, predicted == st.strongly_connected, measured,
                     f"predicted {'connected' if predicted else 'disconnected'} ({why})")

    return ws.map(item, tier_specs(tier))


def suite_diameter(ws: Workspace, tier: str) -> list[Claim]:
    if tier == TARGETED:
        return [claim("diameter.max", "targeted", None, reason="targeted tier builds no full graphs")]

    def item(spec):
        G = ws.group(spec)
        st = ws.stats(G)
        if not st.strongly_connected or st.degenerate:
            return []
        out = [claim("diameter.le16", spec.name, st.diameter <= 16, st.diameter, "<= 16")]
        Q = ws.zinf_quotient(G)
        if socle_if_almost_simple(Q) is None:
            out.append(claim("diameter.le12", spec.name, st.diameter <= 12, st.diameter, "<= 12"))
        return out

    out = [c for cs in ws.map(item, tier_specs(tier)) for c in cs]
    values = [int(c.measured) for c in out if c.claim_id.startswith("diameter.le16")]
    if values:
        out.append(claim("diameter.max", tier, max(values) <= 16, max(values), "<= 16"))
    else:
        out.append(claim("diameter.max", tier, None, reason="no strongly connected graph in tier"))
    return out


def suite_soluble(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("soluble.attained", tier, None, reason="no soluble group in this tier")]

    def item(spec):
        G = ws.group(spec)
        if not is_soluble(G):
            return None
        st = ws.stats(G)
        if not st.strongly_connected or st.degenerate:
            return None
        return spec, G, st

    hits = [h for h in ws.map(item, tier_specs(tier)) if h is not None]
    out = [claim("soluble.le4", s.name, st.diameter <= 4, st.diameter, "<= 4") for s, _, st in hits]
    attaining = [(s, G, st) for s, G, st in hits if st.diameter == 4]
    if attaining:
        s, G, st = attaining[0]
        x, y = st.witness_pair
        out.append(claim("soluble.attained", "search", True,
                         f"{s.name} (order {len(G)}): d({G.label(x)}, {G.label(y)}) = 4",
                         f"searched {len(hits)} soluble strongly connected groups"))
    else:
        best = max((st.diameter for _, _, st in hits), default=None)
        out.append(claim("soluble.attained", "search", False, f"max {best}",
                         f"searched {len(hits)} soluble strongly connected groups"))
    return out


def suite_quotient(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("quotient.equal", tier, None, reason="no group with 1 < Zinf < G in this tier")]

    def item(spec):
        G = ws.group(spec)
        Z = hypercenter(G)
        if len(Z) == 1 or len(Z) == len(G):
            return None
        Q = ws.zinf_quotient(G)
        a, b = ws.stats(G), ws.stats(Q)
        same = a.strongly_connected == b.strongly_connected and a.diameter == b.diameter
        return claim("quotient.equal", spec.name, same, f"{a.diameter_text} vs {b.diameter_text}",
                     f"diam(Gamma({spec.name}/Zinf)) with |Zinf| = {len(Z)}")

    out = [c for c in ws.map(item, tier_specs(tier)) if c is not None]
    # the direct comparison with the separately built quotient group
    pairs = [("C2xS4", "S4"), ("SL(2,3)", "A4")]
    by_name = catalog.catalog_by_name()
    for big, small in pairs:
        a = ws.stats(ws.group(by_name[big]))
        b = ws.stats(ws.group(by_name[small]))
        same = a.strongly_connected == b.strongly_connected and a.diameter == b.diameter
        out.append(claim("quotient.equal", f"{big}-vs-{small}", same,
                         f"{a.diameter_text} vs {b.diameter_text}", f"diam(Gamma({small}))"))
    return out


def _distances_within(D: Digraph, dist: dict[int, np.ndarray], G: Group, members: np.ndarray) -> int | None:
    """Largest Delta-distance between distinct non-identity elements of a normal subgroup."""
    idx = np.array([D.index_of(int(m)) for m in members if m != 0])
    worst = 0
    for r, d in dist.items():
        if int(D.vertex_ids[r]) not in members:
            continue
        sub = d[idx]
        sub = sub[idx != r]
        if (sub < 0).any():
            return None
        if len(sub):
            worst = max(worst, int(sub.max()))
    return worst


def suite_normal(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("normal.k4", tier, None, reason="suite runs on the fast tier")]

    def item(spec):
        G = ws.group(spec)
        if is_nilpotent(G):
            return []
        D, dist = ws.rep_distances(G, "delta")
        st = ws.stats(G, "delta")
        out = []
        for N in normal_subgroups(G):
            if is_nilpotent(as_group(N)):
                continue
            k = _distances_within(D, dist, G, N.members)
            if k is None:
                continue
            ok = st.strongly_connected and st.diameter <= k + 4
            out.append(claim("normal.k4", f"{spec.name}.N{len(N)}", ok, st.diameter_text, f"<= {k}+4"))
        return out

    out = [c for cs in ws.map(item, tier_specs(tier)) for c in cs]
    return out or [claim("normal.k4", tier, None, reason="no normal subgroup meets the hypothesis")]


def _central_factorisations(G: Group) -> list[tuple[int, int]]:
    """Orders of pairs ``X, Y != 1`` with ``[X, Y] = 1`` and ``XY = G``.

    Such ``X`` and ``Y`` are automatically normal, so normal subgroups suffice.
    """
    normals = [N for N in normal_subgroups(G) if len(N) > 1]
    pairs = []
    for i, X in enumerate(normals):
        CX = centralizer(G, X.members)
        for Y in normals[i:]:
            inter = len(np.intersect1d(X.members, Y.members))
            if len(X) * len(Y) == len(G) * inter and Y.issubset(CX):
                pairs.append((len(X), len(Y)))
    return pairs


def suite_central(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("central.le3", tier, None, reason="suite runs on the fast tier")]

    def item(spec):
        G = ws.group(spec)
        pairs = _central_factorisations(G)
        if not pairs:
            return None
        st = ws.stats(G, "delta")
        shown = ", ".join(f"{a}*{b}" for a, b in pairs[:3]) + (" ..." if len(pairs) > 3 else "")
        if st.degenerate:
            return claim("central.le3", spec.name, None, reason="Delta(G) has at most one vertex")
        return claim("central.le3", spec.name, st.strongly_connected and st.diameter <= 3,
                     st.diameter_text, f"<= 3 (|X|*|Y| = {shown})")

    return [c for c in ws.map(item, tier_specs(tier)) if c is not None]


def suite_fstar(ws: Workspace, tier: str) -> list[Claim]:
    if tier == TARGETED:
        return [claim("fstar.le16", tier, None, reason="targeted tier builds no full graphs")]

    def item(spec):
        G = ws.group(spec)
        if fstar_equals_fitting(G):
            return []
        st = ws.stats(G, "delta")
        if not st.strongly_connected:
            return [claim("fstar.le16", spec.name, None, st.diameter_text, "<= 16",
                          "Delta(G) not strongly connected")]
        out = [claim("fstar.le16", spec.name, st.diameter <= 16, st.diameter, "<= 16")]
        if socle_if_almost_simple(G) is None:
            out.append(claim("fstar.le7", spec.name, st.diameter <= 7, st.diameter, "<= 7"))
        return out

    return [c for cs in ws.map(item, tier_specs(tier)) for c in cs]


def suite_sink(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("sink.arcs", tier, None, reason="suite runs on the fast tier")]

    def item(spec):
        G = ws.group(spec)
        F = fitting(G)
        if len(F) == 1:
            return None
        cols = engel_depths(G)[:, F.members[1:]]
        missing = int((cols == NO_ARC).sum())
        return claim("sink.arcs", spec.name, missing == 0, f"{missing} missing arcs",
                     f"{len(G)} x {len(F) - 1} arcs into F(G)")

    return [c for c in ws.map(item, tier_specs(tier)) if c is not None]


def _involution_classes(G: Group) -> int:
    inv = np.flatnonzero(G.element_orders == 2)
    return len(np.unique(G.class_of[inv]))


def suite_commuting(ws: Workspace, tier: str) -> list[Claim]:
    if tier == TARGETED:
        out = []
        for spec in tier_specs(tier):
            G = ws.group(spec)
            pg = build_prime_graph(G)
            for comp in pg.components:
                if 2 in comp:
                    continue
                oc = hall_clique_check(G, comp[0])
                out.append(claim("commuting.hall", f"{spec.name}.p{comp[0]}", oc.isolated_hall_clique,
                                 f"component of order-{comp[0]} element: {len(oc.members)} elements, "
                                 f"primes {list(oc.primes)}", "abelian isolated Hall subgroup minus 1"))
        return out

    def item(spec):
        G = ws.group(spec)
        if G.is_abelian() or len(center(G)) > 1:
            return []
        name = spec.name
        if len(G) > DENSE_LIMIT:
            out = []
            for comp in build_prime_graph(G).components:
                if 2 not in comp:
                    oc = hall_clique_check(G, comp[0])
                    out.append(claim("commuting.hall", f"{name}.p{comp[0]}", oc.isolated_hall_clique,
                                     f"{len(oc.members)} elements, primes {list(oc.primes)}",
                                     "abelian isolated Hall subgroup minus 1"))
            return out
        D = ws.graph(G, "commuting")
        comps = undirected_components(D)
        diams = [component_diameter(D, c) for c in comps]
        out = [claim("commuting.le10", name, max(diams) <= 10,
                     f"{len(comps)} components, max diameter {max(diams)}", "<= 10")]
        if not is_soluble(G):
            odd = odd_commuting_components(G, comps, D)
            good = sum(c.isolated_hall_clique for c in odd)
            sizes = sorted({(len(c.members), c.primes) for c in odd})
            out.append(claim("commuting.hall", name, good == len(odd) and len(odd) > 0,
                             f"{good}/{len(odd)} odd components are isolated Hall cliques "
                             f"{[(s, list(p)) for s, p in sizes]}", "all"))
        if _involution_classes(G) >= 2:
            comp_of = np.empty(len(D), dtype=np.int64)
            for i, c in enumerate(comps):
                comp_of[c] = i
            even = G.element_orders[D.vertex_ids] % 2 == 0
            holders = np.unique(comp_of[even])
            out.append(claim("commuting.even", name, len(holders) == 1,
                             f"even-order elements in {len(holders)} component(s)", "1"))
        return out

    return [c for cs in ws.map(item, tier_specs(tier)) for c in cs]


_QUOTED_ALT = {5: [(2,), (3,), (5,)], 6: [(2,), (3,), (5,)], 7: [(2, 3), (5,), (7,)]}


def suite_prime(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("prime.alt", tier, None, reason="suite runs on the fast tier")]
    out = []
    for n, expected in _QUOTED_ALT.items():
        G = ws.group(catalog.alternating(n))
        from_group = sorted(build_prime_graph(G).components)
        from_orders = sorted(alternating_prime_graph(n).components)
        ok = from_group == sorted(expected) and from_orders == from_group
        out.append(claim("prime.alt", f"Alt{n}", ok, f"{from_group} (cycle types: {from_orders})",
                         f"{sorted(expected)}"))
    for n in (11, 12, 13):
        pg = alternating_prime_graph(n)
        pi1 = set(pg.pi1)
        rest = set(pg.primes) - pi1
        witnesses = [p for p in (n - 2, n - 1, n) if sympy.isprime(p) and rest == {p}]
        out.append(claim("prime.altlarge", f"Alt{n}", bool(witnesses),
                         f"components {sorted(pg.components)}",
                         "pi = pi_1 u {p}, n - p in {0,1,2}"))
    return out


# Odd-automizer table rows realised by the groups this package can build.
_SPORADIC_ROWS = {"M11": {11: 5}, "M12": {11: 5}}


def table_rows(spec: GroupSpec, G: Group) -> dict[int, int]:
    """Predicted odd automizers ``{p: |N:C|}`` for ``G`` from the rows that apply to it."""
    rows: dict[int, int] = {}
    fam = spec.family
    if fam and fam[0] == "alternating":
        n = fam[1]
        for p in (n, n - 1):
            if sympy.isprime(p) and p % 4 == 3:
                rows[p] = (p - 1) // 2
    if fam and fam[0] == "sporadic":
        rows.update(_SPORADIC_ROWS.get(fam[1], {}))
    for kind, q in simple_order_candidates(len(G)):
        if kind == "psl2" and q % 4 == 3:
            rows[int(sympy.factorint(q).popitem()[0])] = (q - 1) // 2
    return rows


_NAMED_AUTOMIZERS = [("M11", 11, 5), ("M12", 11, 5), ("A7", 7, 3), ("PSL2(7)", 7, 3), ("PSL2(11)", 11, 5)]


def suite_automizers(ws: Workspace, tier: str) -> list[Claim]:
    out = []
    simples = _simple_groups(ws, tier_specs(tier))
    for spec, G in simples:
        rows = table_rows(spec, G)
        found = {}
        for p in sympy.primefactors(len(G)):
            if p == 2:
                continue
            rep = sylow_automizer(G, p)
            found[p] = rep.automizer
            if rep.automizer_odd:
                ok = rows.get(p) == rep.automizer
                out.append(claim("automizer.row", f"{spec.name}.p{p}", ok, rep.automizer,
                                 f"row value {rows.get(p, 'none')}"))
        for p, value in rows.items():
            if p not in found:
                out.append(claim("automizer.row", f"{spec.name}.p{p}", False, "p does not divide |S|", value))
            elif found[p] % 2 == 0:
                out.append(claim("automizer.row", f"{spec.name}.p{p}", False, found[p], f"row value {value}"))
        if not rows and all(v % 2 == 0 for v in found.values()):
            out.append(claim("automizer.row", f"{spec.name}.none", True, f"automizers {found}",
                             "no odd automizer at an odd prime, so no row is required"))
    names = {s.name for s, _ in simples}
    for name, p, value in _NAMED_AUTOMIZERS:
        if name in names:
            G = ws.group(catalog.catalog_by_name()[name])
            rep = sylow_automizer(G, p)
            out.append(claim("automizer.value", f"{name}.p{p}", rep.automizer == value,
                             f"|N| = {rep.normalizer_order}, |C| = {rep.centralizer_order}, "
                             f"|N:C| = {rep.automizer}", value))
    if tier == FAST:
        G = ws.group(catalog.alternating(5))
        reps = {p: sylow_automizer(G, p).automizer for p in sympy.primefactors(len(G))}
        odd_even = all(v % 2 == 0 for p, v in reps.items() if p != 2)
        out.append(claim("automizer.even", "A5", odd_even, f"automizers {reps}", "even for p = 3, 5"))
    return out


def suite_chain(ws: Workspace, tier: str) -> list[Claim]:
    def item(pair):
        spec, G = pair
        ell = odd_automizer_chain_length(G)
        return claim("chain.le2", spec.name, ell <= 2, ell, "<= 2")

    return ws.map(item, _simple_groups(ws, tier_specs(tier)))


def suite_theta(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("theta.iso", tier, None, reason="suite runs on the fast tier")]

    def item(spec):
        G = ws.group(spec)
        results = []
        for r in G.class_reps[1:]:
            o = int(G.element_orders[r])
            if not sympy.isprime(o):
                continue
            res = check_theta_isomorphism(G, int(r))
            if res is not None:
                results.append((G.label(int(r)), res))
        if not results:
            return None
        bad = [x for x, ok in results if not ok]
        return claim("theta.iso", spec.name, not bad, f"{len(results) - len(bad)}/{len(results)} classes agree",
                     "all", "" if not bad else f"disagree at {bad}")

    out = [c for c in ws.map(item, tier_specs(tier)) if c is not None]
    return out or [claim("theta.iso", tier, None, reason="no element meets the hypothesis")]


def suite_jstar(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("jstar.contra", tier, None, reason="suite runs on the fast tier")]

    def item(spec):
        G = ws.group(spec)
        if len(G) == 1 or len(hypercenter(G)) > 1 or not fstar_equals_fitting(G):
            return None
        st = ws.stats(G, "delta")
        if st.strongly_connected and st.diameter <= 4:
            return None
        frob = is_frobenius(G) is not None
        jj = j_equals_jstar(G)
        return claim("jstar.contra", spec.name, (not jj) or frob,
                     f"diam(Delta) {st.diameter_text}, J {'=' if jj else '!='} J*, "
                     f"{'Frobenius' if frob else 'not Frobenius'}", "J = J* => Frobenius")

    out = [c for c in ws.map(item, tier_specs(tier)) if c is not None]
    return out or [claim("jstar.contra", tier, None, reason="no group meets the hypothesis")]


def suite_oddcent(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("oddcent.metacyclic", tier, None, reason="suite runs on the fast tier")]
    scanned = []

    def item(spec):
        G = ws.group(spec)
        if len(G) == 1 or len(hypercenter(G)) > 1 or not fstar_equals_fitting(G) or is_frobenius(G):
            return []
        scanned.append(spec.name)
        D, dist = ws.rep_distances(G, "gamma")
        out = []
        for r, d in dist.items():
            far = np.flatnonzero((d > 4) | (d < 0))
            for j in far:
                y = int(D.vertex_ids[j])
                o = int(G.element_orders[y])
                for rr in sympy.primefactors(o):
                    yr = G.power(y, o // rr)
                    C = centralizer(G, [yr])
                    ok = len(C) % 2 == 1 and is_metacyclic(as_group(C))
                    out.append(claim("oddcent.metacyclic", f"{spec.name}.{G.label(int(D.vertex_ids[r]))}"
                                     f"->{G.label(y)}.r{rr}", ok, f"|C| = {len(C)}", "odd, metacyclic"))
        return out

    out = [c for cs in ws.map(item, tier_specs(tier)) for c in cs]
    return out or [claim("oddcent.metacyclic", tier, None,
                         reason=f"no pair at distance > 4 among {len(scanned)} groups meeting the hypotheses")]


def suite_alt(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("alt.identity", tier, None, reason="suite runs on the fast tier")]
    out = []
    for p in (7, 11, 13, 17, 19, 23):
        r = alt_identity_check(p)
        out.append(claim("alt.identity", f"p{p}", r.holds,
                         f"{r.commutator}; [x,_2 y] {'= 1' if r.second_engel_is_identity else '!= 1'}",
                         r.expected))
    for p in (5, 7):
        G = ws.group(catalog.alternating(p))
        N = normalizer(G, sylow(G, p))
        out.append(claim("alt.normalizer", f"Alt{p}", len(N) == p * (p - 1) // 2, len(N), p * (p - 1) // 2))
    return out


def product_of_simples_rank(G: Group) -> int | None:
    """``l`` when ``F* = F`` and ``G/F(G)`` is a direct product of ``l`` nonabelian simple groups."""
    if not fstar_equals_fitting(G):
        return None
    F = fitting(G)
    if len(F) == len(G):
        return None
    Q = quotient(G, F) if len(F) > 1 else G
    if len(fitting(Q)) > 1:
        return None
    mins = minimal_class_closures(Q)
    if not all(is_simple(as_group(M)) for M in mins):
        return None
    if int(np.prod([len(M) for M in mins], dtype=object)) != len(Q):
        return None
    return len(mins)


def suite_products(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("products.le8", tier, None, reason="suite runs on the fast tier")]

    def item(spec):
        G = ws.group(spec)
        ell = product_of_simples_rank(G)
        if ell is None:
            return None
        st = ws.stats(G, "delta")
        return claim("products.le8", f"{spec.name}.l{ell}", st.strongly_connected and st.diameter <= 8,
                     st.diameter_text, "<= 8")

    out = [c for c in ws.map(item, tier_specs(tier)) if c is not None]
    if not any(c.claim_id.endswith(tuple(f".l{k}" for k in range(2, 10))) for c in out):
        out.append(claim("products.le8", "l>=2", None, reason="no instance in catalog"))
    return out


def _seed(name: str) -> int:
    return zlib.crc32(name.encode())


def suite_oracles(ws: Workspace, tier: str) -> list[Claim]:
    if tier != FAST:
        return [claim("oracles.hypercenter", tier, None, reason="suite runs on the fast tier")]

    def item(spec):
        G = ws.group(spec)
        name = spec.name
        out = []
        Z, Ze = hypercenter(G), hypercenter_engel_oracle(G)
        out.append(claim("oracles.hypercenter", name, Z == Ze, f"{len(Z)} vs {len(Ze)}", "equal"))
        F, Fc = fitting(G), fitting_class_oracle(G)
        out.append(claim("oracles.fitting", name, F == Fc, f"{len(F)} vs {len(Fc)}", "equal"))
        D = engel_depths(G)
        ok1 = bool(((D == 1) == (D == 1).T).all())
        out.append(claim("oracles.symmetric", name, ok1, "symmetric" if ok1 else "asymmetric", "symmetric"))
        if not is_nilpotent(G):
            bad = []
            for n in range(1, 5):
                a, b = build_kind(G, f"gamma_n:{n}", ws.budget), build_kind(G, f"gamma_n:{n + 1}", ws.budget)
                common, ia, ib = np.intersect1d(a.vertex_ids, b.vertex_ids, return_indices=True)
                A, B = a.dense()[np.ix_(ia, ia)], b.dense()[np.ix_(ib, ib)]
                if (A & ~B).any():
                    bad.append(n)
            out.append(claim("oracles.monotone", name, not bad, "ok" if not bad else f"fails at n = {bad}",
                             "n = 1..4"))
        rng = np.random.default_rng(_seed(name))
        mism = 0
        for _ in range(RANDOM_CONJUGATIONS):
            g = int(rng.integers(len(G)))
            x = int(rng.integers(len(G)))
            xg = int(G.conj(x, g))
            direct_row = depths_from(G, x)
            image_row = depths_from(G, xg)
            ys = np.arange(len(G))
            yg = np.asarray(G.conj(ys, g))
            arcs = direct_row != NO_ARC
            if not np.array_equal(arcs, image_row[yg] != NO_ARC) or not np.array_equal(arcs, D[x] != NO_ARC):
                mism += 1
        out.append(claim("oracles.invariance", name, mism == 0,
                         f"{RANDOM_CONJUGATIONS - mism}/{RANDOM_CONJUGATIONS} conjugations agree", "all"))
        return out

    specs = [s for s in tier_specs(tier) if len(catalog.build(s)) <= DENSE_LIMIT]
    return [c for cs in ws.map(item, specs) for c in cs]


def suite_ladder(ws: Workspace, tier: str) -> list[Claim]:
    if tier == TARGETED:
        return [claim("ladder.bound", tier, None, reason="targeted tier builds no full graphs")]

    def item(spec):
        G = ws.group(spec)
        st = ws.stats(G)
        if not st.strongly_connected or st.degenerate:
            return None
        tr = trace_proof(G, ws)
        return claim("ladder.bound", spec.name, tr.holds, tr.measured, f"<= {tr.bound} ({tr.branch})")

    return [c for c in ws.map(item, tier_specs(tier)) if c is not None]


SUITES: dict[str, Callable[[Workspace, str], list[Claim]]] = {
    "classification": suite_classification,
    "diameter": suite_diameter,
    "soluble": suite_soluble,
    "quotient": suite_quotient,
    "normal-subgroup": suite_normal,
    "central-product": suite_central,
    "fstar": suite_fstar,
    "fitting-sink": suite_sink,
    "commuting": suite_commuting,
    "prime-graph": suite_prime,
    "automizers": suite_automizers,
    "chain": suite_chain,
    "theta": suite_theta,
    "jstar": suite_jstar,
    "odd-centralizer": suite_oddcent,
    "alt-identity": suite_alt,
    "product-of-simples": suite_products,
    "oracles": suite_oracles,
    "ladder": suite_ladder,
}


def run_suite(name: str, tier: str = FAST, budget: int | None = None, jobs: int = 1,
              ws: Workspace | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    if tier not in catalog.TIERS:
        raise ValueError(f"unknown tier {tier!r}")
    ws = ws or _workspace_for(tier, budget, jobs)
    claims = sorted(SUITES[name](ws, tier), key=lambda c: _natural_key(c.claim_id))
    return SuiteResult(name, tier, tuple(claims))


def run_suites(names, tier: str = FAST, budget: int | None = None, jobs: int = 1) -> list[SuiteResult]:
    ws = _workspace_for(tier, budget, jobs)
    names = list(SUITES) if names in ("all", ["all"]) else list(names)
    return [run_suite(n, tier, ws=ws) for n in names]


def render_text(results: list[SuiteResult]) -> str:
    lines = []
    for res in results:
        lines.append(f"== {res.suite} [{res.tier}]")
        for c in res.claims:
            text = f"{c.status.upper():7} {c.claim_id}"
            if c.measured:
                text += f"  measured={c.measured}"
            if c.bound:
                text += f"  bound={c.bound}"
            if c.reason:
                text += f"  reason={c.reason}"
            lines.append(text)
            lines.append(f"        anchor: {c.anchor}")
    counts = {s: sum(c.status == s for r in results for c in r.claims) for s in (PASS, FAIL, SKIPPED)}
    lines.append(f"summary: {counts[PASS]} pass, {counts[FAIL]} fail, {counts[SKIPPED]} skipped")
    return "\n".join(lines) + "\n"
