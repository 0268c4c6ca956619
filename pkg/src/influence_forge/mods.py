"""Certification and planning of influence-shifting edge modifications.

A modification (a, b, d) shifts some of node b's attention from d to a. Its
effect on the two stubborn agents' centralities is decided by purely
structural certificates — membership of a and d in the node classes of a
global communicator m, and path-funnelling conditions — which hold for every
weight assignment on the topology. Three certificate families make a
modification *redundant* (no centrality moves at all); three make it
*useful* for a chosen agent (that agent's centrality strictly increases).
Everything else is reported as indeterminate rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .dynamics import centrality_pair
from .errors import GraphError, ModificationError
from .graph import EdgeModification, StubbornProfile, WeightedDigraph, apply_modification
from .topology import (
    T1,
    T2,
    T3,
    T4,
    TClassification,
    classify_nodes,
    every_path_hits,
    global_communicators,
    is_type_c1,
    reachable_avoiding,
)

REDUNDANT = "redundant"
USEFUL = "useful"
INDETERMINATE = "indeterminate"

EQUALLY_NEUTRAL = "equally_neutral"
EQUALLY_SUPPORTIVE = "equally_supportive"
EQUALLY_CONNECTED = "equally_connected"
COND_C1 = "C1"
COND_C2 = "C2"
COND_COROLLARY1 = "Corollary1"


@dataclass(frozen=True)
class ModificationVerdict:
    """Structural verdict for one modification.

    ``m`` is the witnessing communicator (None for the weight-independent
    separator condition and for indeterminate verdicts). ``per_m`` records
    what each examined communicator concluded so disagreements are visible.
    """

    mod: EdgeModification
    verdict: str
    condition: Optional[str] = None
    target: Optional[int] = None
    m: Optional[int] = None
    per_m: tuple[tuple[int, Optional[str]], ...] = ()

    @property
    def verdicts_differ_across_m(self) -> bool:
        outcomes = {cond for _, cond in self.per_m}
        return len(outcomes) > 1


@dataclass(frozen=True)
class ModEffect:
    """Measured centrality change of a modification (dense-solve oracle)."""

    before: tuple[float, float]
    after: tuple[float, float]

    @property
    def delta_s1(self) -> float:
        return self.after[0] - self.before[0]

    @property
    def delta_s2(self) -> float:
        return self.after[1] - self.before[1]


class _MContext:
    """Per-communicator structure shared by every certificate check."""

    def __init__(self, graph: WeightedDigraph, profile: StubbornProfile, m: int):
        self.m = m
        self.tc: TClassification = classify_nodes(graph, m, profile.s1, profile.s2)
        n = graph.n
        low, high = self.tc.low, self.tc.high
        self.funnel_low = frozenset(
            t for t in range(n) if t != m and every_path_hits(graph, m, t, low)
        )
        self.funnel_high = frozenset(
            t for t in range(n) if t != m and every_path_hits(graph, m, t, high)
        )
        # closure[u][v]: nonempty path u -> v inside G \ {m}
        self.closure = _dag_closure(graph, m)


def _dag_closure(graph: WeightedDigraph, m: int) -> np.ndarray:
    n = graph.n
    adj = graph.weights.T > 0.0
    closure = np.zeros((n, n), dtype=bool)
    keep = [v for v in range(n) if v != m]
    indeg = {v: 0 for v in keep}
    children: dict[int, list[int]] = {v: [] for v in keep}
    for frm in keep:
        for to in np.nonzero(adj[frm])[0]:
            to = int(to)
            if to != m and to != frm:
                children[frm].append(to)
                indeg[to] += 1
    queue = [v for v in keep if indeg[v] == 0]
    order: list[int] = []
    while queue:
        v = queue.pop()
        order.append(v)
        for u in children[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                queue.append(u)
    if len(order) != len(keep):
        raise GraphError(f"node {m} is not a global communicator")
    for v in reversed(order):
        for u in children[v]:
            closure[v, u] = True
            closure[v] |= closure[u]
    return closure


class CertificationContext:
    """All per-graph structure needed to certify modifications in bulk."""

    def __init__(self, graph: WeightedDigraph, profile: StubbornProfile):
        profile.require_competition()
        self.graph = graph
        self.profile = profile
        self.communicators = global_communicators(graph)
        if not self.communicators:
            raise GraphError("graph has no global communicator; certificates need type C1")
        self.contexts = [
            _MContext(graph, profile, m)
            for m in self.communicators
            if m not in (profile.s1, profile.s2)
        ]
        self._separators: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def permissible(self, mod: EdgeModification) -> bool:
        g = self.graph
        w_bd = g.weights[mod.b, mod.d]
        if w_bd <= 0.0 or mod.w >= w_bd:
            return False
        if g.has_edge(mod.a, mod.b):
            return True  # no new edge, so the cycle structure is unchanged
        # A new flow edge a -> b is safe iff some existing communicator m'
        # still cuts every cycle, i.e. no b -> a path survives in G \ {m'}.
        for m in self.communicators:
            if mod.b == m or mod.a == m:
                return True  # the new cycle(s) pass through m itself
            ctx = self._closure_for(m)
            if not ctx[mod.b, mod.a]:
                return True
        return False

    def _closure_for(self, m: int) -> np.ndarray:
        for ctx in self.contexts:
            if ctx.m == m:
                return ctx.closure
        return _dag_closure(self.graph, m)

    def _separation_sets(self, c: int) -> tuple[np.ndarray, np.ndarray]:
        if c not in self._separators:
            g, p = self.graph, self.profile
            n = g.n
            rs = []
            for s in (p.s1, p.s2):
                row = np.zeros(n, dtype=bool)
                for t in range(n):
                    if t != c and reachable_avoiding(g, s, t, {c}):
                        row[t] = True
                rs.append(row)
            self._separators[c] = (rs[0], rs[1])
        return self._separators[c]

    def separated_by_some_vertex(self, a: int, d: int) -> Optional[int]:
        """A vertex c on every simple path from both agents to both a and d.

        A stubborn endpoint can only be separated by itself: an absorbing
        walk started there may terminate before reaching any other vertex.
        """
        p = self.profile
        for c in range(self.graph.n):
            r1, r2 = self._separation_sets(c)
            ok = True
            for t in (a, d):
                if t == c:
                    continue
                if t in (p.s1, p.s2):
                    ok = False
                    break
                for s, reach in ((p.s1, r1), (p.s2, r2)):
                    if c == s:
                        continue
                    if reach[t]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return c
        return None


def is_permissible(graph: WeightedDigraph, mod: EdgeModification) -> bool:
    """True iff the modification applies cleanly and preserves type C1."""
    try:
        modified = apply_modification(graph, mod)
    except ModificationError:
        return False
    return is_type_c1(modified)


def _redundant_under(ctx: _MContext, a: int, d: int) -> Optional[str]:
    lab = ctx.tc.label
    if lab[a] == T4 and lab[d] == T4:
        return EQUALLY_NEUTRAL
    if lab[a] == T1 and lab[d] == T1 and a in ctx.funnel_low and d in ctx.funnel_low:
        return EQUALLY_SUPPORTIVE
    if lab[a] == T2 and lab[d] == T2 and a in ctx.funnel_high and d in ctx.funnel_high:
        return EQUALLY_SUPPORTIVE
    return None


def classify_redundant(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    mod: EdgeModification,
    context: Optional[CertificationContext] = None,
) -> ModificationVerdict:
    """Certify a permissible modification as redundant, or report indeterminate.

    Certificates (checked in order, first match wins):
    equally neutral — a and d both unreachable from the stubborn agents
    without crossing m; equally supportive — both funnelled through the same
    stubborn agent; equally connected — a single vertex lies on every simple
    path from both agents to both nodes.
    """
    ctx = context or CertificationContext(graph, profile)
    per_m: list[tuple[int, Optional[str]]] = []
    hit: Optional[tuple[int, str]] = None
    for mc in ctx.contexts:
        cond = _redundant_under(mc, mod.a, mod.d)
        per_m.append((mc.m, cond))
        if cond and hit is None:
            hit = (mc.m, cond)
    if hit is not None:
        return ModificationVerdict(
            mod=mod, verdict=REDUNDANT, condition=hit[1], m=hit[0], per_m=tuple(per_m)
        )
    sep = ctx.separated_by_some_vertex(mod.a, mod.d)
    if sep is not None:
        return ModificationVerdict(
            mod=mod, verdict=REDUNDANT, condition=EQUALLY_CONNECTED, m=None, per_m=tuple(per_m)
        )
    return ModificationVerdict(mod=mod, verdict=INDETERMINATE, per_m=tuple(per_m))


def _supports(ctx: _MContext, v: int, agent: int) -> bool:
    """True iff v's centrality contribution is pinned to ``agent``'s own, for
    every weight assignment (v sits behind the agent on all communicator
    paths). The competitor's side includes T3: once the first stubborn node
    on every path to v is the high agent, v backs it whether or not the low
    agent also reaches v."""
    lab = ctx.tc.label
    if agent == ctx.tc.low:
        return lab[v] == T1 and v in ctx.funnel_low
    return lab[v] in (T2, T3) and v in ctx.funnel_high


def _useful_under(
    ctx: _MContext, profile: StubbornProfile, a: int, d: int, target: int
) -> Optional[str]:
    lab = ctx.tc.label
    low, high = ctx.tc.low, ctx.tc.high
    if target == low:
        own_label, own_funnel = T1, ctx.funnel_low
        other_label = T2
    else:
        own_label, own_funnel = T2, ctx.funnel_high
        other_label = T1
    # C1: a is funnelled through the target, d is not.
    a_supports = lab[a] == own_label and a in own_funnel
    if a_supports and not _supports(ctx, d, target):
        return COND_C1
    # C2: a is neutral while d feeds the competitor.
    if lab[a] == T4 and lab[d] == other_label:
        return COND_C2
    if target == high and ctx.tc.t2_empty:
        # With the competitor's followers absorbed into T3 (T2 empty), the
        # T3-funnel condition replaces C1, guarded as stated: both agents
        # free of self-loops and the target at least half stubborn.
        return _corollary1(ctx, profile, a, d)
    return None


def _corollary1(
    ctx: _MContext, profile: StubbornProfile, a: int, d: int
) -> Optional[str]:
    high = ctx.tc.high
    if profile.beta[high] < 0.5:
        return None
    if a == ctx.m or d == ctx.m:
        return None  # degenerate funnel questions; stay indeterminate
    lab = ctx.tc.label
    a_ok = lab[a] == T3 and a in ctx.funnel_high
    d_ok = lab[d] == T3 and d in ctx.funnel_high
    if a_ok and not d_ok:
        return COND_COROLLARY1
    return None


def classify_useful(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    mod: EdgeModification,
    target: int,
    context: Optional[CertificationContext] = None,
) -> ModificationVerdict:
    """Certify a permissible modification as strictly increasing ``target``'s
    centrality under every weight assignment, or report indeterminate."""
    if target not in (profile.s1, profile.s2):
        raise GraphError(f"target {target} is not a stubborn agent")
    ctx = context or CertificationContext(graph, profile)
    per_m: list[tuple[int, Optional[str]]] = []
    hit: Optional[tuple[int, str]] = None
    for mc in ctx.contexts:
        cond = _useful_under_guarded(mc, graph, profile, mod, target)
        per_m.append((mc.m, cond))
        if cond and hit is None:
            hit = (mc.m, cond)
    if hit is not None:
        return ModificationVerdict(
            mod=mod,
            verdict=USEFUL,
            condition=hit[1],
            target=target,
            m=hit[0],
            per_m=tuple(per_m),
        )
    return ModificationVerdict(mod=mod, verdict=INDETERMINATE, target=target, per_m=tuple(per_m))


def _useful_under_guarded(
    mc: _MContext,
    graph: WeightedDigraph,
    profile: StubbornProfile,
    mod: EdgeModification,
    target: int,
) -> Optional[str]:
    cond = _useful_under(mc, profile, mod.a, mod.d, target)
    if cond == COND_COROLLARY1:
        s1, s2 = profile.s1, profile.s2
        if graph.weights[s1, s1] != 0.0 or graph.weights[s2, s2] != 0.0:
            return None
    return cond


def classify_modification(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    mod: EdgeModification,
    target: Optional[int] = None,
    context: Optional[CertificationContext] = None,
) -> ModificationVerdict:
    """Full verdict: permissibility gate, then redundancy, then usefulness.

    With no explicit target, usefulness is tried for s1 and then s2.
    """
    ctx = context or CertificationContext(graph, profile)
    if not ctx.permissible(mod):
        raise ModificationError(
            f"modification {mod.key} is not permissible (donor missing, weight too large, "
            "or the modified graph loses its global communicator)"
        )
    verdict = classify_redundant(graph, profile, mod, context=ctx)
    if verdict.verdict == REDUNDANT:
        return verdict
    targets = (target,) if target is not None else (profile.s1, profile.s2)
    for t in targets:
        v = classify_useful(graph, profile, mod, t, context=ctx)
        if v.verdict == USEFUL:
            return v
    return ModificationVerdict(mod=mod, verdict=INDETERMINATE, target=target, per_m=verdict.per_m)


def verify_mod_effect(
    graph: WeightedDigraph, profile: StubbornProfile, mod: EdgeModification
) -> ModEffect:
    """Measure the actual centrality change with two dense solves."""
    before = centrality_pair(graph, profile)
    after = centrality_pair(apply_modification(graph, mod), profile)
    return ModEffect(before=before, after=after)


def resolvent_inverse(graph: WeightedDigraph, profile: StubbornProfile) -> np.ndarray:
    """Inverse of ``I - (I-B)W``, reused for bulk exact delta evaluation."""
    A = np.eye(graph.n) - (1.0 - profile.beta)[:, None] * graph.weights
    return np.linalg.inv(A)

def exact_delta_pair(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    mod: EdgeModification,
    a_inv: Optional[np.ndarray] = None,
) -> tuple[float, float]:
    """Exact (Δc_s1, Δc_s2) via a rank-one update of the resolvent.

    The modification changes only row b of the system matrix, so the new
    inverse follows from the Sherman–Morrison identity; no approximation is
    involved. Falls back to plain solves if the update denominator degenerates.
    """
    if a_inv is None:
        a_inv = resolvent_inverse(graph, profile)
    n = graph.n
    s1, s2 = profile.s1, profile.s2
    coef = (1.0 - profile.beta[mod.b]) * mod.w
    denom = 1.0 + coef * (a_inv[mod.d, mod.b] - a_inv[mod.a, mod.b])
    if abs(denom) < 1e-12:
        eff = verify_mod_effect(graph, profile, mod)
        return eff.delta_s1, eff.delta_s2
    colsum = a_inv.sum(axis=0)
    out = []
    for s in (s1, s2):
        q_as = coef * (a_inv[mod.d, s] - a_inv[mod.a, s])
        delta_colsum = -colsum[mod.b] * q_as / denom
        out.append(profile.beta[s] * delta_colsum / n)
    return float(out[0]), float(out[1])


def enumerate_modifications(
    graph: WeightedDigraph, w_fraction: float = 0.5
) -> list[EdgeModification]:
    """All syntactically valid (a, b, d) triples with w = w_fraction * w_bd."""
    if not (0.0 < w_fraction < 1.0):
        raise ModificationError("w_fraction must lie strictly between 0 and 1")
    mods = []
    n = graph.n
    for b in range(n):
        for d in sorted(graph.in_neighbours(b)):
            if d == b:
                continue
            w = float(w_fraction * graph.weights[b, d])
            for a in range(n):
                if a in (b, d):
                    continue
                mods.append(EdgeModification(a=a, b=b, d=d, w=w))
    mods.sort(key=lambda mo: mo.key)
    return mods


def find_useful_mods(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    target: int,
    w_fraction: float = 0.5,
    context: Optional[CertificationContext] = None,
) -> list[ModificationVerdict]:
    """Every permissible modification certified useful for ``target``,
    in lexicographic (a, b, d) order."""
    ctx = context or CertificationContext(graph, profile)
    found = []
    for mod in enumerate_modifications(graph, w_fraction):
        if not ctx.permissible(mod):
            continue
        v = classify_useful(graph, profile, mod, target, context=ctx)
        if v.verdict == USEFUL:
            found.append(v)
    return found


@dataclass(frozen=True)
class PlanStep:
    mod: EdgeModification
    condition: str
    m: Optional[int]
    c_s1: float
    c_s2: float
    delta_target: float


@dataclass(frozen=True)
class PlanResult:
    target: int
    achieved_flip: bool
    reason: str
    initial: tuple[float, float]
    final: tuple[float, float]
    steps: tuple[PlanStep, ...]
    final_graph: WeightedDigraph


def plan_sequence(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    target: int,
    max_steps: int = 200,
    w_fraction: float = 0.5,
    include_indeterminate: bool = False,
) -> PlanResult:
    """Greedy monotone plan lifting ``target``'s centrality above one half.

    Each step applies the certified-useful modification with the largest
    exact centrality gain (ties broken by smallest (a, b, d)). With
    ``include_indeterminate`` the candidate pool widens to every permissible
    modification whose measured gain is positive — the certificate label of
    such steps is recorded as ``"oracle"``.
    """
    if target not in (profile.s1, profile.s2):
        raise GraphError(f"target {target} is not a stubborn agent")
    tgt_idx = 0 if target == profile.s1 else 1
    g = graph
    initial = centrality_pair(g, profile)
    current = initial
    steps: list[PlanStep] = []
    reason = "max_steps"
    for _ in range(max_steps):
        if current[tgt_idx] > 0.5:
            reason = "flipped"
            break
        ctx = CertificationContext(g, profile)
        a_inv = resolvent_inverse(g, profile)
        best: Optional[tuple[float, EdgeModification, str, Optional[int]]] = None
        for mod in enumerate_modifications(g, w_fraction):
            if not ctx.permissible(mod):
                continue
            verdict = classify_useful(g, profile, mod, target, context=ctx)
            if verdict.verdict == USEFUL:
                label, m_wit = verdict.condition, verdict.m
            elif include_indeterminate:
                label, m_wit = "oracle", None
            else:
                continue
            delta = exact_delta_pair(g, profile, mod, a_inv)[tgt_idx]
            if delta <= 0.0:
                continue
            key = (-delta, mod.key)
            if best is None or key < (-best[0], best[1].key):
                best = (delta, mod, label, m_wit)
        if best is None:
            reason = "no_useful_modification"
            break
        delta, mod, label, m_wit = best
        g = apply_modification(g, mod)
        current = centrality_pair(g, profile)
        steps.append(
            PlanStep(
                mod=mod,
                condition=label,
                m=m_wit,
                c_s1=current[0],
                c_s2=current[1],
                delta_target=delta,
            )
        )
    else:
        reason = "max_steps"
    if current[tgt_idx] > 0.5:
        reason = "flipped"
    return PlanResult(
        target=target,
        achieved_flip=current[tgt_idx] > 0.5,
        reason=reason,
        initial=initial,
        final=current,
        steps=tuple(steps),
        final_graph=g,
    )
