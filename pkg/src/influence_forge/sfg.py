"""Signal-flow-graph route to influence centrality.

The steady-state equations become a signal flow graph on n + 3 nodes: the n
opinion nodes, one source per stubborn agent injecting its initial opinion
(gain beta), and a sink O collecting the population average (gain 1/n from
every opinion node). After eliminating self-loops, the graph is reduced onto
{S1, S2, m, O} for a global communicator m; because every cycle passes
through m, the surviving branch gains are finite sums over the acyclic
remainder and yield the two centralities in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ConvergenceError, GraphError, NotTypeC1Error
from .graph import EdgeModification, StubbornProfile, WeightedDigraph


@dataclass(frozen=True)
class SignalFlowGraph:
    """Branch-gain matrix ``gains[i][j]`` for branch ``j -> i``.

    Opinion nodes are 0..n-1; the sources sit at ``n`` (S1) and ``n + 1``
    (S2); the sink O at ``n + 2``.
    """

    n: int
    gains: np.ndarray
    s1: int
    s2: int

    @property
    def source1(self) -> int:
        return self.n

    @property
    def source2(self) -> int:
        return self.n + 1

    @property
    def sink(self) -> int:
        return self.n + 2


def build_sfg(graph: WeightedDigraph, profile: StubbornProfile) -> SignalFlowGraph:
    """Assemble the flow graph of the steady-state equations."""
    profile.require_competition()
    n = graph.n
    if profile.n != n:
        raise GraphError("profile size does not match graph")
    g = np.zeros((n + 3, n + 3))
    g[:n, :n] = (1.0 - profile.beta)[:, None] * graph.weights
    g[profile.s1, n] = profile.beta[profile.s1]
    g[profile.s2, n + 1] = profile.beta[profile.s2]
    g[n + 2, :n] = 1.0 / n
    return SignalFlowGraph(n=n, gains=g, s1=profile.s1, s2=profile.s2)


def eliminate_self_loops(sfg: SignalFlowGraph) -> SignalFlowGraph:
    """Remove self-loop branches, rescaling each node's outgoing branches.

    A branch ``k -> k`` with gain ``g_kk`` is absorbed by multiplying every
    outgoing branch of ``k`` with ``1 / (1 - g_kk)``; path gains between other
    nodes are unchanged.
    """
    g = sfg.gains.copy()
    for k in range(sfg.n):
        loop = g[k, k]
        if loop == 0.0:
            continue
        if loop >= 1.0:
            raise GraphError(f"self-loop gain {loop!r} at node {k} is not contractive")
        g[k, k] = 0.0
        g[:, k] = g[:, k] / (1.0 - loop)
    return SignalFlowGraph(n=sfg.n, gains=g, s1=sfg.s1, s2=sfg.s2)


def _topological_order(gains: np.ndarray, nodes: list[int]) -> list[int]:
    keep = set(nodes)
    indeg = {v: 0 for v in nodes}
    for v in nodes:
        for u in np.nonzero(gains[:, v])[0]:
            u = int(u)
            if u in keep and u != v:
                indeg[u] += 1
    queue = sorted(v for v in nodes if indeg[v] == 0)
    order: list[int] = []
    while queue:
        v = queue.pop(0)
        order.append(v)
        for u in sorted(int(u) for u in np.nonzero(gains[:, v])[0]):
            if u in keep and u != v:
                indeg[u] -= 1
                if indeg[u] == 0:
                    queue.append(u)
    if len(order) != len(nodes):
        raise NotTypeC1Error("path-gain region contains a cycle; gains would diverge")
    return order


def direct_path_gain_sum(
    sfg: SignalFlowGraph, frm: int, to: int, avoid: Iterable[int] = ()
) -> float:
    """Sum of gains over all nonempty paths ``frm -> to`` whose interior
    avoids ``avoid`` (endpoints are exempt).

    The interior region must be acyclic, otherwise the sum diverges and
    :class:`NotTypeC1Error` is raised. Self-loops must have been eliminated.
    """
    g = sfg.gains
    total_nodes = sfg.n + 3
    if np.any(np.diagonal(g) != 0.0):
        raise GraphError("eliminate self-loops before summing path gains")
    banned = set(avoid) | {frm, to}
    interior = [v for v in range(total_nodes) if v not in banned]
    order = _topological_order(g, interior)
    # f[v] = sum of gains of paths frm -> v with interior inside `interior`
    f = np.zeros(total_nodes)
    for v in interior:
        f[v] = g[v, frm]
    for v in order:
        if f[v] == 0.0:
            continue
        for u in np.nonzero(g[:, v])[0]:
            u = int(u)
            if u in banned:
                continue
            f[u] += f[v] * g[u, v]
    result = float(g[to, frm])  # the length-1 path, when the branch exists
    for v in interior:
        if f[v] != 0.0 and g[to, v] != 0.0:
            result += float(f[v] * g[to, v])
    return result


@dataclass(frozen=True)
class ReducedGains:
    """Branch gains of the reduced flow graph on {S1, S2, m, O}."""

    m: int
    g_m_s1: float
    g_m_s2: float
    g_o_s1: float
    g_o_s2: float
    g_m_m: float
    g_o_m: float


def reduce(sfg: SignalFlowGraph, m: int) -> ReducedGains:
    """Reduce the (self-loop-free) flow graph onto {S1, S2, m, O}.

    Every branch gain is a finite path-gain sum because the opinion nodes
    other than ``m`` form an acyclic region in a C1 network.
    """
    if not (0 <= m < sfg.n):
        raise GraphError(f"communicator {m} out of range")
    s1, s2, o = sfg.source1, sfg.source2, sfg.sink
    return ReducedGains(
        m=m,
        g_m_s1=direct_path_gain_sum(sfg, s1, m, {m}),
        g_m_s2=direct_path_gain_sum(sfg, s2, m, {m}),
        g_o_s1=direct_path_gain_sum(sfg, s1, o, {m}),
        g_o_s2=direct_path_gain_sum(sfg, s2, o, {m}),
        g_m_m=direct_path_gain_sum(sfg, m, m, {m}),
        g_o_m=direct_path_gain_sum(sfg, m, o, {m}),
    )


def gain_centrality(reduced: ReducedGains) -> tuple[float, float]:
    """Influence centralities of the two stubborn agents from reduced gains."""
    denom = 1.0 - reduced.g_m_m
    if denom <= 0.0:
        raise ConvergenceError(f"communicator loop gain {reduced.g_m_m!r} is not contractive")
    through_m = reduced.g_o_m / denom
    c1 = reduced.g_m_s1 * through_m + reduced.g_o_s1
    c2 = reduced.g_m_s2 * through_m + reduced.g_o_s2
    return float(c1), float(c2)


def predicted_delta(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    m: int,
    mod: EdgeModification,
    source: int,
    sink: str,
) -> float:
    """Exact change a modification causes in one reduced source-branch gain.

    ``source`` selects the stubborn agent (1 or 2) and ``sink`` the branch
    endpoint (``"m"`` or ``"O"``). Because every surviving path uses the
    touched edges at most once, the change is linear in the shifted weight:

        K * (1 - beta_b) * w * (S_a / (1 - g_aa) - S_d / (1 - g_dd))

    with ``S_t`` the direct-path gain sum from the source to ``t`` and ``K``
    the direct-path gain sum from ``b`` to the sink. Requires that ``m`` is a
    global communicator of both the original and the modified graph.
    """
    if sink not in ("m", "O"):
        raise GraphError(f"sink must be 'm' or 'O', got {sink!r}")
    if source not in (1, 2):
        raise GraphError(f"source must be 1 or 2, got {source!r}")
    w_bd = graph.weights[mod.b, mod.d]
    if w_bd <= 0.0:
        raise GraphError(f"donor flow edge {mod.d} -> {mod.b} does not exist")
    if mod.w >= w_bd:
        raise GraphError("modification weight must stay below the donor weight")

    raw = build_sfg(graph, profile)
    bar = eliminate_self_loops(raw)
    src = bar.source1 if source == 1 else bar.source2

    def s_term(t: int) -> float:
        if t == m:
            return 0.0  # paths may not continue through the communicator
        return direct_path_gain_sum(bar, src, t, {m}) / (1.0 - raw.gains[t, t])

    if sink == "m":
        k_gain = 1.0 if mod.b == m else direct_path_gain_sum(bar, mod.b, m, {m})
    else:
        k_gain = 0.0 if mod.b == m else direct_path_gain_sum(bar, mod.b, bar.sink, {m})

    beta_b = profile.beta[mod.b]
    return float(k_gain * (1.0 - beta_b) * mod.w * (s_term(mod.a) - s_term(mod.d)))
