"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written against a different algorithmic route
than the library: centralities come from long opinion iterations instead of a
linear solve, reachability and cycle questions from exhaustive simple-path
enumeration instead of BFS/Kahn, and path-gain sums from brute-force
enumeration over the flow-graph branches instead of the topological-order
dynamic program.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from influence_forge import SignalFlowGraph, StubbornProfile, WeightedDigraph


# ---------------------------------------------------------------------------
# graph builders


def flow_graph(n: int, edges: Sequence[tuple], normalize: bool = True) -> WeightedDigraph:
    """Build a digraph from flow edges ``(frm, to[, weight])``.

    A flow edge frm -> to means ``to`` listens to ``frm``: weights[to][frm].
    """
    w = np.zeros((n, n))
    for edge in edges:
        frm, to = int(edge[0]), int(edge[1])
        w[to, frm] = float(edge[2]) if len(edge) == 3 else 1.0
    if normalize:
        sums = w.sum(axis=1, keepdims=True)
        sums[sums == 0.0] = 1.0
        w = w / sums
    return WeightedDigraph(w)


def ring(n: int) -> WeightedDigraph:
    """Directed cycle 0 -> 1 -> ... -> n-1 -> 0 with unit row weights."""
    return flow_graph(n, [(i, (i + 1) % n) for i in range(n)])


# ---------------------------------------------------------------------------
# dynamics oracles


def centrality_by_iteration(
    graph: WeightedDigraph, beta: np.ndarray, tol: float = 1e-13, max_iter: int = 500_000
) -> np.ndarray:
    """Influence centralities recovered from long opinion iterations.

    Node i's centrality is the limiting population mean when the initial
    profile is the i-th basis vector; no linear system is solved.
    """
    n = graph.n
    beta = np.asarray(beta, dtype=float)
    c = np.zeros(n)
    for i in range(n):
        x0 = np.zeros(n)
        x0[i] = 1.0
        x = x0.copy()
        for _ in range(max_iter):
            x_next = (1.0 - beta) * (graph.weights @ x) + beta * x0
            if np.max(np.abs(x_next - x)) <= tol:
                x = x_next
                break
            x = x_next
        c[i] = float(x.mean())
    return c


def absorption_vector(graph: WeightedDigraph, profile: StubbornProfile) -> np.ndarray:
    """h[v] = probability that the trust walk from v is absorbed at s2.

    At node u the walk stops with probability beta[u] (success iff u == s2)
    and otherwise moves to j with probability (1 - beta[u]) * w[u][j].
    """
    n = graph.n
    a = np.eye(n) - (1.0 - profile.beta)[:, None] * graph.weights
    rhs = np.zeros(n)
    rhs[profile.s2] = profile.beta[profile.s2]
    return np.linalg.solve(a, rhs)


# ---------------------------------------------------------------------------
# path / cycle enumeration oracles


def simple_paths(
    graph: WeightedDigraph, frm: int, to: int, banned: Iterable[int] = ()
) -> list[tuple[int, ...]]:
    """All simple paths frm -> to whose nodes after the start avoid ``banned``.

    Paths are nonempty node tuples including both endpoints; ``frm == to``
    enumerates the simple cycles through ``frm``.
    """
    banned = set(banned)
    if to in banned:
        return []
    adj = [sorted(graph.out_neighbours(v)) for v in range(graph.n)]
    found: list[tuple[int, ...]] = []

    def extend(v: int, path: list[int], seen: set[int]) -> None:
        for u in adj[v]:
            if u == to:
                found.append(tuple(path) + (u,))
                continue
            if u in seen or u in banned:
                continue
            extend(u, path + [u], seen | {u})

    extend(frm, [frm], {frm} if frm != to else set())
    return found


def simple_cycles(graph: WeightedDigraph) -> list[tuple[int, ...]]:
    """All simple cycles, self-loops excluded, each reported once."""
    out: list[tuple[int, ...]] = []
    for v in range(graph.n):
        for path in simple_paths(graph, v, v, banned=range(v)):
            if len(path) > 2:  # (v, v) is a self-loop
                out.append(path)
    return out


def communicators_by_cycles(graph: WeightedDigraph) -> list[int]:
    """Nodes lying on every simple cycle, found by exhaustive enumeration."""
    cycles = simple_cycles(graph)
    return [m for m in range(graph.n) if all(m in cycle for cycle in cycles)]


# ---------------------------------------------------------------------------
# flow-graph oracles


def brute_gain_sum(
    sfg: SignalFlowGraph, frm: int, to: int, avoid: Iterable[int] = ()
) -> float:
    """Path-gain sum by explicit enumeration of simple branch paths.

    Requires a self-loop-free gain matrix; interiors avoid ``avoid`` while the
    endpoints are exempt (a path may *end* at an avoided node).
    """
    gains = sfg.gains
    n_total = gains.shape[0]
    avoid = set(avoid)
    total = 0.0
    stack: list[tuple[int, float, frozenset[int]]] = [(frm, 1.0, frozenset([frm]))]
    while stack:
        v, acc, seen = stack.pop()
        for u in range(n_total):
            gain = gains[u, v]
            if gain <= 0.0:
                continue
            if u == to:
                total += acc * gain
                continue
            if u in avoid or u in seen:
                continue
            stack.append((u, acc * gain, seen | {u}))
    return total


# ---------------------------------------------------------------------------
# saturation-equality oracles
#
# With communicator m and the walk source fixed, the m-avoiding path-gain sum
# into a node obeys a closed-form upper bound. The bound is attained exactly
# when every m-avoiding route is forced through the base node and no other
# stubborn node can bleed gain out of the remaining branches; at the
# communicator itself the question devolves onto its in-neighbours.


def in_neighbours_no_self(graph: WeightedDigraph, v: int) -> list[int]:
    return [int(k) for k in np.nonzero(graph.weights[v] > 0.0)[0] if k != v]


def _reaches(graph: WeightedDigraph, frm: int, to: int, avoid: set[int]) -> bool:
    return bool(simple_paths(graph, frm, to, avoid))


def _all_paths_hit(graph: WeightedDigraph, frm: int, to: int, via: int) -> bool:
    if via in (frm, to):
        return True
    return not _reaches(graph, frm, to, {via})


def _no_stubborn_leak(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    target: int,
    avoid: set[int],
) -> bool:
    """No stubborn node outside ``avoid`` equals or reaches ``target`` in the
    graph minus ``avoid``."""
    for v in range(graph.n):
        if v in avoid:
            continue
        if profile.beta[v] > 0.0 and (
            v == target or _reaches(graph, v, target, avoid)
        ):
            return False
    return True


def source_saturation_equality(
    graph: WeightedDigraph, profile: StubbornProfile, m: int, s: int, e: int
) -> bool:
    """Exact condition for the source-to-e gain sum to attain its bound."""
    if e == s:
        return True
    if e == m:
        return all(
            k == s or source_saturation_equality(graph, profile, m, s, k)
            for k in in_neighbours_no_self(graph, m)
        )
    return _all_paths_hit(graph, m, e, s) and _no_stubborn_leak(
        graph, profile, e, {m, s}
    )


def ratio_saturation_equality(
    graph: WeightedDigraph, profile: StubbornProfile, m: int, e: int, f: int
) -> bool:
    """Exact condition for the e-to-f gain sum to attain its ratio bound."""
    if f == m:
        return all(
            k == e or ratio_saturation_equality(graph, profile, m, e, k)
            for k in in_neighbours_no_self(graph, m)
        )
    return _all_paths_hit(graph, m, f, e) and _no_stubborn_leak(
        graph, profile, f, {m, e}
    )


def source_saturation_bound(raw: SignalFlowGraph, profile: StubbornProfile, s: int, e: int) -> float:
    """Upper bound on the source-to-e gain sum, from raw (self-loop) gains."""
    g = raw.gains
    return float(profile.beta[s] * (1.0 - g[e, e]) / (1.0 - g[s, s]))


def ratio_saturation_bound(raw: SignalFlowGraph, e: int, f: int) -> float:
    """Upper bound on the e-to-f gain sum, from raw (self-loop) gains."""
    g = raw.gains
    return float((1.0 - g[f, f]) / (1.0 - g[e, e]))
