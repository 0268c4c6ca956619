"""Structural analysis of C1 networks: communicators, levels, node classes.

A strongly connected digraph is of type C1 when some node m (a "global
communicator") lies on every cycle other than self-loops; equivalently,
removing m (and ignoring self-loops) leaves an acyclic graph. Relative to m
and the two stubborn agents, every node falls into one of four classes
depending on which stubborn agents reach it without going through m, and into
one of three concentric level regions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import GraphError, NotTypeC1Error
from .graph import WeightedDigraph, validate

T1, T2, T3, T4 = "T1", "T2", "T3", "T4"


def reachable_avoiding(
    graph: WeightedDigraph, frm: int, to: int, banned: Iterable[int] = ()
) -> bool:
    """True iff a nonempty walk ``frm -> ... -> to`` exists that never enters
    a banned node after the start. ``frm`` itself may be banned; ``to`` may not.
    """
    banned = set(banned)
    if to in banned:
        return False
    adj = graph.weights.T > 0.0  # adj[frm][to]
    seen = [False] * graph.n
    frontier = [v for v in np.nonzero(adj[frm])[0] if v not in banned]
    for v in frontier:
        seen[v] = True
    while frontier:
        nxt = []
        for v in frontier:
            if v == to:
                return True
            for u in np.nonzero(adj[v])[0]:
                if not seen[u] and u not in banned:
                    seen[u] = True
                    nxt.append(int(u))
        frontier = nxt
    return seen[to]


def _acyclic_without(graph: WeightedDigraph, m: int | None) -> bool:
    """Kahn's algorithm on the graph minus node m, self-loops ignored."""
    n = graph.n
    keep = [v for v in range(n) if v != m]
    adj = graph.weights.T > 0.0
    indeg = {v: 0 for v in keep}
    for frm in keep:
        for to in np.nonzero(adj[frm])[0]:
            if to != m and to != frm:
                indeg[int(to)] += 1
    queue = [v for v in keep if indeg[v] == 0]
    removed = 0
    while queue:
        v = queue.pop()
        removed += 1
        for to in np.nonzero(adj[v])[0]:
            if to != m and to != v:
                indeg[int(to)] -= 1
                if indeg[int(to)] == 0:
                    queue.append(int(to))
    return removed == len(keep)


def global_communicators(graph: WeightedDigraph) -> list[int]:
    """Nodes whose removal (ignoring self-loops) leaves an acyclic graph."""
    return [m for m in range(graph.n) if _acyclic_without(graph, m)]


def is_type_c1(graph: WeightedDigraph) -> bool:
    """True iff the graph is strongly connected with a global communicator."""
    report = validate(graph)
    if any("strongly connected" in p for p in report.problems):
        return False
    return bool(global_communicators(graph))


@dataclass(frozen=True)
class LevelDistribution:
    """Partition of the nodes by longest-path depth below the communicator.

    ``levels[0] == (m,)``; the in-neighbours of a node on level z all sit on
    levels 1..z-1 or at m itself, with at least one on level z-1.
    """

    m: int
    levels: tuple[tuple[int, ...], ...]
    level_of: tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.levels) - 1


def level_distribution(graph: WeightedDigraph, m: int) -> LevelDistribution:
    """Longest-path layering of the acyclic remainder under communicator ``m``.

    Raises :class:`NotTypeC1Error` when removing ``m`` leaves a cycle, and
    :class:`GraphError` when the layering violates the level axioms (which
    happens only on structurally broken inputs, e.g. a node with no
    in-neighbours at all).
    """
    n = graph.n
    if not (0 <= m < n):
        raise GraphError(f"communicator {m} out of range")
    adj = graph.weights.T > 0.0
    keep = [v for v in range(n) if v != m]
    indeg = {v: 0 for v in keep}
    children: dict[int, list[int]] = {v: [] for v in keep}
    for frm in keep:
        for to in np.nonzero(adj[frm])[0]:
            to = int(to)
            if to != m and to != frm:
                indeg[to] += 1
                children[frm].append(to)
    queue = [v for v in keep if indeg[v] == 0]
    level = {m: 0}
    order: list[int] = []
    while queue:
        v = queue.pop()
        order.append(v)
        for u in children[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                queue.append(u)
    if len(order) != len(keep):
        raise NotTypeC1Error(f"node {m} is not a global communicator: cycle persists without it")
    for v in order:
        parents = [u for u in graph.in_neighbours(v) if u != m and u != v]
        level[v] = 1 + max((level[u] for u in parents), default=0)

    q = max(level.values(), default=0)
    tiers = [tuple(sorted(v for v, z in level.items() if z == zz)) for zz in range(q + 1)]
    _check_level_axioms(graph, m, level)
    return LevelDistribution(
        m=m,
        levels=tuple(tiers),
        level_of=tuple(level[v] for v in range(n)),
    )


def _check_level_axioms(graph: WeightedDigraph, m: int, level: dict[int, int]) -> None:
    for v, z in level.items():
        if v == m:
            continue
        parents = {u for u in graph.in_neighbours(v) if u != v}
        if not parents:
            raise GraphError(f"node {v} has no in-neighbours; level axioms cannot hold")
        witness = False
        for u in parents:
            if level[u] >= z and u != m:
                raise GraphError(f"in-neighbour {u} of {v} sits on level {level[u]} >= {z}")
            if level[u] == z - 1:
                witness = True
        if not witness:
            raise GraphError(f"node {v} on level {z} has no in-neighbour on level {z - 1}")


def has_direct_path(graph: WeightedDigraph, m: int, frm: int, to: int) -> bool:
    """True iff a nonempty path ``frm -> to`` avoids the communicator ``m``.

    Self-reachability (``frm == to``) requires a cycle avoiding m, which a C1
    graph never has; the call is still answered rather than rejected.
    """
    if frm == m or to == m:
        raise GraphError("direct paths are defined between non-communicator nodes")
    return reachable_avoiding(graph, frm, to, {m})


def every_path_hits(graph: WeightedDigraph, frm: int, to: int, via: int) -> bool:
    """True iff every simple path ``frm -> to`` passes through ``via``.

    Endpoints count as being on the path, so ``via in (frm, to)`` is trivially
    true. With strong connectivity the check is never vacuous.
    """
    if via == frm or via == to:
        return True
    return not reachable_avoiding(graph, frm, to, {via})


@dataclass(frozen=True)
class TClassification:
    """Node classes and level regions for one communicator and agent pair.

    The stubborn agents are role-ordered so that ``low`` sits on level
    ``u <= v``, the level of ``high``; T1 collects nodes reachable from only
    ``low`` without crossing m, T2 those from only ``high``, T3 both, T4
    neither. By convention ``low in T1``, ``high in T2`` (unless ``high``
    itself is directly reachable from ``low``, which moves it and its
    followers to T3 and empties T2), and ``m in T3``.
    """

    m: int
    low: int
    high: int
    u: int
    v: int
    levels: LevelDistribution
    label: tuple[str, ...]
    region: tuple[int, ...]
    reach_low: frozenset[int]
    reach_high: frozenset[int]
    t2_empty: bool

    def nodes_labelled(self, lab: str) -> tuple[int, ...]:
        return tuple(i for i, l in enumerate(self.label) if l == lab)


def classify_nodes(graph: WeightedDigraph, m: int, s1: int, s2: int) -> TClassification:
    """Classify every node relative to communicator ``m`` and the agent pair."""
    if s1 == m or s2 == m:
        raise GraphError("a stubborn agent coinciding with the communicator is unsupported")
    if s1 == s2:
        raise GraphError("stubborn agents must be distinct")
    ld = level_distribution(graph, m)
    if ld.level_of[s1] <= ld.level_of[s2]:
        low, high = s1, s2
    else:
        low, high = s2, s1
    u, v = ld.level_of[low], ld.level_of[high]

    n = graph.n
    reach_low = frozenset({low} | {t for t in range(n) if t != m and reachable_avoiding(graph, low, t, {m})})
    reach_high = frozenset({high} | {t for t in range(n) if t != m and reachable_avoiding(graph, high, t, {m})})

    label = []
    for t in range(n):
        if t == m:
            label.append(T3)
        elif t in reach_low and t in reach_high:
            label.append(T3)
        elif t in reach_low:
            label.append(T1)
        elif t in reach_high:
            label.append(T2)
        else:
            label.append(T4)

    region = []
    for t in range(n):
        z = ld.level_of[t]
        region.append(1 if z < u else (2 if z < v else 3))

    return TClassification(
        m=m,
        low=low,
        high=high,
        u=u,
        v=v,
        levels=ld,
        label=tuple(label),
        region=tuple(region),
        reach_low=reach_low,
        reach_high=reach_high,
        t2_empty=high in reach_low,
    )
