"""Random generation of strongly connected digraphs with a planted hub.

The construction plants one node ``m`` whose removal leaves the rest of the
graph acyclic, which makes ``m`` a global communicator by construction: the
remaining nodes are arranged in layers, all non-hub edges point strictly
forward across layers, the hub feeds the first layer and collects from every
dead end. Extra forward edges are sprinkled in with a configurable density,
so density 0 with n = 3 degenerates to the directed triangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import GraphError
from .graph import StubbornProfile, WeightedDigraph


@dataclass(frozen=True)
class GeneratedGraph:
    graph: WeightedDigraph
    hub: int
    layers: tuple[tuple[int, ...], ...]


def _as_rng(seed: Optional[int | np.random.Generator]) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def generate_c1(
    n: int,
    extra_edge_density: float = 0.3,
    seed: Optional[int | np.random.Generator] = None,
    self_loop_prob: float = 0.0,
) -> GeneratedGraph:
    """Random strongly connected digraph on ``n >= 3`` nodes with a planted
    global communicator (node 0)."""
    if n < 3:
        raise GraphError(f"need at least 3 nodes, got {n}")
    if not (0.0 <= extra_edge_density <= 1.0):
        raise GraphError("extra_edge_density must lie in [0, 1]")
    rng = _as_rng(seed)
    hub = 0
    rest = np.arange(1, n)
    rng.shuffle(rest)

    q = int(rng.integers(min(2, n - 1), n - 1, endpoint=True))
    if q > 1:
        cuts = np.sort(rng.choice(np.arange(1, n - 1), size=q - 1, replace=False))
        bounds = np.concatenate(([0], cuts, [n - 1]))
    else:
        bounds = np.array([0, n - 1])
    layers = tuple(
        tuple(int(v) for v in rest[bounds[i] : bounds[i + 1]]) for i in range(len(bounds) - 1)
    )

    edges: set[tuple[int, int]] = set()
    for v in layers[0]:
        edges.add((hub, v))
    for i in range(1, len(layers)):
        for v in layers[i]:
            parent = int(rng.choice(layers[i - 1]))
            edges.add((parent, v))

    if extra_edge_density > 0.0:
        for i, layer in enumerate(layers):
            later = [v for l2 in layers[i + 1 :] for v in l2]
            for frm in layer:
                for to in later:
                    if (frm, to) not in edges and rng.random() < extra_edge_density:
                        edges.add((frm, to))
            for to in layer:  # hub may feed deeper layers too
                if i > 0 and (hub, to) not in edges and rng.random() < extra_edge_density:
                    edges.add((hub, to))
        for frm in range(1, n):
            if (frm, hub) not in edges and rng.random() < extra_edge_density:
                edges.add((frm, hub))

    out_degree = {v: 0 for v in range(n)}
    for frm, _ in edges:
        out_degree[frm] += 1
    for v in range(1, n):
        if out_degree[v] == 0:
            edges.add((v, hub))

    if self_loop_prob > 0.0:
        for v in range(n):
            if rng.random() < self_loop_prob:
                edges.add((v, v))

    weights = np.zeros((n, n))
    for frm, to in edges:
        weights[to, frm] = rng.uniform(0.05, 1.0)
    weights /= weights.sum(axis=1, keepdims=True)
    return GeneratedGraph(graph=WeightedDigraph(weights), hub=hub, layers=layers)


def redraw_weights(
    graph: WeightedDigraph, seed: Optional[int | np.random.Generator] = None
) -> WeightedDigraph:
    """Fresh random weights on the same sparsity pattern, rows renormalized."""
    rng = _as_rng(seed)
    mask = graph.weights > 0.0
    w = np.where(mask, rng.uniform(0.05, 1.0, size=graph.weights.shape), 0.0)
    sums = w.sum(axis=1, keepdims=True)
    if np.any(sums == 0.0):
        raise GraphError("graph has a node with no incoming flow edge")
    return WeightedDigraph(w / sums)


def random_profile(
    n: int,
    s1: int,
    s2: int,
    seed: Optional[int | np.random.Generator] = None,
    beta_range: tuple[float, float] = (0.05, 0.95),
) -> StubbornProfile:
    rng = _as_rng(seed)
    lo, hi = beta_range
    b1, b2 = rng.uniform(lo, hi, size=2)
    return StubbornProfile.two_agent(n, s1, float(b1), s2, float(b2))
