"""Row-stochastic weighted digraphs, stubborn-agent profiles, and edge modifications.

The weight matrix is stored agent-major: ``weights[i][j]`` is the weight agent
``i`` places on agent ``j``'s opinion, so an edge in flow orientation
``j -> i`` (information travels from j to i) exists iff ``weights[i][j] > 0``.
All public APIs that talk about edges use the flow orientation ``(frm, to)``
and convert internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import GraphError, ModificationError

#: Tolerance on |row sum - 1| before a row counts as non-stochastic.
ROW_SUM_TOL = 1e-9


def _as_weight_matrix(weights) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise GraphError(f"weight matrix must be square, got shape {w.shape}")
    if w.shape[0] < 1:
        raise GraphError("graph needs at least one node")
    if not np.all(np.isfinite(w)):
        raise GraphError("weight matrix contains non-finite entries")
    w = w.copy()
    w.flags.writeable = False
    return w


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Immutable weighted digraph on nodes ``0..n-1``.

    Construction only checks shape and finiteness; stochasticity and
    connectivity problems are surfaced by :func:`validate` so that broken
    inputs can be loaded, inspected, and reported rather than rejected
    blindly.
    """

    weights: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _as_weight_matrix(self.weights))

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    def has_edge(self, frm: int, to: int) -> bool:
        """True iff the flow edge ``frm -> to`` is present."""
        return self.weights[to, frm] > 0.0

    def weight(self, frm: int, to: int) -> float:
        """Weight of the flow edge ``frm -> to`` (0.0 when absent)."""
        return float(self.weights[to, frm])

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Yield ``(frm, to, weight)`` triples sorted by ``(frm, to)``."""
        to_idx, frm_idx = np.nonzero(self.weights > 0.0)
        order = np.lexsort((to_idx, frm_idx))
        for k in order:
            yield int(frm_idx[k]), int(to_idx[k]), float(self.weights[to_idx[k], frm_idx[k]])

    def in_neighbours(self, i: int) -> set[int]:
        """Nodes j with a flow edge j -> i (j may equal i for a self-loop)."""
        return {int(j) for j in np.nonzero(self.weights[i] > 0.0)[0]}

    def out_neighbours(self, i: int) -> set[int]:
        """Nodes j with a flow edge i -> j."""
        return {int(j) for j in np.nonzero(self.weights[:, i] > 0.0)[0]}


def in_neighbours(graph: WeightedDigraph, i: int) -> set[int]:
    """Module-level alias for :meth:`WeightedDigraph.in_neighbours`."""
    return graph.in_neighbours(i)


def _strongly_connected(adj: np.ndarray) -> bool:
    # Two BFS sweeps (forward and transposed) from node 0.
    n = adj.shape[0]
    for mat in (adj, adj.T):
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = [0]
        while frontier:
            nxt: list[int] = []
            for v in frontier:
                for u in np.nonzero(mat[v])[0]:
                    if not seen[u]:
                        seen[u] = True
                        nxt.append(int(u))
            frontier = nxt
        if not seen.all():
            return False
    return True


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`; empty ``problems`` means the graph is sound."""

    problems: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.problems


def validate(graph: WeightedDigraph) -> ValidationReport:
    """Check row-stochasticity, weight positivity, and strong connectivity.

    Row sums may deviate from 1 by at most ``ROW_SUM_TOL``. Negative entries
    are reported individually. Strong connectivity is evaluated on the
    positive-entry adjacency structure.
    """
    w = graph.weights
    problems: list[str] = []
    for i, (row_sum, row) in enumerate(zip(w.sum(axis=1), w)):
        if abs(row_sum - 1.0) > ROW_SUM_TOL:
            problems.append(f"row {i} sums to {row_sum!r}, expected 1 within {ROW_SUM_TOL}")
        for j in np.nonzero(row < 0.0)[0]:
            problems.append(f"weight [{i}][{int(j)}] is negative ({row[j]!r})")
    adj = w > 0.0
    # A row of all zeros already fails stochasticity; connectivity still checked.
    if not _strongly_connected(adj):
        problems.append("graph is not strongly connected")
    return ValidationReport(tuple(problems))


def normalized(graph: WeightedDigraph) -> WeightedDigraph:
    """Return a copy with every row rescaled to sum to 1.

    Rows that sum to zero are left untouched (they will still fail
    :func:`validate`).
    """
    w = graph.weights.copy()
    sums = w.sum(axis=1)
    nonzero = sums > 0.0
    w[nonzero] = w[nonzero] / sums[nonzero, None]
    return WeightedDigraph(w)


@dataclass(frozen=True)
class StubbornProfile:
    """Two competing stubborn agents with their stubbornness coefficients.

    ``beta`` holds the diagonal of the stubbornness matrix: zero everywhere
    except at ``s1`` and ``s2``, whose entries lie in ``(0, 1]``. Competition
    analyses (centrality comparisons, certificates) additionally require the
    open interval; :meth:`require_competition` enforces that.
    """

    beta: np.ndarray
    s1: int
    s2: int

    def __post_init__(self) -> None:
        b = np.asarray(self.beta, dtype=float).copy()
        if b.ndim != 1:
            raise GraphError("beta must be a vector")
        n = b.shape[0]
        if not (0 <= self.s1 < n and 0 <= self.s2 < n):
            raise GraphError("stubborn agent index out of range")
        if self.s1 == self.s2:
            raise GraphError("the two stubborn agents must be distinct")
        for s in (self.s1, self.s2):
            if not (0.0 < b[s] <= 1.0):
                raise GraphError(f"beta[{s}] = {b[s]!r} must lie in (0, 1]")
        others = np.delete(b, [self.s1, self.s2])
        if np.any(others != 0.0):
            raise GraphError("beta must be zero at non-stubborn agents")
        b.flags.writeable = False
        object.__setattr__(self, "beta", b)

    @property
    def n(self) -> int:
        return self.beta.shape[0]

    @classmethod
    def two_agent(cls, n: int, s1: int, beta1: float, s2: int, beta2: float) -> StubbornProfile:
        if not (0 <= s1 < n and 0 <= s2 < n):
            raise GraphError("stubborn agent index out of range")
        beta = np.zeros(n)
        beta[s1] = beta1
        beta[s2] = beta2
        return cls(beta, s1, s2)

    def require_competition(self) -> None:
        """Raise unless both stubbornness coefficients are strictly below 1."""
        for s in (self.s1, self.s2):
            if self.beta[s] >= 1.0:
                raise GraphError(
                    f"beta[{s}] = {self.beta[s]!r}: competition analyses need beta in (0, 1)"
                )


@dataclass(frozen=True)
class EdgeModification:
    """Shift ``w`` of node ``b``'s attention from in-edge ``d -> b`` to ``a -> b``.

    In matrix terms ``weights[b][a] += w`` and ``weights[b][d] -= w``, which
    keeps row ``b``'s total constant. The flow edge ``d -> b`` must already
    exist with weight strictly above ``w``; the edge ``a -> b`` is created or
    topped up.
    """

    a: int
    b: int
    d: int
    w: float

    def __post_init__(self) -> None:
        if len({self.a, self.b, self.d}) != 3:
            raise ModificationError(f"a, b, d must be three distinct nodes, got {(self.a, self.b, self.d)}")
        if not self.w > 0.0:
            raise ModificationError(f"modification weight must be positive, got {self.w!r}")

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.d)


def apply_modification(graph: WeightedDigraph, mod: EdgeModification) -> WeightedDigraph:
    """Return a new graph with ``mod`` applied; the input graph is untouched."""
    n = graph.n
    for name, node in (("a", mod.a), ("b", mod.b), ("d", mod.d)):
        if not (0 <= node < n):
            raise ModificationError(f"node {name}={node} out of range for n={n}")
    w_bd = graph.weights[mod.b, mod.d]
    if w_bd <= 0.0:
        raise ModificationError(f"flow edge {mod.d} -> {mod.b} does not exist")
    if mod.w >= w_bd:
        raise ModificationError(
            f"modification weight {mod.w!r} must stay below the donor weight {w_bd!r}"
        )
    new = graph.weights.copy()
    new[mod.b, mod.a] += mod.w
    new[mod.b, mod.d] -= mod.w
    return WeightedDigraph(new)
