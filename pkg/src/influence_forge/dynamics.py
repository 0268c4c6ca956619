"""Opinion dynamics with stubborn agents: updates, steady states, centrality.

The update rule is ``x(k+1) = (I - B) W x(k) + B x(0)`` with ``W`` the
row-stochastic weight matrix and ``B`` the diagonal matrix of stubbornness
coefficients. Diagnostic entry points accept any beta vector in ``[0, 1]``
(including all-ones, which pins every agent); centrality assumes the
two-stubborn-agent profile.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import ConvergenceError, GraphError
from .graph import StubbornProfile, WeightedDigraph

#: Residual bound enforced on closed-form steady states.
STEADY_STATE_TOL = 1e-10

BetaLike = Union[StubbornProfile, np.ndarray, Sequence[float]]


def _beta_vector(beta: BetaLike, n: int) -> np.ndarray:
    if isinstance(beta, StubbornProfile):
        b = beta.beta
    else:
        b = np.asarray(beta, dtype=float)
    if b.shape != (n,):
        raise GraphError(f"beta has shape {b.shape}, expected ({n},)")
    if np.any(b < 0.0) or np.any(b > 1.0):
        raise GraphError("beta entries must lie in [0, 1]")
    return b


@dataclass(frozen=True)
class OpinionState:
    """Opinion vector ``x`` after ``k`` updates from the initial profile ``x0``.

    ``k == -1`` marks a closed-form steady state rather than an iterate.
    """

    x: np.ndarray
    k: int
    x0: np.ndarray


@dataclass(frozen=True)
class SimulationResult:
    x: np.ndarray
    converged: bool
    iterations: int
    history: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class CentralityVector:
    """Influence centralities; zero at non-stubborn agents, summing to one."""

    values: np.ndarray

    def of(self, i: int) -> float:
        return float(self.values[i])


def _system_matrix(graph: WeightedDigraph, b: np.ndarray) -> np.ndarray:
    return np.eye(graph.n) - (1.0 - b)[:, None] * graph.weights


def step(graph: WeightedDigraph, beta: BetaLike, state: OpinionState) -> OpinionState:
    """Apply one synchronous opinion update."""
    b = _beta_vector(beta, graph.n)
    x_next = (1.0 - b) * (graph.weights @ state.x) + b * state.x0
    return OpinionState(x=x_next, k=state.k + 1, x0=state.x0)


def steady_state(graph: WeightedDigraph, beta: BetaLike, x0) -> OpinionState:
    """Closed-form fixed point ``x* = (I - (I-B)W)^-1 B x0``.

    Raises :class:`ConvergenceError` if the linear solve leaves a residual
    above ``STEADY_STATE_TOL`` (an invalid or degenerate input).
    """
    b = _beta_vector(beta, graph.n)
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (graph.n,):
        raise GraphError(f"x0 has shape {x0.shape}, expected ({graph.n},)")
    A = _system_matrix(graph, b)
    rhs = b * x0
    try:
        x = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"steady-state system is singular: {exc}") from exc
    residual = float(np.max(np.abs(A @ x - rhs)))
    if residual > STEADY_STATE_TOL:
        raise ConvergenceError(f"steady-state residual {residual:g} exceeds {STEADY_STATE_TOL:g}")
    return OpinionState(x=x, k=-1, x0=x0)


def simulate(
    graph: WeightedDigraph,
    beta: BetaLike,
    x0,
    tol: float = 1e-10,
    max_iter: int = 10**6,
    record_history: bool = True,
) -> SimulationResult:
    """Iterate the update rule until successive iterates differ by at most ``tol``.

    With ``max_iter == 0`` the initial profile is returned unconverged.
    """
    b = _beta_vector(beta, graph.n)
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (graph.n,):
        raise GraphError(f"x0 has shape {x.shape}, expected ({graph.n},)")
    x0 = x.copy()
    history = [x.copy()] if record_history else []
    converged = False
    iterations = 0
    for k in range(max_iter):
        x_next = (1.0 - b) * (graph.weights @ x) + b * x0
        if record_history:
            history.append(x_next.copy())
        iterations = k + 1
        if np.max(np.abs(x_next - x)) <= tol:
            x = x_next
            converged = True
            break
        x = x_next
    return SimulationResult(x=x, converged=converged, iterations=iterations, history=tuple(history))


def influence_centrality(graph: WeightedDigraph, beta: BetaLike) -> CentralityVector:
    """Average long-run weight each agent's initial opinion carries.

    ``c = P^T 1 / n`` with ``P = (I - (I-B)W)^-1 B``; computed via a single
    transposed solve. For a two-agent profile the entries are zero off the
    stubborn pair and sum to one.
    """
    b = _beta_vector(beta, graph.n)
    A = _system_matrix(graph, b)
    try:
        u = np.linalg.solve(A.T, np.ones(graph.n))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"centrality system is singular: {exc}") from exc
    c = b * u / graph.n
    total = float(c.sum())
    if not np.isfinite(total) or abs(total - 1.0) > 1e-8:
        raise ConvergenceError(f"centralities sum to {total!r}, expected 1")
    return CentralityVector(values=c)


def centrality_pair(graph: WeightedDigraph, profile: StubbornProfile) -> tuple[float, float]:
    """Influence centralities of the two stubborn agents, in profile order."""
    c = influence_centrality(graph, profile)
    return c.of(profile.s1), c.of(profile.s2)
