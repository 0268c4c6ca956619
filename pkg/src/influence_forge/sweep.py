"""Monte-Carlo confirmation that certificates are weight-independent.

A certificate speaks about a *topology*: the same verdict must hold no
matter how edge weights, the modified weight w, or the stubbornness pair are
redrawn. :func:`weight_sweep` hammers one modification with randomized
trials and reports whether the measured deltas ever contradict the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .generate import _as_rng, redraw_weights
from .graph import EdgeModification, StubbornProfile, WeightedDigraph
from .mods import (
    COND_COROLLARY1,
    CertificationContext,
    ModificationVerdict,
    REDUNDANT,
    USEFUL,
    classify_modification,
    exact_delta_pair,
    resolvent_inverse,
)

REDUNDANT_TOL = 1e-10

DEFAULT_W_FRACTIONS = (0.1, 0.5, 0.9)


@dataclass(frozen=True)
class SweepRow:
    trial: int
    w_fraction: float
    w: float
    beta_s1: float
    beta_s2: float
    c_s1_before: float
    c_s2_before: float
    delta_s1: float
    delta_s2: float

    @property
    def c_s1_after(self) -> float:
        return self.c_s1_before + self.delta_s1

    @property
    def c_s2_after(self) -> float:
        return self.c_s2_before + self.delta_s2


@dataclass(frozen=True)
class SweepReport:
    mod: EdgeModification
    verdict: ModificationVerdict
    trials: int
    rows: tuple[SweepRow, ...]
    verdict_agreement: tuple[tuple[str, int], ...]
    min_delta_s1: float
    max_delta_s1: float
    min_delta_s2: float
    max_delta_s2: float
    problems: tuple[str, ...]

    @property
    def sound(self) -> bool:
        return not self.problems


def _verdict_key(v: ModificationVerdict) -> str:
    if v.condition is None:
        return v.verdict
    return f"{v.verdict}:{v.condition}"


def weight_sweep(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    mod: EdgeModification,
    trials: int = 100,
    seed: Optional[int | np.random.Generator] = None,
    w_fractions: Sequence[float] = DEFAULT_W_FRACTIONS,
    reclassify: bool = True,
) -> SweepReport:
    """Redraw weights and stubbornness ``trials`` times and measure the
    modification under each ``w_fraction`` of the redrawn donor weight.

    The base verdict is computed once on the input graph. With
    ``reclassify`` each redrawn topology is classified again (the sparsity
    pattern is unchanged, so verdicts must agree; disagreement counts land
    in ``verdict_agreement``). Corollary-1 certificates are only valid when
    the favoured agent's stubbornness is at least one half, so those trials
    keep the redrawn beta inside the certified range.
    """
    rng = _as_rng(seed)
    base = classify_modification(graph, profile, mod)
    target_idx = None
    if base.verdict == USEFUL:
        target_idx = 0 if base.target == profile.s1 else 1

    rows: list[SweepRow] = []
    problems: list[str] = []
    agreement: dict[str, int] = {}
    for trial in range(trials):
        g = redraw_weights(graph, seed=rng)
        b1, b2 = rng.uniform(0.01, 0.99, size=2)
        if base.verdict == USEFUL and base.condition == COND_COROLLARY1:
            target_beta = rng.uniform(0.5, 0.99)
            if base.target == profile.s1:
                b1 = target_beta
            else:
                b2 = target_beta
        p = StubbornProfile.two_agent(graph.n, profile.s1, float(b1), profile.s2, float(b2))
        w_bd = g.weights[mod.b, mod.d]
        if reclassify:
            # same sparsity pattern, fresh weights; w rescaled to stay permissible
            v = classify_modification(
                g, p, EdgeModification(a=mod.a, b=mod.b, d=mod.d, w=0.5 * w_bd)
            )
            key = _verdict_key(v)
            agreement[key] = agreement.get(key, 0) + 1
        a_inv = resolvent_inverse(g, p)
        c_before = p.beta[[p.s1, p.s2]] * a_inv.sum(axis=0)[[p.s1, p.s2]] / graph.n
        for frac in w_fractions:
            trial_mod = EdgeModification(a=mod.a, b=mod.b, d=mod.d, w=frac * w_bd)
            d1, d2 = exact_delta_pair(g, p, trial_mod, a_inv)
            rows.append(
                SweepRow(
                    trial=trial,
                    w_fraction=float(frac),
                    w=trial_mod.w,
                    beta_s1=float(b1),
                    beta_s2=float(b2),
                    c_s1_before=float(c_before[0]),
                    c_s2_before=float(c_before[1]),
                    delta_s1=d1,
                    delta_s2=d2,
                )
            )
            if base.verdict == REDUNDANT and max(abs(d1), abs(d2)) >= REDUNDANT_TOL:
                problems.append(
                    f"trial {trial} w={trial_mod.w:.6g}: certified redundant but "
                    f"delta=({d1:.3e}, {d2:.3e})"
                )
            if base.verdict == USEFUL:
                delta_t = (d1, d2)[target_idx]
                if delta_t <= 0.0:
                    problems.append(
                        f"trial {trial} w={trial_mod.w:.6g}: certified useful for "
                        f"{base.target} but delta_target={delta_t:.3e}"
                    )

    deltas1 = [r.delta_s1 for r in rows]
    deltas2 = [r.delta_s2 for r in rows]
    return SweepReport(
        mod=mod,
        verdict=base,
        trials=trials,
        rows=tuple(rows),
        verdict_agreement=tuple(sorted(agreement.items())),
        min_delta_s1=min(deltas1) if rows else 0.0,
        max_delta_s1=max(deltas1) if rows else 0.0,
        min_delta_s2=min(deltas2) if rows else 0.0,
        max_delta_s2=max(deltas2) if rows else 0.0,
        problems=tuple(problems),
    )
