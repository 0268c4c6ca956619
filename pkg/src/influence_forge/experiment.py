"""End-to-end flip experiment: plan a modification sequence and emit reports.

The experiment takes one graph + stubbornness profile, runs the greedy
planner toward the chosen target agent, and writes the per-step centrality
trace as CSV plus a two-series SVG chart. Runs are deterministic: the same
config produces byte-identical outputs.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .charts import render_series_chart
from .errors import GraphError
from .generate import generate_c1, random_profile
from .graph import StubbornProfile, WeightedDigraph
from .graph_io import load_graph
from .mods import PlanResult, plan_sequence

CSV_COLUMNS = ("step", "a", "b", "d", "w", "c_s1", "c_s2")


@dataclass(frozen=True)
class ExperimentConfig:
    """Where the graph comes from, who competes, and what gets written.

    Exactly one of ``graph_path`` or ``generate_n`` must be set. Generated
    runs draw the profile too unless explicit betas are given.
    """

    target: str = "s2"  # "s1" | "s2" | node index as str
    graph_path: Optional[Path] = None
    generate_n: Optional[int] = None
    density: float = 0.3
    seed: Optional[int] = None
    s1: Optional[int] = None
    s2: Optional[int] = None
    beta1: Optional[float] = None
    beta2: Optional[float] = None
    max_steps: int = 200
    w_fraction: float = 0.5
    include_indeterminate: bool = False
    csv_path: Optional[Path] = None
    svg_path: Optional[Path] = None
    title: str = "influence flip experiment"
    series_labels: tuple[str, str] = ("s1", "s2")
    node_names: tuple[str, ...] = ()


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    plan: PlanResult
    csv_text: str
    svg_text: str

    @property
    def achieved_flip(self) -> bool:
        return self.plan.achieved_flip


def _resolve_inputs(config: ExperimentConfig) -> tuple[WeightedDigraph, StubbornProfile]:
    if (config.graph_path is None) == (config.generate_n is None):
        raise GraphError("config must set exactly one of graph_path / generate_n")
    if config.graph_path is not None:
        bundle = load_graph(config.graph_path)
        graph, profile = bundle.graph, bundle.profile
    else:
        rng = np.random.default_rng(config.seed)
        graph = generate_c1(config.generate_n, config.density, seed=rng).graph
        s1 = 1 if config.s1 is None else config.s1
        s2 = 2 if config.s2 is None else config.s2
        profile = random_profile(graph.n, s1, s2, seed=rng)
    if config.beta1 is not None or config.beta2 is not None:
        b1 = config.beta1 if config.beta1 is not None else float(profile.beta[profile.s1])
        b2 = config.beta2 if config.beta2 is not None else float(profile.beta[profile.s2])
        profile = StubbornProfile.two_agent(graph.n, profile.s1, b1, profile.s2, b2)
    return graph, profile


def resolve_target(target: str, profile: StubbornProfile) -> int:
    if target == "s1":
        return profile.s1
    if target == "s2":
        return profile.s2
    try:
        node = int(target)
    except ValueError:
        raise GraphError(f"target must be 's1', 's2', or a node index, got {target!r}")
    if node not in (profile.s1, profile.s2):
        raise GraphError(f"target node {node} is not one of the stubborn agents")
    return node


def plan_to_csv(plan: PlanResult) -> str:
    """Step 0 carries the initial centralities with empty modification fields."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerow([0, "", "", "", "", repr(float(plan.initial[0])), repr(float(plan.initial[1]))])
    for i, step in enumerate(plan.steps, start=1):
        writer.writerow(
            [i, step.mod.a, step.mod.b, step.mod.d, repr(float(step.mod.w)),
             repr(float(step.c_s1)), repr(float(step.c_s2))]
        )
    return buf.getvalue()


def plan_to_svg(plan: PlanResult, title: str, labels: tuple[str, str]) -> str:
    series_s1 = [plan.initial[0]] + [s.c_s1 for s in plan.steps]
    series_s2 = [plan.initial[1]] + [s.c_s2 for s in plan.steps]
    return render_series_chart([series_s1, series_s2], list(labels), title=title)


def run_flip_experiment(config: ExperimentConfig) -> ExperimentReport:
    graph, profile = _resolve_inputs(config)
    target = resolve_target(config.target, profile)
    plan = plan_sequence(
        graph,
        profile,
        target,
        max_steps=config.max_steps,
        w_fraction=config.w_fraction,
        include_indeterminate=config.include_indeterminate,
    )
    labels = config.series_labels
    if config.node_names:
        labels = (config.node_names[profile.s1], config.node_names[profile.s2])
    csv_text = plan_to_csv(plan)
    svg_text = plan_to_svg(plan, config.title, labels)
    if config.csv_path is not None:
        Path(config.csv_path).write_text(csv_text)
    if config.svg_path is not None:
        Path(config.svg_path).write_text(svg_text)
    return ExperimentReport(config=config, plan=plan, csv_text=csv_text, svg_text=svg_text)
