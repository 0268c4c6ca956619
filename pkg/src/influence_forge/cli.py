"""Command-line surface: validation, analysis, certification, planning.

Exit codes: 0 success, 1 domain errors (invalid graph, impermissible
modification, planner failure), 2 IO/schema errors. The environment
variable INFLUENCE_FORGE_SEED overrides any --seed option.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from pathlib import Path

import click

from .dynamics import influence_centrality
from .errors import GraphError, ModificationError, SchemaError
from .experiment import ExperimentConfig, plan_to_csv, plan_to_svg, resolve_target, run_flip_experiment
from .generate import generate_c1
from .graph import EdgeModification, StubbornProfile, validate
from .graph_io import GraphBundle, load_graph, save_graph
from .mods import classify_modification, plan_sequence, verify_mod_effect
from .sweep import weight_sweep
from .topology import classify_nodes, global_communicators, is_type_c1, level_distribution

SEED_ENV = "INFLUENCE_FORGE_SEED"


def _effective_seed(seed):
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SchemaError(f"{SEED_ENV} must be an integer, got {env!r}")
    return seed


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2))


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (SchemaError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except (GraphError, ModificationError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _load(graph_path: str, normalize: bool) -> GraphBundle:
    bundle = load_graph(graph_path, normalize=normalize)
    if normalize:
        click.echo("warning: rows renormalized to sum to 1", err=True)
    return bundle


def _parse_mod(text: str) -> EdgeModification:
    parts = text.split(",")
    if len(parts) != 4:
        raise SchemaError(f"--mod expects 'a,b,d,w', got {text!r}")
    try:
        a, b, d = (int(p) for p in parts[:3])
        w = float(parts[3])
    except ValueError:
        raise SchemaError(f"--mod expects three ints and a float, got {text!r}")
    try:
        return EdgeModification(a=a, b=b, d=d, w=w)
    except ModificationError as exc:
        raise SchemaError(f"--mod invalid: {exc}")


graph_option = click.option(
    "--graph", "graph_path", required=True, type=click.Path(), help="Graph JSON file."
)
normalize_option = click.option(
    "--normalize", is_flag=True, help="Renormalize rows that do not sum to 1."
)


@click.group()
def main() -> None:
    """Influence-centrality analysis of two competing stubborn agents."""


@main.command("validate")
@graph_option
@normalize_option
@handle_errors
def validate_cmd(graph_path: str, normalize: bool) -> None:
    """Check row-stochasticity, strong connectivity and the communicator property."""
    bundle = _load(graph_path, normalize)
    report = validate(bundle.graph)
    type_c1 = bool(report.ok and is_type_c1(bundle.graph))
    payload = {
        "ok": bool(report.ok),
        "problems": list(report.problems),
        "type_c1": type_c1,
        "global_communicators": global_communicators(bundle.graph) if report.ok else [],
    }
    _echo_json(payload)
    if not report.ok or not type_c1:
        sys.exit(1)


@main.command("centrality")
@graph_option
@normalize_option
@handle_errors
def centrality_cmd(graph_path: str, normalize: bool) -> None:
    """Influence centrality of every agent (nonzero only for the stubborn pair)."""
    bundle = _load(graph_path, normalize)
    c = influence_centrality(bundle.graph, bundle.profile)
    payload = {
        "c": [float(v) for v in c.values],
        "c_s1": c.of(bundle.profile.s1),
        "c_s2": c.of(bundle.profile.s2),
        "s1": bundle.profile.s1,
        "s2": bundle.profile.s2,
    }
    _echo_json(payload)


@main.command("topology")
@graph_option
@normalize_option
@click.option("--m", "m_opt", type=int, default=None, help="Global communicator to analyse (default: smallest).")
@handle_errors
def topology_cmd(graph_path: str, normalize: bool, m_opt) -> None:
    """Level distribution, T-labels and regions for a global communicator."""
    bundle = _load(graph_path, normalize)
    graph, profile = bundle.graph, bundle.profile
    comms = global_communicators(graph)
    if not comms:
        raise GraphError("graph has no global communicator (not type C1)")
    m = comms[0] if m_opt is None else m_opt
    if m not in comms:
        raise GraphError(f"node {m} is not a global communicator (candidates: {comms})")
    dist = level_distribution(graph, m)
    tc = classify_nodes(graph, m, profile.s1, profile.s2)
    payload = {
        "m": m,
        "levels": [list(level) for level in dist.levels],
        "labels": list(tc.label),
        "regions": list(tc.region),
        "u": tc.u,
        "v": tc.v,
        "low": tc.low,
        "high": tc.high,
        "t2_empty": tc.t2_empty,
        "global_communicators": comms,
    }
    _echo_json(payload)


@main.command("classify-mod")
@graph_option
@normalize_option
@click.option("--mod", "mod_text", required=True, help="Modification as 'a,b,d,w'.")
@click.option("--target", type=str, default=None, help="Agent the verdict should favour: s1, s2 or node index.")
@handle_errors
def classify_mod_cmd(graph_path: str, normalize: bool, mod_text: str, target) -> None:
    """Certify one modification as redundant/useful/indeterminate."""
    bundle = _load(graph_path, normalize)
    graph, profile = bundle.graph, bundle.profile
    mod = _parse_mod(mod_text)
    target_node = resolve_target(target, profile) if target is not None else None
    verdict = classify_modification(graph, profile, mod, target=target_node)
    effect = verify_mod_effect(graph, profile, mod)
    payload = {
        "a": mod.a,
        "b": mod.b,
        "d": mod.d,
        "w": mod.w,
        "verdict": verdict.verdict,
        "condition": verdict.condition,
        "target": verdict.target,
        "m": verdict.m,
        "c_s1": effect.after[0],
        "c_s2": effect.after[1],
        "delta_s1": effect.delta_s1,
        "delta_s2": effect.delta_s2,
        "verdicts_differ_across_m": verdict.verdicts_differ_across_m,
    }
    _echo_json(payload)


@main.command("plan")
@graph_option
@normalize_option
@click.option("--target", required=True, help="Agent to lift: s1, s2 or node index.")
@click.option("--max-steps", type=int, default=200, show_default=True)
@click.option("--w-fraction", type=float, default=0.5, show_default=True,
              help="Fraction of the donor weight moved per step.")
@click.option("--oracle-plan", is_flag=True,
              help="Also allow uncertified modifications that measurably help.")
@click.option("--out", "csv_path", type=click.Path(), default=None, help="Write the trace CSV here.")
@click.option("--svg", "svg_path", type=click.Path(), default=None, help="Write the trace chart here.")
@handle_errors
def plan_cmd(graph_path, normalize, target, max_steps, w_fraction, oracle_plan, csv_path, svg_path):
    """Greedy certified-monotone plan lifting the target's centrality past 1/2."""
    bundle = _load(graph_path, normalize)
    graph, profile = bundle.graph, bundle.profile
    target_node = resolve_target(target, profile)
    plan = plan_sequence(
        graph, profile, target_node,
        max_steps=max_steps, w_fraction=w_fraction, include_indeterminate=oracle_plan,
    )
    if csv_path:
        Path(csv_path).write_text(plan_to_csv(plan))
    if svg_path:
        Path(svg_path).write_text(plan_to_svg(plan, "modification plan", ("s1", "s2")))
    payload = {
        "target": plan.target,
        "achieved_flip": plan.achieved_flip,
        "reason": plan.reason,
        "initial": {"c_s1": plan.initial[0], "c_s2": plan.initial[1]},
        "final": {"c_s1": plan.final[0], "c_s2": plan.final[1]},
        "steps": [
            {
                "a": s.mod.a, "b": s.mod.b, "d": s.mod.d, "w": float(s.mod.w),
                "verdict": "useful", "condition": s.condition, "m": s.m,
                "c_s1": s.c_s1, "c_s2": s.c_s2,
            }
            for s in plan.steps
        ],
    }
    _echo_json(payload)
    if not plan.achieved_flip and plan.reason == "no_useful_modification":
        raise GraphError(
            "planner ran out of certified-useful modifications before the flip; "
            "try --oracle-plan or check the certificate prerequisites (self-loops "
            "at stubborn agents, target stubbornness below 1/2)"
        )


@main.command("sweep")
@graph_option
@normalize_option
@click.option("--mod", "mod_text", required=True, help="Modification as 'a,b,d,w'.")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=None)
@handle_errors
def sweep_cmd(graph_path, normalize, mod_text, trials, seed) -> None:
    """Re-randomize weights and stubbornness; confirm the verdict never breaks."""
    bundle = _load(graph_path, normalize)
    mod = _parse_mod(mod_text)
    report = weight_sweep(
        bundle.graph, bundle.profile, mod, trials=trials, seed=_effective_seed(seed)
    )
    payload = {
        "a": mod.a, "b": mod.b, "d": mod.d, "w": mod.w,
        "verdict": report.verdict.verdict,
        "condition": report.verdict.condition,
        "m": report.verdict.m,
        "trials": report.trials,
        "rows": len(report.rows),
        "min_delta_s1": report.min_delta_s1,
        "max_delta_s1": report.max_delta_s1,
        "min_delta_s2": report.min_delta_s2,
        "max_delta_s2": report.max_delta_s2,
        "verdict_agreement": dict(report.verdict_agreement),
        "sound": report.sound,
        "problems": list(report.problems),
    }
    _echo_json(payload)
    if not report.sound:
        sys.exit(1)


@main.command("generate")
@click.option("--n", type=int, required=True, help="Number of agents (>= 3).")
@click.option("--density", type=float, default=0.3, show_default=True,
              help="Probability of each optional forward edge.")
@click.option("--seed", type=int, default=None)
@click.option("--self-loop-prob", type=float, default=0.0, show_default=True)
@click.option("--s1", type=int, default=1, show_default=True)
@click.option("--s2", type=int, default=2, show_default=True)
@click.option("--beta1", type=float, default=0.5, show_default=True)
@click.option("--beta2", type=float, default=0.5, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@handle_errors
def generate_cmd(n, density, seed, self_loop_prob, s1, s2, beta1, beta2, out_path) -> None:
    """Generate a random strongly connected graph with a planted communicator."""
    gen = generate_c1(n, density, seed=_effective_seed(seed), self_loop_prob=self_loop_prob)
    profile = StubbornProfile.two_agent(n, s1, beta1, s2, beta2)
    save_graph(gen.graph, profile, out_path)
    payload = {
        "n": n,
        "hub": gen.hub,
        "layers": [list(layer) for layer in gen.layers],
        "edges": sum(1 for _ in gen.graph.edges()),
        "out": str(out_path),
    }
    _echo_json(payload)


@main.command("flip-experiment")
@click.option("--graph", "graph_path", type=click.Path(), default=None, help="Graph JSON file.")
@click.option("--generate-n", type=int, default=None, help="Generate an instance of this size instead.")
@click.option("--density", type=float, default=0.3, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--target", default="s2", show_default=True)
@click.option("--beta1", type=float, default=None, help="Override s1's stubbornness.")
@click.option("--beta2", type=float, default=None, help="Override s2's stubbornness.")
@click.option("--max-steps", type=int, default=200, show_default=True)
@click.option("--w-fraction", type=float, default=0.5, show_default=True)
@click.option("--oracle-plan", is_flag=True)
@click.option("--out-csv", type=click.Path(), required=True)
@click.option("--out-svg", type=click.Path(), required=True)
@handle_errors
def flip_experiment_cmd(graph_path, generate_n, density, seed, target, beta1, beta2,
                        max_steps, w_fraction, oracle_plan, out_csv, out_svg) -> None:
    """Plan modifications until the target agent dominates; write CSV + SVG."""
    config = ExperimentConfig(
        target=target,
        graph_path=Path(graph_path) if graph_path else None,
        generate_n=generate_n,
        density=density,
        seed=_effective_seed(seed),
        beta1=beta1,
        beta2=beta2,
        max_steps=max_steps,
        w_fraction=w_fraction,
        include_indeterminate=oracle_plan,
        csv_path=Path(out_csv),
        svg_path=Path(out_svg),
    )
    report = run_flip_experiment(config)
    plan = report.plan
    payload = {
        "achieved_flip": plan.achieved_flip,
        "reason": plan.reason,
        "steps": len(plan.steps),
        "initial": {"c_s1": plan.initial[0], "c_s2": plan.initial[1]},
        "final": {"c_s1": plan.final[0], "c_s2": plan.final[1]},
        "csv": str(out_csv),
        "svg": str(out_svg),
    }
    _echo_json(payload)
    if not plan.achieved_flip:
        raise GraphError(f"experiment did not flip the target ({plan.reason})")


if __name__ == "__main__":
    main()
