"""JSON persistence for graphs and stubbornness profiles.

Schema::

    {
      "n": 3,
      "edges": [{"from": 0, "to": 1, "weight": 1.0}, ...],
      "beta": [0.5, 0.5, 0.0],
      "stubborn": [0, 1],
      "x0": [1.0, 0.0, 0.0]          # optional
    }

"from"/"to" use flow orientation: information travels from "from" to "to",
so the weight lands in ``weights[to][from]``. Floats survive a round-trip
bit-exactly (JSON emits shortest-repr decimal strings).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import GraphError, SchemaError
from .graph import StubbornProfile, WeightedDigraph, normalized

PathLike = Union[str, Path]


@dataclass(frozen=True)
class GraphBundle:
    graph: WeightedDigraph
    profile: StubbornProfile
    x0: Optional[np.ndarray] = None


def _require(obj: dict, field: str, typ, where: str = "document"):
    if field not in obj:
        raise SchemaError(f"{where}: missing field {field!r}")
    value = obj[field]
    if typ is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{where}: field {field!r} must be a number, got {value!r}")
        return float(value)
    if typ is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaError(f"{where}: field {field!r} must be an integer, got {value!r}")
        return value
    if typ is list and not isinstance(value, list):
        raise SchemaError(f"{where}: field {field!r} must be a list")
    return value


def _float_list(values: list, n: int, field: str) -> np.ndarray:
    if len(values) != n:
        raise SchemaError(f"field {field!r} must have length n={n}, got {len(values)}")
    out = np.empty(n)
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SchemaError(f"field {field!r}[{i}] must be a number, got {v!r}")
        out[i] = float(v)
    return out


def parse_graph_document(doc: dict, normalize: bool = False) -> GraphBundle:
    """Build a :class:`GraphBundle` from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    n = _require(doc, "n", int)
    if n < 1:
        raise SchemaError(f"field 'n' must be positive, got {n}")
    edges = _require(doc, "edges", list)
    weights = np.zeros((n, n))
    for idx, edge in enumerate(edges):
        where = f"edges[{idx}]"
        if not isinstance(edge, dict):
            raise SchemaError(f"{where}: must be an object")
        frm = _require(edge, "from", int, where)
        to = _require(edge, "to", int, where)
        w = _require(edge, "weight", float, where)
        for name, node in (("from", frm), ("to", to)):
            if not (0 <= node < n):
                raise SchemaError(f"{where}: field {name!r}={node} out of range for n={n}")
        if w <= 0.0:
            raise SchemaError(f"{where}: field 'weight' must be positive, got {w!r}")
        if weights[to, frm] != 0.0:
            raise SchemaError(f"{where}: duplicate edge {frm} -> {to}")
        weights[to, frm] = w

    beta = _float_list(_require(doc, "beta", list), n, "beta")
    stubborn = _require(doc, "stubborn", list)
    if len(stubborn) != 2:
        raise SchemaError(f"field 'stubborn' must list exactly two agents, got {len(stubborn)}")
    for i, s in enumerate(stubborn):
        if isinstance(s, bool) or not isinstance(s, int) or not (0 <= s < n):
            raise SchemaError(f"field 'stubborn'[{i}] must be a node index in [0, {n}), got {s!r}")

    x0 = None
    if "x0" in doc:
        x0 = _float_list(_require(doc, "x0", list), n, "x0")

    graph = WeightedDigraph(weights)
    if normalize:
        graph = normalized(graph)
    try:
        profile = StubbornProfile(beta, int(stubborn[0]), int(stubborn[1]))
    except GraphError as exc:
        raise SchemaError(f"fields 'beta'/'stubborn' are inconsistent: {exc}") from exc
    return GraphBundle(graph=graph, profile=profile, x0=x0)


def load_graph(path: PathLike, normalize: bool = False) -> GraphBundle:
    """Load a graph bundle; raises :class:`SchemaError` with the offending field."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    return parse_graph_document(doc, normalize=normalize)


def graph_document(
    graph: WeightedDigraph, profile: StubbornProfile, x0: Optional[np.ndarray] = None
) -> dict:
    doc = {
        "n": graph.n,
        "edges": [
            {"from": frm, "to": to, "weight": float(w)} for frm, to, w in graph.edges()
        ],
        "beta": [float(b) for b in profile.beta],
        "stubborn": [profile.s1, profile.s2],
    }
    if x0 is not None:
        doc["x0"] = [float(v) for v in np.asarray(x0, dtype=float)]
    return doc


def save_graph(
    graph: WeightedDigraph,
    profile: StubbornProfile,
    path: PathLike,
    x0: Optional[np.ndarray] = None,
) -> None:
    doc = graph_document(graph, profile, x0)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
