"""JSON and DOT serialization. Every writer is deterministic."""

from __future__ import annotations

import json
from collections.abc import Mapping
from itertools import combinations
from pathlib import Path
from typing import Any

from .communication import LocalState, parse_state
from .complex import ChromaticComplex, Vertex


def _state_to_json(state: Any) -> Any:
    if isinstance(state, LocalState):
        return state.canonical()
    return state


def _state_from_json(raw: Any) -> Any:
    if isinstance(raw, str):
        try:
            return parse_state(raw)
        except ValueError:
            return raw
    return raw


def complex_to_json(c: ChromaticComplex) -> dict:
    """``{"agents", "vertices", "facets", "carrier", "inputFacets"}``.

    ``carrier`` maps a facet index (as a string) to an index into ``inputFacets``.
    """
    data: dict[str, Any] = {
        "agents": list(c.agents),
        "vertices": [
            {"id": v.id, "color": v.color, "state": _state_to_json(v.state)} for v in c.vertices.values()
        ],
        "facets": [sorted(f) for f in c.facets],
    }
    if c.carrier is not None:
        targets = sorted(set(c.carrier), key=lambda f: tuple(sorted(f)))
        where = {f: k for k, f in enumerate(targets)}
        data["inputFacets"] = [sorted(f) for f in targets]
        data["carrier"] = {str(i): where[f] for i, f in enumerate(c.carrier)}
    return data


def complex_from_json(data: Mapping) -> ChromaticComplex:
    vertices = [Vertex(v["id"], v["color"], _state_from_json(v.get("state"))) for v in data["vertices"]]
    facets = [frozenset(f) for f in data["facets"]]
    carrier = None
    if data.get("carrier") is not None:
        targets = [frozenset(f) for f in data.get("inputFacets", [])]
        carrier = {facets[int(i)]: targets[k] for i, k in data["carrier"].items()}
    return ChromaticComplex(data["agents"], vertices, facets, carrier)


def dumps(data: Any) -> str:
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def write_json(path: str | Path, data: Any) -> None:
    Path(path).write_text(dumps(data))


def read_json(path: str | Path) -> Any:
    return json.loads(Path(path).read_text())


def save_complex(c: ChromaticComplex, path: str | Path) -> None:
    write_json(path, complex_to_json(c))


def load_complex(path: str | Path) -> ChromaticComplex:
    return complex_from_json(read_json(path))


def to_dot(c: ChromaticComplex, name: str = "dual") -> str:
    """Dual graph: one node per facet, one edge per pair of facets sharing a
    face, labeled with the colors of the shared face."""
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for i, row in enumerate(c.rows):
        label = "\\n".join(row)
        lines.append(f'  f{i} [label="{i}: {label}"];')
    pairs = set()
    for members in c.star.values():
        pairs.update(combinations(members, 2))
    for i, j in sorted(pairs):
        colors = "".join(sorted(c.colors(c.facets[i] & c.facets[j])))
        lines.append(f'  f{i} -- f{j} [label="{colors}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
