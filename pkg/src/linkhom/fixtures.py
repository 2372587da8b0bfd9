"""Access to the bundled fixture dataset (diagrams, biquandles, filtrations)."""

from __future__ import annotations

import json
from importlib import resources

from .algebra import Biquandle, BqMap, biquandle_from_json, map_from_tuple_1indexed
from .diagram import LinkDiagram, diagram_from_json

KINDS = ("biquandles", "diagrams", "filtrations", "endosets", "complexes")


def _load_json(kind: str, name: str) -> dict:
    package = resources.files("linkhom.data") / kind / f"{name}.json"
    try:
        return json.loads(package.read_text())
    except FileNotFoundError:
        raise KeyError(f"no bundled {kind[:-1]} named {name!r}") from None


def list_fixtures(kind: str) -> list[str]:
    if kind not in KINDS:
        raise KeyError(f"unknown fixture kind {kind!r}; expected one of {KINDS}")
    folder = resources.files("linkhom.data") / kind
    return sorted(
        entry.name[: -len(".json")]
        for entry in folder.iterdir()
        if entry.name.endswith(".json")
    )


def load_biquandle(name: str) -> Biquandle:
    return biquandle_from_json(_load_json("biquandles", name))


def load_diagram(name: str) -> LinkDiagram:
    return diagram_from_json(_load_json("diagrams", name))


def load_filtration(name: str) -> list[list[BqMap]]:
    data = _load_json("filtrations", name)
    return stages_from_json(data)


def stages_from_json(data: dict) -> list[list[BqMap]]:
    return [
        [map_from_tuple_1indexed(m) for m in stage] for stage in data["stages"]
    ]


def load_endoset(name: str) -> list[BqMap]:
    data = _load_json("endosets", name)
    return endoset_from_json(data)


def endoset_from_json(data) -> list[BqMap]:
    maps = data["maps"] if isinstance(data, dict) else data
    return [map_from_tuple_1indexed(m) for m in maps]


def load_complex_json(name: str) -> dict:
    return _load_json("complexes", name)
