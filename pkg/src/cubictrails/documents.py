"""Multi-section text bundles used to pipe documents between CLI commands.

A bundle is a sequence of named sections::

    [graph]
    2 3
    0 1
    ...
    [partition 1]
    0 (0) 1
    ...

Section bodies are the plain documents of the library (edge list, partition,
marking, trace, path collection). Input without any header is read as a bare
``[graph]`` section, and a JSON object mapping section names to bodies is
accepted as well, so ``--format json`` output can be piped back in.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import DocumentError
from .graph import CubicMultigraph, GeneralGraph, parse_edge_list, parse_general_graph, parse_graph6
from .marking import Marking
from .trails import TrailPartition

_HEADER = re.compile(r"^\[([A-Za-z0-9 _-]+)\]\s*$")


@dataclass
class Bundle:
    sections: dict[str, str] = field(default_factory=dict)

    def __contains__(self, name: str) -> bool:
        return name in self.sections

    def add(self, name: str, body: str) -> "Bundle":
        self.sections[name] = body if body.endswith("\n") or not body else body + "\n"
        return self

    def get(self, name: str) -> str:
        try:
            return self.sections[name]
        except KeyError:
            raise DocumentError(f"input has no [{name}] section") from None

    def numbered(self, prefix: str) -> list[str]:
        """Section names ``prefix``, ``prefix 1``, ``prefix 2``, ... in order of appearance."""
        return [k for k in self.sections if k == prefix or re.fullmatch(rf"{prefix} \d+", k)]

    # -- typed accessors -------------------------------------------------------

    def graph(self) -> CubicMultigraph:
        """The cubic graph; a lone graph6 token is accepted for simple graphs."""
        body = self.get("graph")
        rows = [ln.split("#", 1)[0].strip() for ln in body.splitlines()]
        rows = [r for r in rows if r]
        if len(rows) == 1 and len(rows[0].split()) == 1 and not rows[0].isdigit():
            return parse_graph6(rows[0])
        return parse_edge_list(body)

    def general_graph(self) -> GeneralGraph:
        return parse_general_graph(self.get("graph"))

    def partitions(self) -> list[TrailPartition]:
        return [TrailPartition.from_text(self.sections[k]) for k in self.numbered("partition")]

    def markings(self, g: CubicMultigraph) -> list[Marking]:
        return [Marking.from_text(g, self.sections[k]) for k in self.numbered("marking")]

    # -- serialization ---------------------------------------------------------

    def to_text(self) -> str:
        return "".join(f"[{name}]\n{body}" for name, body in self.sections.items())

    def to_json(self) -> str:
        return json.dumps(self.sections, indent=2) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Bundle":
        stripped = text.lstrip()
        if stripped.startswith("{"):
            try:
                data = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise DocumentError(f"bad JSON bundle: {exc}") from None
            if not isinstance(data, dict) or not all(isinstance(v, str) for v in data.values()):
                raise DocumentError("a JSON bundle maps section names to text")
            return cls(dict(data))
        out = cls()
        name, body = None, []
        for line in text.splitlines(keepends=True):
            m = _HEADER.match(line.strip())
            if m:
                if name is not None:
                    out.add(name, "".join(body))
                name, body = m.group(1).strip(), []
                if name in out:
                    raise DocumentError(f"section [{name}] appears twice")
            elif name is None:
                if line.split("#", 1)[0].strip():
                    name, body = "graph", [line]
            else:
                body.append(line)
        if name is not None:
            out.add(name, "".join(body))
        return out


def partition_sections(bundle: Bundle, partitions, names=None) -> Bundle:
    """Add ``[partition]`` for one partition, ``[partition 1]`` ... for several."""
    partitions = list(partitions)
    if names is None:
        names = ["partition"] if len(partitions) == 1 else [f"partition {i}" for i in range(1, len(partitions) + 1)]
    for name, p in zip(names, partitions):
        bundle.add(name, p.to_text())
    return bundle
