"""Text formats: lattices, morphisms, and a DOT subset for Hasse diagrams.

Lattice format (one object per file)::

    lattice C3
    elements 3
    labels 0 a 1
    covers
    0 1
    1 2
    end

``#`` starts a comment. ``emit_lattice`` writes the canonical form (covers
sorted), on which ``emit_lattice(parse_lattice(text)) == text``.

Morphism format::

    morphism f from C4 to C3
    map 0 0
    map 1 1
    ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import FormatError
from .order import FinitePoset

__all__ = [
    "parse_lattice",
    "emit_lattice",
    "read_lattice",
    "MorphismSpec",
    "parse_morphism",
    "emit_morphism",
    "to_dot",
    "parse_dot",
]


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_lattice(text: str) -> FinitePoset:
    """Parse the lattice text format into a poset (no lattice validation)."""
    name = None
    n = None
    labels = None
    covers = []
    state = "header"
    for lineno, tok in _lines(text):
        if state == "covers":
            if tok == ["end"]:
                state = "done"
                continue
            if len(tok) != 2 or not all(t.lstrip("-").isdigit() for t in tok):
                raise FormatError(f"line {lineno}: expected 'i j' cover pair", witness=lineno)
            covers.append((int(tok[0]), int(tok[1])))
            continue
        if state == "done":
            raise FormatError(f"line {lineno}: content after 'end'", witness=lineno)
        key = tok[0]
        if key == "lattice" and len(tok) == 2:
            name = tok[1]
        elif key == "elements" and len(tok) == 2 and tok[1].isdigit():
            n = int(tok[1])
        elif key == "labels":
            labels = tok[1:]
        elif key == "covers" and len(tok) == 1:
            state = "covers"
        else:
            raise FormatError(f"line {lineno}: unexpected {' '.join(tok)!r}", witness=lineno)
    if name is None or n is None:
        raise FormatError("missing 'lattice' or 'elements' line")
    if state != "done":
        raise FormatError("missing 'covers' block terminated by 'end'")
    if labels is not None and len(labels) != n:
        raise FormatError(f"'labels' lists {len(labels)} tokens for {n} elements")
    for i, j in covers:
        if not (0 <= i < n and 0 <= j < n):
            raise FormatError(f"cover ({i}, {j}) out of range")
    return FinitePoset.from_covers(n, covers, labels=labels, name=name)


def emit_lattice(poset: FinitePoset, name: str | None = None) -> str:
    out = [f"lattice {name or poset.name or 'L'}", f"elements {poset.n}"]
    if poset.labels is not None:
        out.append("labels " + " ".join(poset.labels))
    out.append("covers")
    out.extend(f"{i} {j}" for i, j in poset.covers)
    out.append("end")
    return "\n".join(out) + "\n"


def read_lattice(path) -> FinitePoset:
    return parse_lattice(Path(path).read_text())


@dataclass(frozen=True)
class MorphismSpec:
    name: str
    dom: str
    cod: str
    mapping: tuple[tuple[int, int], ...]


def parse_morphism(text: str) -> MorphismSpec:
    head = None
    pairs = []
    ended = False
    for lineno, tok in _lines(text):
        if ended:
            raise FormatError(f"line {lineno}: content after 'end'", witness=lineno)
        if head is None:
            if len(tok) != 6 or tok[0] != "morphism" or tok[2] != "from" or tok[4] != "to":
                raise FormatError(f"line {lineno}: expected 'morphism <name> from <A> to <B>'")
            head = (tok[1], tok[3], tok[5])
        elif tok == ["end"]:
            ended = True
        elif len(tok) == 3 and tok[0] == "map" and tok[1].isdigit() and tok[2].isdigit():
            pairs.append((int(tok[1]), int(tok[2])))
        else:
            raise FormatError(f"line {lineno}: expected 'map i j'", witness=lineno)
    if head is None:
        raise FormatError("missing morphism header")
    srcs = [i for i, _ in pairs]
    if len(set(srcs)) != len(srcs):
        raise FormatError("element mapped twice")
    return MorphismSpec(head[0], head[1], head[2], tuple(sorted(pairs)))


def emit_morphism(spec: MorphismSpec) -> str:
    out = [f"morphism {spec.name} from {spec.dom} to {spec.cod}"]
    out.extend(f"map {i} {j}" for i, j in sorted(spec.mapping))
    out.append("end")
    return "\n".join(out) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(poset: FinitePoset, name: str | None = None, labels=None) -> str:
    """Hasse diagram in DOT: one node per element, one edge per cover (lower -> upper)."""
    labels = labels or [poset.label(i) for i in range(poset.n)]
    out = [f"digraph {_quote(name or poset.name or 'L')} {{", "  rankdir=BT;"]
    out.extend(f"  n{i} [label={_quote(labels[i])}];" for i in range(poset.n))
    out.extend(f"  n{i} -> n{j};" for i, j in poset.covers)
    out.append("}")
    return "\n".join(out) + "\n"


_NODE = re.compile(r'^n(\d+)\s*\[label="((?:[^"\\]|\\.)*)"\];$')
_EDGE = re.compile(r"^n(\d+)\s*->\s*n(\d+);$")
_HEAD = re.compile(r'^digraph\s+"((?:[^"\\]|\\.)*)"\s*\{$')


def parse_dot(text: str) -> FinitePoset:
    """Read back the DOT subset written by :func:`to_dot`."""
    name = None
    nodes: dict[int, str] = {}
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line == "}" or line.startswith("rankdir"):
            continue
        if (m := _HEAD.match(line)) is not None:
            name = m.group(1).replace('\\"', '"').replace("\\\\", "\\")
        elif (m := _NODE.match(line)) is not None:
            nodes[int(m.group(1))] = m.group(2).replace('\\"', '"').replace("\\\\", "\\")
        elif (m := _EDGE.match(line)) is not None:
            edges.append((int(m.group(1)), int(m.group(2))))
        else:
            raise FormatError(f"unsupported DOT line: {line!r}")
    if name is None:
        raise FormatError("missing digraph header")
    n = len(nodes)
    if sorted(nodes) != list(range(n)):
        raise FormatError("node ids must be n0..n{k-1}")
    return FinitePoset.from_covers(n, edges, labels=[nodes[i] for i in range(n)], name=name)
