"""Line-oriented text formats for models, undirected graphs, and DAGs.

Every file starts with a ``vars:`` header naming the universe. Lines starting
with ``#`` and blank lines are ignored. Sets are written as comma-separated
labels without spaces, with ``-`` for the empty set.

Model file::

    vars: 1 2 3 4
    I 1 | - | 3
    I 2 | 1 | 4

Graph file::

    vars: a b c
    a -- b

DAG file::

    vars: 0 1 2
    0 -> 2
    1 -> 2
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .core import IndependencyModel, Triple, Universe
from .dag import Dag
from .ugraph import UndirectedGraph

_RESERVED_IN_LABELS = set(",|#")


class FormatError(ValueError):
    """A malformed input file; carries the source name and line number."""

    def __init__(self, message: str, *, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        prefix = ""
        if source is not None:
            prefix = f"{source}:"
        if line is not None:
            prefix += f"{line}:"
        if prefix:
            prefix += " "
        super().__init__(prefix + message)


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def _check_label(label: str, *, source: str | None, line: int | None) -> None:
    bad = (
        label == "-"
        or "--" in label
        or "->" in label
        or any(ch in _RESERVED_IN_LABELS or ch.isspace() for ch in label)
    )
    if bad:
        raise FormatError(f"label {label!r} is reserved or malformed", source=source, line=line)


def _parse_header(lines: Iterator[tuple[int, str]], *, source: str | None) -> Universe:
    try:
        lineno, content = next(lines)
    except StopIteration:
        raise FormatError("missing 'vars:' header", source=source) from None
    if not content.startswith("vars:"):
        raise FormatError("first line must be a 'vars:' header", source=source, line=lineno)
    labels = content[len("vars:"):].split()
    for label in labels:
        _check_label(label, source=source, line=lineno)
    try:
        return Universe(tuple(labels))
    except ValueError as exc:
        raise FormatError(str(exc), source=source, line=lineno) from None


def parse_set(universe: Universe, text: str, *, source: str | None = None, line: int | None = None) -> int:
    """A set written as comma-separated labels; ``-`` or empty text is the empty set."""
    text = text.strip()
    if text in ("", "-"):
        return 0
    mask = 0
    for label in text.split(","):
        label = label.strip()
        try:
            mask |= 1 << universe.index(label)
        except ValueError as exc:
            raise FormatError(str(exc), source=source, line=line) from None
    return mask


def format_set(universe: Universe, mask: int) -> str:
    labels = universe.labels_of(mask)
    return ",".join(labels) if labels else "-"


def parse_triple(universe: Universe, text: str, *, source: str | None = None, line: int | None = None) -> Triple:
    """A triple written ``<set> | <set> | <set>``."""
    parts = text.split("|")
    if len(parts) != 3:
        raise FormatError(
            f"expected '<set> | <set> | <set>', found {text!r}", source=source, line=line
        )
    a, c, b = (parse_set(universe, p, source=source, line=line) for p in parts)
    try:
        return Triple(a, c, b)
    except ValueError as exc:
        raise FormatError(str(exc), source=source, line=line) from None


def format_triple(universe: Universe, triple: Triple) -> str:
    return (
        f"{format_set(universe, triple.a)} | "
        f"{format_set(universe, triple.c)} | "
        f"{format_set(universe, triple.b)}"
    )


def parse_model(text: str, *, source: str | None = None) -> IndependencyModel:
    lines = _content_lines(text)
    universe = _parse_header(lines, source=source)
    triples: set[Triple] = set()
    for lineno, content in lines:
        if not content.startswith("I ") and content != "I":
            raise FormatError(
                f"expected 'I <set> | <set> | <set>', found {content!r}",
                source=source,
                line=lineno,
            )
        triple = parse_triple(universe, content[1:], source=source, line=lineno)
        if triple in triples:
            raise FormatError(
                f"duplicate triple 'I {format_triple(universe, triple)}'",
                source=source,
                line=lineno,
            )
        triples.add(triple)
    return IndependencyModel(universe, frozenset(triples))


def format_model(model: IndependencyModel) -> str:
    u = model.universe
    for label in u.names:
        _check_label(label, source=None, line=None)
    lines = ["vars: " + " ".join(u.names)]
    for t in sorted(model.triples, key=lambda t: (t.a, t.c, t.b)):
        lines.append(f"I {format_triple(u, t)}")
    return "\n".join(lines) + "\n"


def _parse_pair_lines(
    text: str, separator: str, *, source: str | None
) -> tuple[Universe, list[tuple[int, int]]]:
    lines = _content_lines(text)
    universe = _parse_header(lines, source=source)
    pairs: list[tuple[int, int]] = []
    for lineno, content in lines:
        parts = content.split(separator)
        if len(parts) != 2:
            raise FormatError(
                f"expected '<label> {separator} <label>', found {content!r}",
                source=source,
                line=lineno,
            )
        try:
            u = universe.index(parts[0].strip())
            v = universe.index(parts[1].strip())
        except ValueError as exc:
            raise FormatError(str(exc), source=source, line=lineno) from None
        if u == v:
            raise FormatError(f"self-loop at {parts[0].strip()!r}", source=source, line=lineno)
        pairs.append((u, v))
    return universe, pairs


def parse_graph(text: str, *, source: str | None = None) -> UndirectedGraph:
    universe, pairs = _parse_pair_lines(text, "--", source=source)
    edges: set[tuple[int, int]] = set()
    for u, v in pairs:
        edge = (u, v) if u < v else (v, u)
        if edge in edges:
            raise FormatError(
                f"duplicate edge {universe.names[u]} -- {universe.names[v]}", source=source
            )
        edges.add(edge)
    return UndirectedGraph(universe, frozenset(edges))


def format_graph(graph: UndirectedGraph) -> str:
    u = graph.universe
    for label in u.names:
        _check_label(label, source=None, line=None)
    lines = ["vars: " + " ".join(u.names)]
    for i, j in sorted(graph.edges):
        lines.append(f"{u.names[i]} -- {u.names[j]}")
    return "\n".join(lines) + "\n"


def parse_dag(text: str, *, source: str | None = None) -> Dag:
    universe, pairs = _parse_pair_lines(text, "->", source=source)
    arcs: set[tuple[int, int]] = set()
    for u, v in pairs:
        if (u, v) in arcs:
            raise FormatError(
                f"duplicate arc {universe.names[u]} -> {universe.names[v]}", source=source
            )
        arcs.add((u, v))
    try:
        return Dag(universe, frozenset(arcs))
    except ValueError as exc:
        raise FormatError(str(exc), source=source) from None


def format_dag(dag: Dag) -> str:
    u = dag.universe
    for label in u.names:
        _check_label(label, source=None, line=None)
    lines = ["vars: " + " ".join(u.names)]
    for i, j in sorted(dag.arcs):
        lines.append(f"{u.names[i]} -> {u.names[j]}")
    return "\n".join(lines) + "\n"


def load_model(path: str | Path) -> IndependencyModel:
    path = Path(path)
    return parse_model(path.read_text(), source=str(path))


def load_graph(path: str | Path) -> UndirectedGraph:
    path = Path(path)
    return parse_graph(path.read_text(), source=str(path))


def load_dag(path: str | Path) -> Dag:
    path = Path(path)
    return parse_dag(path.read_text(), source=str(path))
