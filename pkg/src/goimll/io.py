"""Line-based text formats for graphs and projects, plus DOT export.

Graph format (UTF-8, ``#`` starts a comment):

    vertices 1 2 3
    edge 1 2 0.5

Project files prefix the graph with a ``wager <decimal>`` line.  Decimals
are printed with 12 significant digits, which round-trips within the
package-wide tolerance.
"""

from __future__ import annotations

from .errors import FormatError
from .graphs import ColoredGraph, WeightedGraph
from .projects import Project


def _significant(x: float) -> str:
    return f"{x:.12g}"


def parse_graph(text: str) -> WeightedGraph:
    """Parse the textual graph format."""
    vertices: set[int] = set()
    edges: list[tuple[int, int, float]] = []
    saw_vertices = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices":
            saw_vertices = True
            try:
                vertices.update(int(tok) for tok in parts[1:])
            except ValueError:
                raise FormatError(f"line {lineno}: vertices must be integers") from None
        elif parts[0] == "edge":
            if len(parts) != 4:
                raise FormatError(f"line {lineno}: edge takes src dst weight")
            try:
                src, dst, weight = int(parts[1]), int(parts[2]), float(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: malformed edge line") from None
            edges.append((src, dst, weight))
        else:
            raise FormatError(f"line {lineno}: unknown directive {parts[0]!r}")
    if not saw_vertices:
        raise FormatError("missing 'vertices' line")
    try:
        return WeightedGraph.build(vertices, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_graph(g: WeightedGraph) -> str:
    lines = ["vertices " + " ".join(str(v) for v in sorted(g.vertices))]
    # canonical edge order: ids are not part of the format
    for src, dst, weight in sorted(g.edge_triples()):
        lines.append(f"edge {src} {dst} {_significant(weight)}")
    return "\n".join(lines) + "\n"


def parse_project(text: str) -> Project:
    """Parse a project file: a ``wager`` line, then the graph format."""
    wager = None
    graph_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.split()[0] == "wager":
            if wager is not None:
                raise FormatError(f"line {lineno}: duplicate wager line")
            parts = line.split()
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: wager takes one decimal")
            try:
                wager = float(parts[1])
            except ValueError:
                raise FormatError(f"line {lineno}: malformed wager") from None
        else:
            graph_lines.append(raw)
    if wager is None:
        raise FormatError("missing 'wager' line")
    try:
        return Project(wager, parse_graph("\n".join(graph_lines)))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_project(p: Project) -> str:
    return f"wager {_significant(p.wager)}\n" + write_graph(p.graph)


def to_dot(g: WeightedGraph | ColoredGraph, name: str = "G") -> str:
    """DOT export; colored graphs carry a color=0/1 attribute per arc."""
    if isinstance(g, ColoredGraph):
        graph, colors = g.graph, g.colors
    else:
        graph, colors = g, None
    lines = [f"digraph {name} {{"]
    for v in sorted(graph.vertices):
        lines.append(f"  {v};")
    for e in graph.edges:
        attrs = [f'label="{_significant(e.weight)}"']
        if colors is not None:
            attrs.append(f"color={colors[e.eid]}")
        lines.append(f"  {e.src} -> {e.dst} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
