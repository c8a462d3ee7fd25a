"""Finite directed weighted multigraphs and their interaction combinatorics.

Graphs live on concrete vertices (natural numbers): two graphs interact
exactly where their vertex sets overlap.  The operations here are the
combinatorial layer of the model: union, bicolored plugging, alternating
paths and circuits, and the (truncated) reduction whose edges are the
alternating paths between the two components.

Conventions:

* edge weights are IEEE doubles, strictly positive; base graphs keep them
  in (0, 1], but graphs rebuilt from simplified forms may exceed 1,
* edge ids are the contiguous integers 0..n-1; operations producing new
  graphs re-assign ids deterministically, so enumeration orders (always
  lexicographic over edge-id sequences) are reproducible,
* all values are immutable once constructed; every function is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Edge:
    """A directed weighted edge; ``eid`` is unique within its graph."""

    eid: int
    src: int
    dst: int
    weight: float


@dataclass(frozen=True)
class WeightedGraph:
    """A finite directed weighted multigraph.

    ``vertices`` may contain isolated vertices; this matters because the
    vertex set is the carrier through which graphs interact.
    """

    vertices: frozenset[int]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        for k, e in enumerate(self.edges):
            if e.eid != k:
                raise ValueError(f"edge ids must be 0..n-1 in order, got {e.eid} at {k}")
            if e.src not in self.vertices or e.dst not in self.vertices:
                raise ValueError(f"edge {e.eid} endpoint outside vertex set")
            if not (e.weight > 0.0 and math.isfinite(e.weight)):
                raise ValueError(f"edge {e.eid} weight must be positive and finite")

    @staticmethod
    def build(vertices: Iterable[int], edges: Iterable[tuple[int, int, float]] = ()) -> "WeightedGraph":
        """Construct from raw (src, dst, weight) triples, assigning ids in order."""
        vs = frozenset(int(v) for v in vertices)
        es = tuple(Edge(k, int(s), int(t), float(w)) for k, (s, t, w) in enumerate(edges))
        return WeightedGraph(vs, es)

    @staticmethod
    def empty(vertices: Iterable[int] = ()) -> "WeightedGraph":
        return WeightedGraph.build(vertices, ())

    def edge_triples(self) -> list[tuple[int, int, float]]:
        return [(e.src, e.dst, e.weight) for e in self.edges]


@dataclass(frozen=True)
class ColoredGraph:
    """A graph whose edges carry a color in {0, 1}: the plugging arena.

    ``colors[eid]`` gives the color of the edge with that id.
    """

    graph: WeightedGraph
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.colors) != len(self.graph.edges):
            raise ValueError("color map must be total on the edge set")
        if any(c not in (0, 1) for c in self.colors):
            raise ValueError("colors must be 0 or 1")

    def color(self, eid: int) -> int:
        return self.colors[eid]


class SimpleGraph:
    """A simple directed graph: at most one weighted edge per vertex pair.

    Weights are strictly positive; ``math.inf`` is representable (it can
    arise from an infinite family of parallel paths) and is what
    :func:`is_total` screens for.  Treat instances as immutable.
    """

    __slots__ = ("vertices", "weights")

    def __init__(self, vertices: Iterable[int], weights: Mapping[tuple[int, int], float]):
        self.vertices = frozenset(int(v) for v in vertices)
        wm = {}
        for (v, w), x in weights.items():
            if v not in self.vertices or w not in self.vertices:
                raise ValueError(f"weight entry ({v},{w}) outside vertex set")
            if not x > 0.0:
                raise ValueError(f"weight for ({v},{w}) must be positive")
            wm[(int(v), int(w))] = float(x)
        self.weights = wm

    def weight(self, v: int, w: int) -> float:
        return self.weights.get((v, w), 0.0)

    def items(self) -> list[tuple[tuple[int, int], float]]:
        return sorted(self.weights.items())

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.weights == other.weights

    def __repr__(self):
        return f"SimpleGraph({sorted(self.vertices)}, {dict(self.items())})"


@dataclass(frozen=True)
class Path:
    """A nonempty head-to-tail sequence of edges in some colored graph."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        if not self.edges:
            raise ValueError("a path has at least one edge")
        for a, b in zip(self.edges, self.edges[1:]):
            if b.src != a.dst:
                raise ValueError("consecutive edges must be head-to-tail")

    @property
    def source(self) -> int:
        return self.edges[0].src

    @property
    def target(self) -> int:
        return self.edges[-1].dst

    @property
    def weight(self) -> float:
        w = 1.0
        for e in self.edges:
            w *= e.weight
        return w

    def __len__(self) -> int:
        return len(self.edges)

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.eid for e in self.edges)

    def is_alternating(self, colored: ColoredGraph) -> bool:
        cs = [colored.color(e.eid) for e in self.edges]
        return all(a != b for a, b in zip(cs, cs[1:]))


@dataclass(frozen=True)
class Circuit:
    """An equivalence class of primitive alternating cycles under rotation.

    Stored via its canonical representative: the lexicographically least
    rotation (by edge-id sequence) among those starting with a 0-colored
    edge.  Lengths are always even.
    """

    edges: tuple[Edge, ...]
    weight: float

    def __len__(self) -> int:
        return len(self.edges)

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.eid for e in self.edges)


# ---------------------------------------------------------------------------
# construction


def union(g: WeightedGraph, h: WeightedGraph) -> WeightedGraph:
    """Union of vertex sets, disjoint union of edge multisets.

    Edge ids are freshened (g's edges first, then h's), so self-union
    yields genuine parallel copies.
    """
    return WeightedGraph.build(g.vertices | h.vertices, g.edge_triples() + h.edge_triples())


def plug(g: WeightedGraph, h: WeightedGraph) -> ColoredGraph:
    """The plugging of g and h: their union, edges colored by origin."""
    u = union(g, h)
    colors = (0,) * len(g.edges) + (1,) * len(h.edges)
    return ColoredGraph(u, colors)


def simplify(g: WeightedGraph) -> SimpleGraph:
    """Merge parallel edges, summing their weights."""
    acc: dict[tuple[int, int], float] = {}
    for e in g.edges:
        acc[(e.src, e.dst)] = acc.get((e.src, e.dst), 0.0) + e.weight
    return SimpleGraph(g.vertices, acc)


def as_multigraph(s: SimpleGraph) -> WeightedGraph:
    """Rebuild a one-edge-per-entry multigraph from a simple graph."""
    if not is_total(s):
        raise ValueError("cannot rebuild a multigraph from an infinite weight")
    return WeightedGraph.build(s.vertices, [(v, w, x) for (v, w), x in s.items()])


def is_total(s: SimpleGraph) -> bool:
    """True iff every weight is finite."""
    return all(math.isfinite(x) for x in s.weights.values())


# ---------------------------------------------------------------------------
# simple-graph algebra


def graph_trace(s: SimpleGraph) -> float:
    """Sum of loop weights."""
    return sum(x for (v, w), x in s.weights.items() if v == w)


def graph_power(s: SimpleGraph, k: int) -> SimpleGraph:
    """The graph of k-step paths of s, with summed path weights."""
    if k < 1:
        raise ValueError("k must be >= 1")
    acc = dict(s.weights)
    for _ in range(k - 1):
        nxt: dict[tuple[int, int], float] = {}
        for (v, x), a in acc.items():
            for (y, w), b in s.weights.items():
                if x == y:
                    nxt[(v, w)] = nxt.get((v, w), 0.0) + a * b
        acc = nxt
    return SimpleGraph(s.vertices, acc)


def is_symmetric(s: SimpleGraph, tol: float = DEFAULT_TOL) -> bool:
    """True iff weight(v, w) == weight(w, v) for all pairs, within tol."""
    for (v, w), x in s.weights.items():
        if abs(x - s.weight(w, v)) > tol:
            return False
    return True


def simple_equal(a: SimpleGraph, b: SimpleGraph, tol: float = DEFAULT_TOL) -> bool:
    """Same vertex set and same weight map within tol (keys must match)."""
    if a.vertices != b.vertices:
        return False
    if set(a.weights) != set(b.weights):
        return False
    return all(abs(x - b.weights[k]) <= tol for k, x in a.weights.items())


def graph_equal(a: WeightedGraph, b: WeightedGraph, tol: float = DEFAULT_TOL) -> bool:
    """Locative equality: same vertices and same (src, dst, weight) edge
    multisets within weight tolerance.  Edge ids are ignored."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    if a.vertices != b.vertices or len(a.edges) != len(b.edges):
        return False
    grouped_a: dict[tuple[int, int], list[float]] = {}
    grouped_b: dict[tuple[int, int], list[float]] = {}
    for e in a.edges:
        grouped_a.setdefault((e.src, e.dst), []).append(e.weight)
    for e in b.edges:
        grouped_b.setdefault((e.src, e.dst), []).append(e.weight)
    if set(grouped_a) != set(grouped_b):
        return False
    for key, ws in grouped_a.items():
        vs = grouped_b[key]
        if len(ws) != len(vs):
            return False
        # pairing sorted weight lists minimizes the maximum discrepancy
        if any(abs(x - y) > tol for x, y in zip(sorted(ws), sorted(vs))):
            return False
    return True


# ---------------------------------------------------------------------------
# alternating paths and circuits


def _out_edges(colored: ColoredGraph) -> dict[int, list[Edge]]:
    adj: dict[int, list[Edge]] = {v: [] for v in colored.graph.vertices}
    for e in colored.graph.edges:
        adj[e.src].append(e)
    for es in adj.values():
        es.sort(key=lambda e: e.eid)
    return adj


def _exists_path_of_length(colored: ColoredGraph, length: int) -> bool:
    """Whether some alternating path of exactly ``length`` edges exists.

    Dynamic programming over (vertex, last color) states: O(length * E).
    """
    if length < 1:
        return True
    adj = _out_edges(colored)
    frontier = {(e.dst, colored.color(e.eid)) for e in colored.graph.edges}
    for _ in range(length - 1):
        if not frontier:
            return False
        nxt = set()
        for v, c in frontier:
            for e in adj[v]:
                if colored.color(e.eid) != c:
                    nxt.add((e.dst, colored.color(e.eid)))
        frontier = nxt
    return bool(frontier)


def alternating_paths(
    g: WeightedGraph,
    h: WeightedGraph,
    sources: Iterable[int],
    targets: Iterable[int],
    max_len: int,
) -> list[Path]:
    """All alternating paths of length <= max_len in plug(g, h) from
    ``sources`` to ``targets``, in lexicographic edge-id order."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    sources = frozenset(sources)
    targets = frozenset(targets)
    colored = plug(g, h)
    adj = _out_edges(colored)
    out: list[Path] = []
    stack: list[Edge] = []

    def extend() -> None:
        tail = stack[-1]
        if tail.dst in targets:
            out.append(Path(tuple(stack)))
        if len(stack) == max_len:
            return
        last_color = colored.color(tail.eid)
        for e in adj[tail.dst]:
            if colored.color(e.eid) != last_color:
                stack.append(e)
                extend()
                stack.pop()

    for e in colored.graph.edges:  # ascending eid: global lexicographic order
        if e.src in sources:
            stack.append(e)
            extend()
            stack.pop()
    return out


def _rotations(edges: tuple[Edge, ...]) -> list[tuple[Edge, ...]]:
    return [edges[i:] + edges[:i] for i in range(len(edges))]


def _canonical_rotation(edges: tuple[Edge, ...], colored: ColoredGraph) -> tuple[Edge, ...]:
    # rotations starting with a 0-colored edge sit at even offsets
    best = None
    for i in range(0, len(edges), 2):
        if colored.color(edges[i].eid) != 0:
            continue
        rot = edges[i:] + edges[:i]
        key = tuple(e.eid for e in rot)
        if best is None or key < best[0]:
            best = (key, rot)
    assert best is not None
    return best[1]


def one_circuits(g: WeightedGraph, h: WeightedGraph, max_len: int) -> list[Circuit]:
    """All alternating 1-circuits of length <= max_len between g and h.

    A cycle is reported once, via its canonical representative, and only
    if primitive (not the power of a shorter cycle).
    """
    if max_len < 2 or max_len % 2 != 0:
        raise ValueError("max_len must be even and >= 2")
    colored = plug(g, h)
    adj = _out_edges(colored)
    found: dict[tuple[int, ...], Circuit] = {}
    stack: list[Edge] = []

    def close_if_cycle() -> None:
        first, last = stack[0], stack[-1]
        if last.dst != first.src:
            return
        if colored.color(last.eid) == colored.color(first.eid):
            return
        edges = tuple(stack)
        rots = _rotations(edges)
        if len(set(tuple(e.eid for e in r) for r in rots)) != len(edges):
            return  # a k-cycle with k > 1, not a 1-circuit
        canon = _canonical_rotation(edges, colored)
        key = tuple(e.eid for e in canon)
        if key not in found:
            w = 1.0
            for e in canon:
                w *= e.weight
            found[key] = Circuit(canon, w)

    def extend() -> None:
        if len(stack) >= 2 and len(stack) % 2 == 0:
            close_if_cycle()
        if len(stack) == max_len:
            return
        tail = stack[-1]
        last_color = colored.color(tail.eid)
        for e in adj[tail.dst]:
            if colored.color(e.eid) != last_color:
                stack.append(e)
                extend()
                stack.pop()

    for e in colored.graph.edges:
        if colored.color(e.eid) == 0:  # every alternating cycle has a 0-colored edge
            stack.append(e)
            extend()
            stack.pop()
    return [found[k] for k in sorted(found)]


def count_rotations(c: Circuit) -> int:
    """Number of distinct rotations of a circuit's representative."""
    return len(set(tuple(e.eid for e in r) for r in _rotations(c.edges)))


# ---------------------------------------------------------------------------
# reduction


def reduce_truncated(
    g: WeightedGraph, h: WeightedGraph, max_len: int
) -> tuple[WeightedGraph, bool]:
    """The reduction of g and h, truncated at path length ``max_len``.

    Returns ``(graph, truncated)``: one edge per alternating path with both
    endpoints in the symmetric difference of the vertex sets, plus a flag
    that is True when alternating paths of length max_len + 1 exist (so
    the enumeration may be incomplete).
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    symdiff = g.vertices ^ h.vertices
    paths = alternating_paths(g, h, symdiff, symdiff, max_len)
    graph = WeightedGraph.build(symdiff, [(p.source, p.target, p.weight) for p in paths])
    truncated = _exists_path_of_length(plug(g, h), max_len + 1)
    return graph, truncated
