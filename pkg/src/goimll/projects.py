"""Projects: wager-and-graph pairs, the proof objects of the model.

A project carries a nonnegative finite wager and a weighted graph; the
graph's vertex set is the project's carrier.  Interaction adds the two
wagers to the measurement of the graphs; orthogonality asks that this
value be neither zero nor infinite.  Cut consumes the shared part of the
carriers through graph reduction and absorbs the interaction into the
wager of the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CarrierError, CutUndefinedError, DelocationError, LocativityError
from .graphs import (
    SimpleGraph,
    WeightedGraph,
    graph_equal,
    reduce_truncated,
    union,
)
from .matrix import reduce_exact
from .measure import measure_exact

ZERO_TOL = 1e-9


@dataclass(frozen=True)
class Project:
    """A wager (nonnegative finite real) together with a weighted graph."""

    wager: float
    graph: WeightedGraph

    def __post_init__(self):
        if not (self.wager >= 0.0 and math.isfinite(self.wager)):
            raise ValueError("wager must be a nonnegative finite real")

    @property
    def carrier(self) -> frozenset[int]:
        return self.graph.vertices


class Delocation:
    """A finite injective relabelling of vertices.  Treat as immutable."""

    __slots__ = ("mapping",)

    def __init__(self, mapping: dict[int, int]):
        values = list(mapping.values())
        if len(set(values)) != len(values):
            raise DelocationError("delocation must be injective")
        self.mapping = {int(k): int(v) for k, v in mapping.items()}

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.mapping)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.mapping.values())


def interaction(a: Project, b: Project) -> float:
    """Wager sum plus exact graph measurement; requires equal carriers."""
    if a.carrier != b.carrier:
        raise CarrierError("interaction requires projects of the same carrier")
    return a.wager + b.wager + measure_exact(a.graph, b.graph).value


def interaction_raw(a: Project, b: Project) -> float:
    """The same quantity without the carrier restriction (used by cut)."""
    return a.wager + b.wager + measure_exact(a.graph, b.graph).value


def orthogonal(a: Project, b: Project, tol: float = ZERO_TOL) -> bool:
    """True iff the interaction is neither zero (within tol) nor infinite."""
    value = interaction(a, b)
    return not math.isinf(value) and abs(value) > tol


def tensor(a: Project, b: Project) -> Project:
    """Tensor of projects with disjoint carriers: add wagers, union graphs."""
    if a.carrier & b.carrier:
        raise CarrierError("tensor requires disjoint carriers")
    return Project(a.wager + b.wager, union(a.graph, b.graph))


def _adaptive_cap(f: Project, g: Project) -> int:
    # alternating walks without repeated (vertex, color) states are bounded
    # by twice the carrier size; beyond that only cyclic reducts remain
    n = len(f.carrier | g.carrier)
    return max(8, 2 * n + 2)


def cut(f: Project, g: Project, max_len: int | None = None) -> Project:
    """Cut of two projects: interaction becomes the wager, graphs reduce.

    The reduction is computed as a truncated multigraph, doubling the
    length bound until no truncation occurs, up to ``max_len`` or an
    adaptive cap.  Infinite reducts stay truncated at the cap; use
    :func:`cut_exact` for the exact simplified form.
    """
    value = interaction_raw(f, g)
    if math.isinf(value):
        raise CutUndefinedError("cut undefined: interaction is infinite")
    cap = max_len if max_len is not None else _adaptive_cap(f, g)
    length = min(4, cap)
    while True:
        graph, truncated = reduce_truncated(f.graph, g.graph, length)
        if not truncated or length >= cap:
            return Project(value, graph)
        length = min(2 * length, cap)


def cut_exact(f: Project, g: Project) -> tuple[float, SimpleGraph]:
    """Wager and exact simplified graph of the cut."""
    value = interaction_raw(f, g)
    if math.isinf(value):
        raise CutUndefinedError("cut undefined: interaction is infinite")
    return value, reduce_exact(f.graph, g.graph)


def delocate(a: Project, d: Delocation) -> Project:
    """Relabel the carrier of a project along an injective map."""
    missing = a.carrier - d.domain
    if missing:
        raise DelocationError(f"delocation does not cover carrier vertex {min(missing)}")
    graph = WeightedGraph.build(
        (d(v) for v in a.graph.vertices),
        [(d(e.src), d(e.dst), e.weight) for e in a.graph.edges],
    )
    return Project(a.wager, graph)


def fax(d: Delocation) -> Project:
    """The weight-1 bidirectional matching realizing a delocation.

    Requires the domain and image to be disjoint; the graph carries edges
    (v, d(v)) and (d(v), v) of weight 1 for every v in the domain.
    """
    overlap = d.domain & d.image
    if overlap:
        raise LocativityError(f"fax needs disjoint domain and image; vertex {min(overlap)} is in both")
    edges = []
    for v in sorted(d.domain):
        edges.append((v, d(v), 1.0))
        edges.append((d(v), v, 1.0))
    return Project(0.0, WeightedGraph.build(d.domain | d.image, edges))


def project_equal(a: Project, b: Project, tol: float = 1e-9) -> bool:
    """Equal wagers (within tol) and locatively equal graphs."""
    return abs(a.wager - b.wager) <= tol and graph_equal(a.graph, b.graph, tol)
