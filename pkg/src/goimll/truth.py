"""The success predicate and its structural consequences.

A successful project is the semantic image of a correct proof: zero
wager, and a simplified graph that is a disjoint union of weight-1
transpositions with no loops.  The predicate is checked clause by
clause; the characterization, the tensor decomposition, and the
counter-test construction follow the structure of the model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GoimllError
from .graphs import (
    SimpleGraph,
    WeightedGraph,
    graph_power,
    graph_trace,
    is_symmetric,
    simple_equal,
    simplify,
)
from .projects import Project, tensor

EXACT_TOL = 1e-12


@dataclass(frozen=True)
class SuccessVerdict:
    """Outcome of the success predicate with per-clause failure reasons."""

    successful: bool
    reasons: tuple[str, ...]


def is_successful(a: Project, allow_fixed_points: bool = False) -> SuccessVerdict:
    """Check the four success clauses on the simplified graph.

    ``allow_fixed_points`` drops the zero-trace clause, giving the weaker
    notion in which weight-1 loops are also accepted.
    """
    s = simplify(a.graph)
    reasons = []
    if abs(a.wager) > EXACT_TOL:
        reasons.append("wager != 0")
    if not is_symmetric(s, tol=EXACT_TOL):
        reasons.append("not symmetric")
    if not simple_equal(graph_power(s, 3), s, tol=EXACT_TOL):
        reasons.append("cube differs from graph")
    if not allow_fixed_points and abs(graph_trace(s)) > EXACT_TOL:
        reasons.append("trace != 0")
    return SuccessVerdict(not reasons, tuple(reasons))


def is_transposition_union(s: SimpleGraph) -> bool:
    """True iff the edges pair vertices into disjoint weight-1 symmetric
    pairs, with no loops and no vertex in two pairs."""
    partner: dict[int, int] = {}
    for (v, w), x in s.items():
        if v == w:
            return False
        if abs(x - 1.0) > EXACT_TOL:
            return False
        if abs(s.weight(w, v) - 1.0) > EXACT_TOL:
            return False
        if v in partner and partner[v] != w:
            return False
        partner[v] = w
    return all(partner.get(w) == v for v, w in partner.items())


@dataclass(frozen=True)
class TensorSplit:
    """Result of attempting to split a successful project across a cut of
    its carrier: either the two restricted parts, or a crossing edge with
    the counter-test project that witnesses the failure."""

    parts: tuple[Project, Project] | None = None
    crossing: tuple[int, int] | None = None
    counter_test: Project | None = None

    @property
    def split(self) -> bool:
        return self.parts is not None


def _restrict(g: WeightedGraph, keep: frozenset[int]) -> WeightedGraph:
    return WeightedGraph.build(
        keep, [(e.src, e.dst, e.weight) for e in g.edges if e.src in keep and e.dst in keep]
    )


def split_successful_tensor(f: Project, carrier_a, carrier_b) -> TensorSplit:
    """Decompose a successful project across a partition of its carrier.

    If no simplified edge crosses between the parts, returns the two
    restrictions (whose tensor is f).  Otherwise returns a crossing edge
    (v, w) together with the counter-test project: a nonzero wager and the
    single reversed edge of weight 1, whose interaction with f is
    infinite.
    """
    carrier_a = frozenset(carrier_a)
    carrier_b = frozenset(carrier_b)
    if carrier_a & carrier_b or (carrier_a | carrier_b) != f.carrier:
        raise GoimllError("carrier_a, carrier_b must partition the carrier of f")
    if not is_successful(f).successful:
        raise GoimllError("split_successful_tensor requires a successful project")
    s = simplify(f.graph)
    for (v, w), _ in s.items():
        if (v in carrier_a) != (w in carrier_a):
            counter = Project(1.0, WeightedGraph.build(f.carrier, [(w, v, 1.0)]))
            return TensorSplit(crossing=(v, w), counter_test=counter)
    a = Project(0.0, _restrict(f.graph, carrier_a))
    b = Project(0.0, _restrict(f.graph, carrier_b))
    assert tensor(a, b).carrier == f.carrier
    return TensorSplit(parts=(a, b))
