"""Interaction measurement between weighted graphs, by two routes.

The measurement of a pair of graphs sums -log(1 - w) over their
alternating 1-circuits.  Enumeration computes a (possibly truncated)
lower bound directly from circuits; the exact route evaluates
-log det(1 - M_F M_G) on the simplified graphs, which equals the full
(possibly infinite) circuit sum.  The exact route is canonical; the
enumeration route is its verification oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CarrierError
from .graphs import (
    WeightedGraph,
    _exists_path_of_length,
    as_multigraph,
    one_circuits,
    plug,
    simplify,
    union,
)
from .matrix import (
    RHO_TOL,
    _measure_close,
    adjacency_matrix,
    log_det_one_minus,
    product_is_acyclic,
    reduce_exact,
    spectral_radius,
)

UNIT_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class Measurement:
    """A measurement value with its provenance.

    ``value`` is a nonnegative real or ``math.inf``.  For the enumeration
    route, ``truncated`` reports whether longer circuits may exist (the
    value is then a lower bound); it is ``None`` for the exact route.
    """

    value: float
    route: str
    max_len: int | None = None
    truncated: bool | None = None

    def __post_init__(self):
        if not (self.value >= 0.0):
            raise ValueError("measurement values are nonnegative")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)


def measure_truncated(g: WeightedGraph, h: WeightedGraph, max_len: int) -> Measurement:
    """Circuit-enumeration measurement, truncated at circuit length max_len.

    Returns infinity as soon as any enumerated circuit has weight >= 1
    (the defining series diverges).  The truncation flag is on when
    alternating paths of length max_len + 1 exist.
    """
    if max_len < 2 or max_len % 2 != 0:
        raise ValueError("max_len must be even and >= 2")
    truncated = _exists_path_of_length(plug(g, h), max_len + 1)
    total = 0.0
    for c in one_circuits(g, h, max_len):
        if c.weight >= 1.0 - UNIT_WEIGHT_TOL:
            return Measurement(math.inf, "enumeration", max_len, truncated)
        total += -math.log1p(-c.weight)
    return Measurement(total, "enumeration", max_len, truncated)


def measure_exact(g: WeightedGraph, h: WeightedGraph) -> Measurement:
    """Log-determinant measurement on the simplified graphs.

    Infinite exactly when the spectral radius of M_G M_H reaches 1; zero
    exactly when the plugging of the simplified graphs has no alternating
    circuit (detected by reachability, so the zero is exact).
    """
    sg, sh = simplify(g), simplify(h)
    carrier = tuple(sorted(g.vertices | h.vertices))
    if not carrier:
        return Measurement(0.0, "logdet")
    if product_is_acyclic(sg, sh):
        return Measurement(0.0, "logdet")
    a = adjacency_matrix(sg, carrier).entries
    b = adjacency_matrix(sh, carrier).entries
    prod = a @ b
    if spectral_radius(prod) >= 1.0 - RHO_TOL:
        return Measurement(math.inf, "logdet")
    return Measurement(log_det_one_minus(prod), "logdet")


def check_adjunction(
    f: WeightedGraph, g: WeightedGraph, h: WeightedGraph, tol: float = 1e-9
) -> tuple[Measurement, Measurement, Measurement, bool]:
    """The three-term adjunction <F, G u H> = <F, G> + <F :: G, H>.

    Requires disjoint V_G, V_H with both contained in V_F.  All three
    measurements use the exact route; the reduction F :: G is computed by
    the feedback equation.  Infinity on the left must coincide with
    infinity appearing on the right.
    """
    overlap = g.vertices & h.vertices
    if overlap:
        raise CarrierError(f"V_G and V_H must be disjoint; both contain vertex {min(overlap)}")
    outside = (g.vertices | h.vertices) - f.vertices
    if outside:
        raise CarrierError(f"vertex {min(outside)} of G u H lies outside V_F")
    left = measure_exact(f, union(g, h))
    first = measure_exact(f, g)
    if first.is_infinite:
        rest = Measurement(math.inf, "logdet")
    else:
        fg = reduce_exact(f, g)
        rest = measure_exact(as_multigraph(fg), h)
    if left.is_infinite or first.is_infinite or rest.is_infinite:
        ok = left.is_infinite == (first.is_infinite or rest.is_infinite)
    else:
        ok = _measure_close(left.value, first.value + rest.value, tol)
    return left, first, rest, ok


def check_simplify_invariance(
    g: WeightedGraph, h: WeightedGraph, max_len: int, tol: float = 1e-9
) -> bool:
    """Measurement is invariant under simplification of one argument.

    Checks measure_exact(g, h) against measure_exact on (g, the multigraph
    rebuilt from simplify(h)), and, when the enumeration terminates
    without truncation, against measure_truncated(g, h, max_len).
    """
    exact = measure_exact(g, h)
    rebuilt = measure_exact(g, as_multigraph(simplify(h)))
    if exact.is_infinite or rebuilt.is_infinite:
        if exact.is_infinite != rebuilt.is_infinite:
            return False
    elif not _measure_close(exact.value, rebuilt.value, tol):
        return False
    enum = measure_truncated(g, h, max_len)
    if not enum.truncated:
        if exact.is_infinite or enum.is_infinite:
            return exact.is_infinite == enum.is_infinite
        return _measure_close(exact.value, enum.value, tol)
    if not exact.is_infinite and not enum.is_infinite:
        # truncated sums are lower bounds
        return enum.value <= exact.value + tol
    return True
