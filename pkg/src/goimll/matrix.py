"""Localized adjacency matrices: the exact linear-algebra route.

Every quantity computed combinatorially on graphs has a matrix shadow:
circuit measurement becomes -log det(1 - M_F M_G), and the (possibly
infinite) reduction becomes the solution of a feedback equation.  This
module is the oracle side of those dual routes.

Matrix convention: row = source, column = target, so the graph of
two-step paths (first an F-edge, then a G-edge) has matrix M_F @ M_G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, NonTotalError
from .graphs import (
    SimpleGraph,
    WeightedGraph,
    graph_trace,
    is_symmetric,
    is_total,
    simplify,
)

MAX_DIM = 64  # desk scale
RHO_TOL = 1e-9
DROP_EPS = 1e-12


@dataclass(frozen=True)
class LocalizedMatrix:
    """A dense square matrix indexed by a strictly increasing vertex list."""

    index: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        n = len(self.index)
        if any(a >= b for a, b in zip(self.index, self.index[1:])):
            raise ValueError("index must be strictly increasing")
        if n > MAX_DIM:
            raise ValueError(f"dimension {n} exceeds the supported bound {MAX_DIM}")
        if self.entries.shape != (n, n):
            raise ValueError("entries must be square and match the index")
        if n and self.entries.min() < 0.0:
            raise ValueError("entries must be nonnegative")

    @property
    def dim(self) -> int:
        return len(self.index)

    def dump(self) -> str:
        """Debug format: an ``index`` line, then one row per line."""
        lines = ["index " + " ".join(str(v) for v in self.index)]
        for row in self.entries:
            lines.append(" ".join(f"{x:.12g}" for x in row))
        return "\n".join(lines) + "\n"


def adjacency_matrix(s: SimpleGraph, over: list[int] | tuple[int, ...] | None = None) -> LocalizedMatrix:
    """The weight matrix of a total simple graph, zero-padded onto ``over``.

    ``over`` must contain the graph's vertices; it defaults to them.
    """
    if not is_total(s):
        raise NonTotalError("graph has an infinite weight; no adjacency matrix")
    if over is None:
        over = sorted(s.vertices)
    index = tuple(sorted(set(int(v) for v in over)))
    if not s.vertices <= set(index):
        missing = sorted(s.vertices - set(index))
        raise ValueError(f"localization misses vertices {missing}")
    pos = {v: i for i, v in enumerate(index)}
    m = np.zeros((len(index), len(index)))
    for (v, w), x in s.weights.items():
        m[pos[v], pos[w]] = x
    return LocalizedMatrix(index, m)


def _strong_components(support: np.ndarray) -> list[list[int]]:
    """Strongly connected components of a boolean adjacency matrix
    (iterative Tarjan)."""
    n = support.shape[0]
    succ = [np.flatnonzero(support[i]).tolist() for i in range(n)]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = [0]

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, k = work.pop()
            if k == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while k < len(succ[v]):
                w = succ[v][k]
                k += 1
                if index[w] == -1:
                    work.append((v, k))
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return components


def _power_iteration(a: np.ndarray, tol: float, max_iter: int) -> float:
    """Perron value of an irreducible nonnegative matrix.

    Iterates on M + I with a deterministic positive start vector: the
    shift makes the block primitive, so the Perron root (simple, by
    irreducibility) strictly dominates and convergence is geometric;
    rho(M + I) = rho(M) + 1 for nonnegative M.
    """
    n = a.shape[0]
    shifted = a + np.eye(n)
    x = np.full(n, 1.0 / math.sqrt(n))
    lam = 1.0
    for _ in range(max_iter):
        y = shifted @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return 0.0
        x_new = y / norm
        lam_new = float(x_new @ (shifted @ x_new))
        if abs(lam_new - lam) <= tol:
            return max(lam_new - 1.0, 0.0)
        x, lam = x_new, lam_new
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations", last_iterate=x
    )


def spectral_radius(m: LocalizedMatrix | np.ndarray, tol: float = 1e-12, max_iter: int = 10000) -> float:
    """Largest eigenvalue modulus of a nonnegative matrix.

    The matrix is split into strongly connected components (the spectrum
    of a nonnegative matrix is the union over its irreducible blocks, and
    acyclic coupling between blocks would otherwise leave power iteration
    facing a defective dominant eigenvalue); each block's Perron value is
    then found by shifted power iteration.
    """
    a = m.entries if isinstance(m, LocalizedMatrix) else np.asarray(m, dtype=float)
    n = a.shape[0]
    if n == 0:
        return 0.0
    if a.min() < 0.0:
        raise ValueError("entries must be nonnegative")
    best = 0.0
    for comp in _strong_components(a > 0.0):
        if len(comp) == 1:
            i = comp[0]
            best = max(best, float(a[i, i]))
            continue
        idx = np.array(sorted(comp))
        best = max(best, _power_iteration(a[np.ix_(idx, idx)], tol, max_iter))
    return best


def log_det_one_minus(m: LocalizedMatrix | np.ndarray) -> float:
    """-log det(1 - M) for nonnegative M; infinity when rho(M) >= 1.

    Uses the pivoted-LU determinant; for rho < 1 the value is a finite
    nonnegative real (it equals the trace power series of M).
    """
    a = m.entries if isinstance(m, LocalizedMatrix) else np.asarray(m, dtype=float)
    n = a.shape[0]
    if n == 0:
        return 0.0
    if spectral_radius(a) >= 1.0 - RHO_TOL:
        return math.inf
    sign, logabs = np.linalg.slogdet(np.eye(n) - a)
    if sign <= 0:  # cannot happen for rho < 1; guard against numerics
        return math.inf
    return max(-float(logabs), 0.0)


def trace_series_partial(m: LocalizedMatrix | np.ndarray, k_max: int) -> list[float]:
    """Partial sums of sum_{k<=K} Tr(M^k)/k, for K = 1..k_max."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    a = m.entries if isinstance(m, LocalizedMatrix) else np.asarray(m, dtype=float)
    n = a.shape[0]
    if n == 0:
        return [0.0] * k_max
    out = []
    power = np.eye(n)
    total = 0.0
    for k in range(1, k_max + 1):
        power = power @ a
        total += float(np.trace(power)) / k
        out.append(total)
    return out


def operator_norm(s: SimpleGraph) -> float:
    """Operator norm of the adjacency matrix.

    Symmetric graphs go through the symmetric eigenvalue routine; the
    general case uses power iteration on M^T M (largest singular value).
    """
    m = adjacency_matrix(s).entries
    if m.size == 0:
        return 0.0
    if is_symmetric(s, tol=0.0):
        return float(np.max(np.abs(np.linalg.eigvalsh(m))))
    return math.sqrt(spectral_radius(m.T @ m))


def is_operator_graph(s: SimpleGraph, tol: float = 1e-9) -> bool:
    """True iff the graph is simple symmetric with operator norm <= 1."""
    if not is_total(s):
        return False
    if not is_symmetric(s, tol=tol):
        return False
    return operator_norm(s) <= 1.0 + tol


def _projection(index: tuple[int, ...], members: frozenset[int]) -> np.ndarray:
    return np.diag([1.0 if v in members else 0.0 for v in index])


def feedback_solve(f: SimpleGraph, g: SimpleGraph) -> SimpleGraph:
    """Exact simplified reduction of two simple graphs.

    Solves the feedback equation: with A = M_F and B = M_G over the common
    carrier, the result is

        S = (P_F' A + P_G') (1 - B A)^{-1} (B P_G' + P_F')

    restricted to the symmetric difference of the carriers, where P_X is
    the coordinate projection onto X, F' = V_F - V_G and G' = V_G - V_F.
    This equals the simplification of the full (possibly infinite)
    reduction of the rebuilt multigraphs.
    """
    carrier = tuple(sorted(f.vertices | g.vertices))
    a = adjacency_matrix(f, carrier).entries
    b = adjacency_matrix(g, carrier).entries
    n = len(carrier)
    if n == 0:
        return SimpleGraph((), {})
    ba = b @ a
    if spectral_radius(ba) >= 1.0 - RHO_TOL:
        raise NonTotalError("feedback equation has no solution: interaction is infinite")
    f_only = frozenset(f.vertices - g.vertices)
    g_only = frozenset(g.vertices - f.vertices)
    pf = _projection(carrier, f_only)
    pg = _projection(carrier, g_only)
    x = np.linalg.solve(np.eye(n) - ba, b @ pg + pf)
    s = (pf @ a + pg) @ x
    symdiff = f_only | g_only
    weights = {}
    for i, v in enumerate(carrier):
        if v not in symdiff:
            continue
        for j, w in enumerate(carrier):
            if w not in symdiff:
                continue
            val = float(s[i, j])
            if val > DROP_EPS:
                weights[(v, w)] = val
    return SimpleGraph(symdiff, weights)


def reduce_exact(f: WeightedGraph, g: WeightedGraph) -> SimpleGraph:
    """Simplification of the full reduction of two multigraphs.

    Raises :class:`NonTotalError` when the interaction is infinite.
    """
    return feedback_solve(simplify(f), simplify(g))


def union_simple(a: SimpleGraph, b: SimpleGraph) -> SimpleGraph:
    """Union of simple graphs with disjoint carriers."""
    if a.vertices & b.vertices:
        raise ValueError("union_simple requires disjoint carriers")
    weights = dict(a.weights)
    weights.update(b.weights)
    return SimpleGraph(a.vertices | b.vertices, weights)


def check_matrix_adjunction(
    f: SimpleGraph, g1: SimpleGraph, g2: SimpleGraph, tol: float = 1e-9
) -> bool:
    """The matrix-level three-term adjunction.

    Requires V_F = V_G1 + V_G2 (disjoint) and feedback_solve(f, g1) total;
    checks <F, G1 u G2> = <F, G1> + <H, G2> with every term computed by
    the log-det route.
    """
    if g1.vertices & g2.vertices:
        raise ValueError("g1 and g2 must have disjoint carriers")
    if f.vertices != (g1.vertices | g2.vertices):
        raise ValueError("carrier of f must be the union of the carriers of g1, g2")
    carrier = tuple(sorted(f.vertices))
    mf = adjacency_matrix(f, carrier).entries
    left = log_det_one_minus(mf @ adjacency_matrix(union_simple(g1, g2), carrier).entries)
    first = log_det_one_minus(mf @ adjacency_matrix(g1, carrier).entries)
    h = feedback_solve(f, g1)
    hc = tuple(sorted(h.vertices | g2.vertices))
    rest = log_det_one_minus(
        adjacency_matrix(h, hc).entries @ adjacency_matrix(g2, hc).entries
    )
    if math.isinf(left) or math.isinf(first) or math.isinf(rest):
        return math.isinf(left) == (math.isinf(first) or math.isinf(rest))
    return _measure_close(left, first + rest, tol)


def _measure_close(a: float, b: float, tol: float = 1e-9) -> bool:
    """Absolute tolerance below 10, relative above."""
    if math.isinf(a) or math.isinf(b):
        return a == b
    if max(abs(a), abs(b)) < 10.0:
        return abs(a - b) <= tol
    return abs(a - b) <= tol * max(abs(a), abs(b))


def product_is_acyclic(f: SimpleGraph, g: SimpleGraph) -> bool:
    """Whether the two-step path digraph of (f, g) has no cycles.

    Cycles of M_F M_G's support digraph are exactly the alternating
    circuits between the simplified graphs; acyclicity means the
    measurement is exactly zero.
    """
    carrier = tuple(sorted(f.vertices | g.vertices))
    if not carrier:
        return True
    p = adjacency_matrix(f, carrier).entries @ adjacency_matrix(g, carrier).entries
    n = len(carrier)
    succ = [[j for j in range(n) if p[i, j] > 0.0] for i in range(n)]
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done

    def dfs(i: int) -> bool:
        state[i] = 1
        for j in succ[i]:
            if state[j] == 1:
                return False
            if state[j] == 0 and not dfs(j):
                return False
        state[i] = 2
        return True

    return all(state[i] == 2 or dfs(i) for i in range(n))


def graph_trace_matrix(s: SimpleGraph) -> float:
    """Trace via the adjacency matrix; sanity twin of graphs.graph_trace."""
    m = adjacency_matrix(s)
    value = float(np.trace(m.entries)) if m.dim else 0.0
    assert abs(value - graph_trace(s)) < 1e-12
    return value
