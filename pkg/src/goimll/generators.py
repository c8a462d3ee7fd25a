"""Seeded random instance generators for the verification suites.

All generators take a numpy Generator; trials derive their own rng from a
master seed through SeedSequence spawning, so suites are reproducible and
may fan trials out across workers.
"""

from __future__ import annotations

import numpy as np

from .graphs import SimpleGraph, WeightedGraph
from .logic import (
    Ax,
    Basis,
    BotRule,
    CutRule,
    ExRule,
    Formula,
    MixRule,
    NegVar,
    OneRule,
    ParRule,
    ProofTree,
    TensorRule,
    Var,
    VarName,
    Bottom,
    One,
    Par,
    conclusion,
)
from .matrix import adjacency_matrix, spectral_radius


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Deterministic per-trial generator split from a master seed."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))


def random_graph(
    rng: np.random.Generator,
    vertices,
    n_edges: int,
    w_lo: float = 0.1,
    w_hi: float = 0.9,
) -> WeightedGraph:
    vs = sorted(vertices)
    edges = []
    if vs:
        for _ in range(n_edges):
            src = int(rng.choice(vs))
            dst = int(rng.choice(vs))
            edges.append((src, dst, float(rng.uniform(w_lo, w_hi))))
    return WeightedGraph.build(vs, edges)


def adjunction_triple(
    rng: np.random.Generator, max_vertices: int = 6
) -> tuple[WeightedGraph, WeightedGraph, WeightedGraph]:
    """F, G, H with disjoint V_G, V_H both inside V_F; weights in [0.1, 0.9]."""
    n_f = int(rng.integers(2, max_vertices + 1))
    v_f = sorted(rng.choice(range(1, 2 * max_vertices + 1), size=n_f, replace=False).tolist())
    n_g = int(rng.integers(0, n_f + 1))
    n_h = int(rng.integers(0, n_f - n_g + 1))
    shuffled = list(rng.permutation(v_f))
    v_g = sorted(int(v) for v in shuffled[:n_g])
    v_h = sorted(int(v) for v in shuffled[n_g:n_g + n_h])
    f = random_graph(rng, v_f, int(rng.integers(1, 7)))
    g = random_graph(rng, v_g, int(rng.integers(0, 4)) if v_g else 0)
    h = random_graph(rng, v_h, int(rng.integers(0, 4)) if v_h else 0)
    return f, g, h


def finite_circuit_triple(
    rng: np.random.Generator,
) -> tuple[WeightedGraph, WeightedGraph, WeightedGraph]:
    """An adjunction triple whose pluggings have finitely many circuits.

    Any alternating circuit supports unboundedly long alternating paths,
    so boundedness cannot be demanded; instead circuits are introduced as
    vertex-isolated gadgets (a loop pair, or a 2-cycle closed by loops),
    each contributing exactly one circuit, and the remaining clutter uses
    edges of one color only (which can never close an alternating cycle).
    Gadget loops sit in G, in H, or across both, so all three counts of
    the adjunction take nonzero values.
    """
    weight = lambda: float(rng.uniform(0.1, 0.9))
    f_edges: list[tuple[int, int, float]] = []
    g_edges: list[tuple[int, int, float]] = []
    h_edges: list[tuple[int, int, float]] = []
    v_g: list[int] = []
    v_h: list[int] = []
    next_vertex = 1

    def fresh() -> int:
        nonlocal next_vertex
        v = next_vertex
        next_vertex += 1
        return v

    for _ in range(int(rng.integers(0, 4))):
        kind = int(rng.integers(0, 3))
        if kind == 0:  # loop pair on one vertex
            v = fresh()
            side_edges, side_vertices = (g_edges, v_g) if rng.uniform() < 0.5 else (h_edges, v_h)
            f_edges.append((v, v, weight()))
            side_edges.append((v, v, weight()))
            side_vertices.append(v)
        else:  # 2-cycle in F closed by loops at both ends
            v, w = fresh(), fresh()
            f_edges.append((v, w, weight()))
            f_edges.append((w, v, weight()))
            for x in (v, w):
                if kind == 1:
                    side_edges, side_vertices = (g_edges, v_g) if rng.uniform() < 0.5 else (h_edges, v_h)
                else:  # split the ends across G and H
                    side_edges, side_vertices = (g_edges, v_g) if x == v else (h_edges, v_h)
                side_edges.append((x, x, weight()))
                side_vertices.append(x)
    for _ in range(int(rng.integers(0, 4))):  # one-colored clutter
        a, b = fresh(), fresh()
        f_edges.append((a, b, weight()))
    all_f = sorted(set(v_g) | set(v_h) | {v for e in f_edges for v in e[:2]} | {fresh()})
    f = WeightedGraph.build(all_f, f_edges)
    g = WeightedGraph.build(sorted(v_g), g_edges)
    h = WeightedGraph.build(sorted(v_h), h_edges)
    return f, g, h


def multigraph_pair(
    rng: np.random.Generator, max_vertices: int = 4
) -> tuple[WeightedGraph, WeightedGraph]:
    """A pair sharing vertices, with parallel edges forced into the second."""
    n = int(rng.integers(1, max_vertices + 1))
    pool = sorted(rng.choice(range(1, 8), size=n, replace=False).tolist())
    g = random_graph(rng, pool, int(rng.integers(1, 4)))
    h = random_graph(rng, pool, int(rng.integers(1, 3)))
    doubled = h.edge_triples()
    for src, dst, _ in list(doubled[: int(rng.integers(1, len(doubled) + 1))]):
        doubled.append((src, dst, float(rng.uniform(0.05, 0.4))))
    return g, WeightedGraph.build(h.vertices, doubled)


def assoc_triple(
    rng: np.random.Generator,
) -> tuple[WeightedGraph, WeightedGraph, WeightedGraph]:
    """Three graphs with empty triple intersection of vertex sets."""
    pool = range(1, 9)
    membership = {v: tuple(rng.integers(0, 2, size=3).tolist()) for v in pool}
    sets: list[list[int]] = [[], [], []]
    for v, flags in membership.items():
        if sum(flags) == 3:
            drop = int(rng.integers(0, 3))
            flags = tuple(0 if k == drop else f for k, f in enumerate(flags))
        for k, f in enumerate(flags):
            if f:
                sets[k].append(v)
    graphs = []
    for vs in sets:
        n_edges = int(rng.integers(0, 4)) if vs else 0
        graphs.append(random_graph(rng, vs, n_edges))
    return tuple(graphs)


def operator_graph(rng: np.random.Generator, vertices, density: float = 0.5) -> SimpleGraph:
    """A random symmetric simple graph scaled to operator norm < 1."""
    vs = sorted(vertices)
    weights: dict[tuple[int, int], float] = {}
    for i, v in enumerate(vs):
        for w in vs[i:]:
            if rng.uniform() < density:
                x = float(rng.uniform(0.1, 0.9))
                weights[(v, w)] = x
                weights[(w, v)] = x
    s = SimpleGraph(vs, weights)
    if not weights:
        return s
    norm = float(np.max(np.abs(np.linalg.eigvalsh(adjacency_matrix(s).entries))))
    if norm == 0.0:
        return s
    scale = float(rng.uniform(0.3, 0.95)) / norm
    return SimpleGraph(vs, {k: x * scale for k, x in weights.items()})


def operator_pair(
    rng: np.random.Generator, max_vertices: int = 5
) -> tuple[SimpleGraph, SimpleGraph]:
    """Operator graphs on overlapping carriers with finite interaction."""
    while True:
        n = int(rng.integers(2, max_vertices + 1))
        pool = sorted(rng.choice(range(1, 10), size=n, replace=False).tolist())
        cut_point = int(rng.integers(1, n))
        v_f = pool[: cut_point + int(rng.integers(0, n - cut_point + 1))]
        v_g = pool[cut_point:]
        if not v_f or not v_g:
            continue
        f = operator_graph(rng, v_f)
        g = operator_graph(rng, v_g)
        carrier = tuple(sorted(set(v_f) | set(v_g)))
        prod = adjacency_matrix(f, carrier).entries @ adjacency_matrix(g, carrier).entries
        if spectral_radius(prod) < 0.9:
            return f, g


def matching_project(rng: np.random.Generator, carrier) -> "Project":
    """A successful project: a random partial matching at weight 1."""
    from .projects import Project

    vs = list(rng.permutation(sorted(carrier)))
    edges = []
    while len(vs) >= 2:
        if rng.uniform() < 0.8:
            v, w = int(vs.pop()), int(vs.pop())
            edges.append((v, w, 1.0))
            edges.append((w, v, 1.0))
        else:
            vs.pop()
    return Project(0.0, WeightedGraph.build(carrier, edges))


# ---------------------------------------------------------------------------
# random proofs

GEN_BASIS = Basis(
    {"X0": VarName(0, 1), "X1": VarName(1, 1), "X2": VarName(2, 2)},
)


class _ProofBuilder:
    def __init__(self, rng: np.random.Generator, basis: Basis, max_rules: int):
        self.rng = rng
        self.basis = basis
        self.names = sorted(basis.names)
        self.max_rules = max_rules
        self.rules = 0
        self.next_j: dict[str, int] = {n: 0 for n in self.names}

    def fresh(self, name: str) -> int:
        j = self.next_j[name]
        self.next_j[name] += 1
        return j

    def new_axiom(self) -> Ax:
        name = str(self.rng.choice(self.names))
        self.rules += 1
        return Ax(name, self.fresh(name), self.fresh(name))

    def eta_partner(self, a: Formula) -> ProofTree:
        """A proof whose conclusion ends with dual(a), on fresh locations."""
        self.rules += 1
        if isinstance(a, Var):
            return Ax(a.name, self.fresh(a.name), a.j)
        if isinstance(a, NegVar):
            return ExRule(Ax(a.name, a.j, self.fresh(a.name)), 0, 1)
        if isinstance(a, One):
            self.rules += 1
            return BotRule(OneRule())
        if isinstance(a, Bottom):
            return OneRule()
        qb = self.eta_partner(a.left)
        qc = self.eta_partner(a.right)
        if isinstance(a, Par):
            return TensorRule(qb, qc)
        # dual of a tensor is a par: mix the partners, join the two duals
        m: ProofTree = MixRule(qb, qc)
        total = len(conclusion(m))
        pos_b = len(conclusion(qb)) - 1
        if pos_b != total - 2:
            m = ExRule(m, pos_b, total - 2)
        self.rules += 1
        return ParRule(m)

    def build(self) -> ProofTree:
        rng = self.rng
        pool: list[ProofTree] = [self.new_axiom()]
        while self.rules < self.max_rules:
            op = rng.choice(["ax", "one", "bot", "par", "tensor", "mix", "cut", "ex"])
            if op == "ax":
                pool.append(self.new_axiom())
            elif op == "one":
                self.rules += 1
                pool.append(OneRule())
            elif op == "bot":
                k = int(rng.integers(0, len(pool)))
                self.rules += 1
                pool[k] = BotRule(pool[k])
            elif op == "ex":
                k = int(rng.integers(0, len(pool)))
                c = conclusion(pool[k])
                if len(c) >= 2:
                    i, j = rng.choice(len(c), size=2, replace=False)
                    pool[k] = ExRule(pool[k], int(i), int(j))
            elif op == "par":
                candidates = [k for k in range(len(pool)) if len(conclusion(pool[k])) >= 2]
                if candidates:
                    k = int(rng.choice(candidates))
                    self.rules += 1
                    pool[k] = ParRule(pool[k])
            elif op in ("tensor", "mix") and len(pool) >= 2:
                i, j = rng.choice(len(pool), size=2, replace=False)
                i, j = int(i), int(j)
                self.rules += 1
                node = TensorRule(pool[i], pool[j]) if op == "tensor" else MixRule(pool[i], pool[j])
                pool = [pool[k] for k in range(len(pool)) if k not in (i, j)] + [node]
            elif op == "cut":
                k = int(rng.integers(0, len(pool)))
                c = conclusion(pool[k])
                pos = int(rng.integers(0, len(c)))
                left = pool[k] if pos == len(c) - 1 else ExRule(pool[k], pos, len(c) - 1)
                partner = self.eta_partner(conclusion(left)[-1])
                self.rules += 1
                pool[k] = CutRule(left, partner)
        while len(pool) > 1:
            b = pool.pop()
            a = pool.pop()
            pool.append(MixRule(a, b))
        return pool[0]


def random_proof(rng: np.random.Generator, max_rules: int = 12, basis: Basis | None = None) -> ProofTree:
    """A random checked proof with at most ``max_rules`` logical rules."""
    return _ProofBuilder(rng, basis or GEN_BASIS, max_rules).build()
