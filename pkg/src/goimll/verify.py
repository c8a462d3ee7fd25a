"""Seeded verification suites behind the ``verify`` CLI verb.

Each suite runs independent trials with per-trial generators split from
the master seed, so reports are reproducible and order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import generators as gen
from .category import check_coherence_samples, compose, fax_morphism, identity_morphism
from .graphs import graph_equal, reduce_truncated
from .matrix import (
    adjacency_matrix,
    feedback_solve,
    is_operator_graph,
    log_det_one_minus,
    spectral_radius,
    trace_series_partial,
)
from .measure import check_adjunction, check_simplify_invariance, measure_exact, measure_truncated
from .projects import project_equal


@dataclass(frozen=True)
class Report:
    name: str
    passed: int
    total: int
    failures: tuple[tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def format(self) -> str:
        lines = [f"trial {idx}: FAIL {detail}" for idx, detail in self.failures]
        lines.append(f"{self.passed}/{self.total} pass")
        return "\n".join(lines)


def _run(name: str, trials: int, one_trial) -> Report:
    failures = []
    for t in range(trials):
        try:
            ok, detail = one_trial(t)
        except Exception as exc:  # a crash is a failing trial, not a crashed suite
            ok, detail = False, f"error: {exc}"
        if not ok:
            failures.append((t, detail))
    return Report(name, trials - len(failures), trials, tuple(failures))


def verify_adjunction(trials: int, seed: int, max_vertices: int = 6) -> Report:
    """Three-term measurement adjunction on random triples."""

    def one(t: int):
        rng = gen.trial_rng(seed, t)
        f, g, h = gen.adjunction_triple(rng, max_vertices)
        left, first, rest, ok = check_adjunction(f, g, h)
        detail = f"left={left.value} first={first.value} rest={rest.value}"
        return ok, detail

    return _run("adjunction", trials, one)


def verify_invariance(trials: int, seed: int, max_vertices: int = 4) -> Report:
    """Measurement invariance under simplification, plus monotone truncation."""

    def one(t: int):
        rng = gen.trial_rng(seed, t)
        g, h = gen.multigraph_pair(rng, max_vertices)
        if not check_simplify_invariance(g, h, max_len=8):
            return False, "simplification changed the measurement"
        exact = measure_exact(g, h)
        previous = 0.0
        for length in (2, 4, 6, 8):
            m = measure_truncated(g, h, length)
            if m.is_infinite:
                return exact.is_infinite, "enumeration hit an infinite circuit"
            if m.value < previous - 1e-12:
                return False, f"partial sums not monotone at L={length}"
            if not exact.is_infinite and m.value > exact.value + 1e-9:
                return False, f"partial sum exceeds the exact value at L={length}"
            previous = m.value
        return True, ""

    return _run("invariance", trials, one)


def verify_assoc(trials: int, seed: int, max_vertices: int = 6) -> Report:
    """Associativity of reduction under the empty-triple-intersection rule."""

    def one(t: int):
        rng = gen.trial_rng(seed, t)
        for _ in range(50):
            g0, g1, g2 = gen.assoc_triple(rng)
            inner, trunc1 = reduce_truncated(g1, g2, 16)
            left, trunc2 = reduce_truncated(g0, inner, 16)
            lhs, trunc3 = reduce_truncated(g0, g1, 16)
            right, trunc4 = reduce_truncated(lhs, g2, 16)
            if trunc1 or trunc2 or trunc3 or trunc4:
                continue  # resample: only complete enumerations are comparable
            ok = graph_equal(left, right, tol=1e-9)
            return ok, "" if ok else "association orders disagree"
        return False, "no truncation-free instance found"

    return _run("assoc", trials, one)


def verify_category(seed: int, window: int = 2**16, trials: int = 30) -> Report:
    """Coherence samples plus identity/associativity of composition."""
    coherence = check_coherence_samples(seed=seed, window=window)
    failures = []
    for c in coherence.checks:
        if c.failures:
            failures.append((0, f"{c.name}: {c.failures} failures (e.g. {c.example})"))

    def one(t: int):
        rng = gen.trial_rng(seed + 1, t)

        def rand_fax(lo, hi, size):
            src = sorted(rng.choice(range(lo, hi), size=size, replace=False).tolist())
            rest = [x for x in range(lo, hi) if x not in src]
            tgt = sorted(rng.choice(rest, size=size, replace=False).tolist())
            perm = rng.permutation(size)
            return fax_morphism({s: tgt[perm[i]] for i, s in enumerate(src)})

        f = rand_fax(0, 10, 2)
        g = fax_morphism({t_: t_ + 20 for t_ in sorted(f.target)})
        h = fax_morphism({t_: t_ + 40 for t_ in sorted(g.target)})
        left_id = compose(identity_morphism(f.source), f)
        right_id = compose(f, identity_morphism(f.target))
        if not project_equal(left_id.body, f.body, tol=0.0):
            return False, "left identity law fails"
        if not project_equal(right_id.body, f.body, tol=0.0):
            return False, "right identity law fails"
        assoc_l = compose(compose(f, g), h)
        assoc_r = compose(f, compose(g, h))
        if not (
            assoc_l.source == assoc_r.source
            and assoc_l.target == assoc_r.target
            and project_equal(assoc_l.body, assoc_r.body, tol=0.0)
        ):
            return False, "composition is not associative"
        return True, ""

    trial_report = _run("category", trials, one)
    return Report(
        "category",
        trial_report.passed + (0 if failures else 1),
        trial_report.total + 1,
        tuple(failures) + trial_report.failures,
    )


def verify_matrix(trials: int, seed: int, max_vertices: int = 5) -> Report:
    """Trace-series/log-det route equivalence and the feedback equation."""

    def one(t: int):
        rng = gen.trial_rng(seed, t)
        f, g = gen.operator_pair(rng, max_vertices)
        carrier = tuple(sorted(f.vertices | g.vertices))
        prod = adjacency_matrix(f, carrier).entries @ adjacency_matrix(g, carrier).entries
        rho = spectral_radius(prod)
        if rho < 0.9:
            series = trace_series_partial(prod, 500)[-1]
            ld = log_det_one_minus(prod)
            if abs(series - ld) > 1e-6:
                return False, f"series {series} vs logdet {ld}"
        solved = feedback_solve(f, g)
        if not is_operator_graph(solved):
            return False, "feedback solution is not an operator graph"
        n = len(carrier)
        a = adjacency_matrix(f, carrier).entries
        b = adjacency_matrix(g, carrier).entries
        series_sum = np.zeros((n, n))
        term = np.eye(n)
        for _ in range(400):
            series_sum += term
            term = term @ (b @ a)
        f_only = frozenset(f.vertices - g.vertices)
        g_only = frozenset(g.vertices - f.vertices)
        pf = np.diag([1.0 if v in f_only else 0.0 for v in carrier])
        pg = np.diag([1.0 if v in g_only else 0.0 for v in carrier])
        blocks = (pf @ a + pg) @ series_sum @ (b @ pg + pf)
        for i, v in enumerate(carrier):
            for j, w in enumerate(carrier):
                want = blocks[i, j] if (v in f_only | g_only and w in f_only | g_only) else 0.0
                if abs(solved.weight(v, w) - want) > 1e-9:
                    return False, f"block formula mismatch at ({v},{w})"
        return True, ""

    return _run("matrix", trials, one)
