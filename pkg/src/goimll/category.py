"""The categorical layer: morphisms between carriers, up to delocation.

Objects are carriers (finite sets of naturals); a morphism from S to T is
a project living on two tagged copies, source vertices tagged 0 and
target vertices tagged 1.  Tags are flattened into naturals as 2x + i, so
a morphism body occupies {2s | s in S} u {2t+1 | t in T}.  Composition
cuts the bodies along the shared middle copy (a third internal tag is
used transiently); the monoidal structure and its coherence maps are
plain bijections of the naturals, checked pointwise on finite windows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import CarrierError
from .projects import Delocation, Project, cut, delocate, fax, tensor

Pair = tuple[int, int]


# ---------------------------------------------------------------------------
# the standard bijections


def psi0(x: int) -> Pair:
    return (x, 0)


def psi1(x: int) -> Pair:
    return (x, 1)


def mu(p: Pair) -> Pair:
    x, i = p
    if i not in (0, 1):
        raise ValueError("mu expects tags 0 or 1")
    return (x, i + 1)


def nu(p: Pair) -> Pair:
    x, i = p
    if i == 0:
        return (x, 0)
    if i == 2:
        return (x, 1)
    raise ValueError("nu expects tags 0 or 2")


def phi(p: Pair) -> int:
    x, i = p
    if i not in (0, 1):
        raise ValueError("phi expects tags 0 or 1")
    return 2 * x + i


def phi_inv(n: int) -> Pair:
    return (n // 2, n % 2)


def tau(p: Pair) -> Pair:
    x, i = p
    if i == 0 and x % 2 == 1:
        return (x - 1, 1)
    if i == 1 and x % 2 == 0:
        return (x + 1, 0)
    return p


def gamma(n: int) -> int:
    return n + 1 if n % 2 == 0 else n - 1


def alpha(n: int) -> int:
    if n % 2 == 0:
        return 2 * n
    if n % 4 == 1:
        return n + 1
    return (n - 1) // 2


def alpha_inv(n: int) -> int:
    if n % 2 == 1:
        return 2 * n + 1
    if n % 4 == 0:
        return n // 2
    return n - 1


def pi_proj(p: Pair) -> int:
    return p[0]


def standard_bijections() -> dict[str, Callable]:
    """The named maps of the categorical construction, as callables."""
    return {
        "psi0": psi0,
        "psi1": psi1,
        "mu": mu,
        "nu": nu,
        "phi": phi,
        "phi_inv": phi_inv,
        "tau": tau,
        "gamma": gamma,
        "alpha": alpha,
        "alpha_inv": alpha_inv,
        "pi": pi_proj,
    }


def tensor_with_id_left(beta: Callable[[int], int]) -> Callable[[int], int]:
    """id (x) beta as a map on flattened codes: odd codes transform."""

    def f(n: int) -> int:
        return n if n % 2 == 0 else 2 * beta((n - 1) // 2) + 1

    return f


def tensor_with_id_right(beta: Callable[[int], int]) -> Callable[[int], int]:
    """beta (x) id as a map on flattened codes: even codes transform."""

    def f(n: int) -> int:
        return 2 * beta(n // 2) if n % 2 == 0 else n

    return f


# ---------------------------------------------------------------------------
# morphisms


def _src_code(x: int) -> int:
    return 2 * x


def _tgt_code(x: int) -> int:
    return 2 * x + 1


@dataclass(frozen=True)
class Morphism:
    """A project presented as a map between two carriers.

    The body carrier must be the tagged union of the source and target
    carriers under the 2x + i flattening.
    """

    source: frozenset[int]
    target: frozenset[int]
    body: Project

    def __post_init__(self):
        expected = frozenset(_src_code(s) for s in self.source) | frozenset(
            _tgt_code(t) for t in self.target
        )
        if self.body.carrier != expected:
            raise CarrierError("morphism body carrier does not match source/target")


def fax_morphism(bijection: dict[int, int]) -> Morphism:
    """The morphism realizing a bijection between two carriers."""
    source = frozenset(bijection)
    target = frozenset(bijection.values())
    body = fax(Delocation({_src_code(s): _tgt_code(t) for s, t in bijection.items()}))
    return Morphism(source, target, body)


def identity_morphism(s) -> Morphism:
    """The fax over (x, 0) -> (x, 1) on a carrier."""
    return fax_morphism({x: x for x in s})


def compose(f: Morphism, g: Morphism) -> Morphism:
    """Composition g after f, by cutting along the shared middle copy.

    The bodies are delocated into a transient three-tag encoding
    (3x + tag), cut along tag 1, and the result is renamed back to the
    two-tag form.
    """
    if f.target != g.source:
        raise CarrierError("compose requires target of f = source of g")
    lift_f = Delocation(
        {_src_code(s): 3 * s for s in f.source}
        | {_tgt_code(t): 3 * t + 1 for t in f.target}
    )
    lift_g = Delocation(
        {_src_code(t): 3 * t + 1 for t in g.source}
        | {_tgt_code(u): 3 * u + 2 for u in g.target}
    )
    plugged = cut(delocate(f.body, lift_f), delocate(g.body, lift_g))
    rename = Delocation(
        {3 * s: _src_code(s) for s in f.source}
        | {3 * u + 2: _tgt_code(u) for u in g.target}
    )
    return Morphism(f.source, g.target, delocate(plugged, rename))


def _tensor_map_left(v: int) -> int:
    # source s -> source 2s; target t -> target 2t
    return 2 * v if v % 2 == 0 else 2 * v - 1


def _tensor_map_right(v: int) -> int:
    # source s -> source 2s+1; target t -> target 2t+1
    return 2 * v + 2 if v % 2 == 0 else 2 * v + 1


def tensor_morphisms(f: Morphism, g: Morphism) -> Morphism:
    """Monoidal product of morphisms.

    Carriers combine by the even/odd interleaving (f's carriers on even
    object coordinates, g's on odd); the bodies are the correspondingly
    delocated tensor.
    """
    body_f = delocate(f.body, Delocation({v: _tensor_map_left(v) for v in f.body.carrier}))
    body_g = delocate(g.body, Delocation({v: _tensor_map_right(v) for v in g.body.carrier}))
    source = frozenset(2 * s for s in f.source) | frozenset(2 * s + 1 for s in g.source)
    target = frozenset(2 * t for t in f.target) | frozenset(2 * t + 1 for t in g.target)
    return Morphism(source, target, tensor(body_f, body_g))


def _object_delocation(m: Morphism, obj_map: Callable[[int], int]) -> Morphism:
    """Delocate a morphism along a bijection of object coordinates."""
    mapping = {}
    for s in m.source:
        mapping[_src_code(s)] = _src_code(obj_map(s))
    for t in m.target:
        mapping[_tgt_code(t)] = _tgt_code(obj_map(t))
    return Morphism(
        frozenset(obj_map(s) for s in m.source),
        frozenset(obj_map(t) for t in m.target),
        delocate(m.body, Delocation(mapping)),
    )


def swap_morphism(m: Morphism) -> Morphism:
    """The braiding: delocate along gamma (swap the two tensor factors)."""
    return _object_delocation(m, gamma)


def associate_morphism(m: Morphism) -> Morphism:
    """Delocate along alpha: a (x) (b (x) c)  ->  (a (x) b) (x) c."""
    return _object_delocation(m, alpha)


def unitor_delocate(m: Morphism) -> Morphism:
    """Strip a unit factor: delocate along pi o phi^{-1} (x -> x // 2).

    Valid for morphisms of the form unit (x) a or a (x) unit, where the
    object coordinates of the remaining factor all share parity.
    """
    return _object_delocation(m, lambda x: x // 2)


def dualizing_map(n: int) -> int:
    """The carrier embedding into the double dual: x -> 4x."""
    return 4 * n


# ---------------------------------------------------------------------------
# sampled coherence checks


@dataclass(frozen=True)
class CoherenceCheck:
    name: str
    failures: int
    example: object = None


@dataclass(frozen=True)
class CoherenceReport:
    checks: tuple[CoherenceCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.failures == 0 for c in self.checks)

    def format(self) -> str:
        lines = []
        for c in self.checks:
            status = "pass" if c.failures == 0 else f"FAIL ({c.failures}, e.g. {c.example})"
            lines.append(f"{c.name}: {status}")
        return "\n".join(lines)


def _pointwise(name: str, lhs: Callable, rhs: Callable, window: int) -> CoherenceCheck:
    failures = 0
    example = None
    for n in range(window):
        if lhs(n) != rhs(n):
            failures += 1
            if example is None:
                example = n
    return CoherenceCheck(name, failures, example)


def check_coherence_samples(seed: int = 0, window: int = 2**16) -> CoherenceReport:
    """Sampled falsification of the coherence laws.

    Bijection-level laws (involution, pentagon, hexagon, dualizing) are
    checked pointwise on [0, window); object-level laws (associator,
    unitors, braiding) on seeded random fax morphisms.
    """
    import numpy as np

    checks = []
    checks.append(_pointwise("gamma is an involution", lambda n: gamma(gamma(n)), lambda n: n, window))
    checks.append(
        _pointwise("alpha_inv inverts alpha", lambda n: alpha_inv(alpha(n)), lambda n: n, window)
    )

    tl, tr = tensor_with_id_left, tensor_with_id_right
    checks.append(
        _pointwise(
            "pentagon",
            lambda n: alpha(alpha(n)),
            lambda n: tr(alpha)(alpha(tl(alpha)(n))),
            window,
        )
    )
    checks.append(
        _pointwise(
            "hexagon",
            lambda n: alpha_inv(gamma(alpha_inv(n))),
            lambda n: tl(gamma)(alpha_inv(tr(gamma)(n))),
            window,
        )
    )

    rng = np.random.default_rng(seed)
    from .projects import project_equal

    def random_fax(lo: int, hi: int, size: int) -> Morphism:
        pool = list(range(lo, hi))
        src = sorted(rng.choice(pool, size=size, replace=False).tolist())
        tgt = sorted(rng.choice([p for p in pool if p not in src], size=size, replace=False).tolist())
        perm = rng.permutation(size)
        return fax_morphism({s: tgt[perm[i]] for i, s in enumerate(src)})

    assoc_failures = 0
    assoc_example = None
    for trial in range(20):
        a = random_fax(0, 12, 2)
        b = random_fax(12, 24, 2)
        c = random_fax(24, 36, 2)
        lhs = associate_morphism(tensor_morphisms(a, tensor_morphisms(b, c)))
        rhs = tensor_morphisms(tensor_morphisms(a, b), c)
        if not (
            lhs.source == rhs.source
            and lhs.target == rhs.target
            and project_equal(lhs.body, rhs.body, tol=0.0)
        ):
            assoc_failures += 1
            if assoc_example is None:
                assoc_example = trial
    checks.append(CoherenceCheck("associator on sampled morphisms", assoc_failures, assoc_example))

    unit = fax_morphism({})
    unitor_failures = 0
    unitor_example = None
    for trial in range(20):
        a = random_fax(0, 16, 3)
        left = unitor_delocate(tensor_morphisms(unit, a))
        right = unitor_delocate(tensor_morphisms(a, unit))
        ok = all(
            m.source == a.source and m.target == a.target and project_equal(m.body, a.body, tol=0.0)
            for m in (left, right)
        )
        if not ok:
            unitor_failures += 1
            if unitor_example is None:
                unitor_example = trial
    checks.append(CoherenceCheck("unitor round trips", unitor_failures, unitor_example))

    swap_failures = 0
    swap_example = None
    for trial in range(20):
        a = random_fax(0, 12, 2)
        b = random_fax(12, 24, 2)
        t = tensor_morphisms(a, b)
        back = swap_morphism(swap_morphism(t))
        if not (
            back.source == t.source
            and back.target == t.target
            and project_equal(back.body, t.body, tol=0.0)
        ):
            swap_failures += 1
            if swap_example is None:
                swap_example = trial
    checks.append(CoherenceCheck("braiding squares to identity", swap_failures, swap_example))

    dual_failures = 0
    dual_example = None
    for trial in range(20):
        carrier = sorted(rng.choice(64, size=4, replace=False).tolist())
        # A -o bottom has carrier 2*X; its dual again doubles
        double_dual = {2 * (2 * x) for x in carrier}
        image = {dualizing_map(x) for x in carrier}
        if image != double_dual or len(image) != len(carrier):
            dual_failures += 1
            if dual_example is None:
                dual_example = carrier
    checks.append(CoherenceCheck("dualizing embedding x -> 4x", dual_failures, dual_example))

    return CoherenceReport(tuple(checks))
