"""Localized multiplicative linear logic: syntax, checking, interpretation.

Formulas carry concrete locations: an atom occurrence X_i(j) of size n_i
occupies the vertices delta(i, j*n_i) .. delta(i, (j+1)*n_i - 1), where
delta is the pairing bijection (n, m) -> 2^n (2m + 1) - 1.  Binary
connectives require disjoint locations, sequents pairwise disjoint ones.

Proof scripts are parenthesized prefix terms:

    (ax X1 3 97)     axiom: |- X1(3), X1(97)^
    (one)            |- 1
    (bot P)          appends bottom to the conclusion
    (par P)          joins the last two conclusion formulas
    (tensor P Q)     joins the last formula of each premise
    (cut P Q)        cuts the last formula of P against the last of Q
    (mix P Q)        concatenates conclusions
    (ex P i j)       exchanges conclusion positions i and j

New formulas are appended at the end; explicit exchange is the only way
to move formulas, which keeps checking and normalization positional.
Interpretation sends axioms to faxes, tensor/mix to tensor, cut to cut,
and everything else to the identity; cut elimination rewrites proofs to
cut-free form while preserving the interpretation exactly.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import ProofError
from .graphs import WeightedGraph, simplify
from .projects import Delocation, Project, cut, delocate, fax, tensor

# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Var:
    name: str
    j: int | None


@dataclass(frozen=True)
class NegVar:
    name: str
    j: int | None


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


Formula = Union[Var, NegVar, Tensor, Par, One, Bottom]
Sequent = tuple[Formula, ...]


def dual(f: Formula) -> Formula:
    """De Morgan dual, with negation pushed to the atoms."""
    if isinstance(f, Var):
        return NegVar(f.name, f.j)
    if isinstance(f, NegVar):
        return Var(f.name, f.j)
    if isinstance(f, Tensor):
        return Par(dual(f.left), dual(f.right))
    if isinstance(f, Par):
        return Tensor(dual(f.left), dual(f.right))
    if isinstance(f, One):
        return Bottom()
    return One()


def format_formula(f: Formula) -> str:
    if isinstance(f, Var):
        return f"{f.name}({f.j})"
    if isinstance(f, NegVar):
        return f"{f.name}({f.j})^"
    if isinstance(f, Tensor):
        return f"({format_formula(f.left)} * {format_formula(f.right)})"
    if isinstance(f, Par):
        return f"({format_formula(f.left)} | {format_formula(f.right)})"
    if isinstance(f, One):
        return "1"
    return "bot"


def format_sequent(s: Sequent) -> str:
    return "|- " + ", ".join(format_formula(f) for f in s)


# ---------------------------------------------------------------------------
# variable names, locations


@dataclass(frozen=True)
class VarName:
    index: int
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("variable size must be >= 1")
        if self.index < 0:
            raise ValueError("variable index must be a natural")


class Basis:
    """Maps variable names to (index, size) and optional test projects.

    Tests for a name live on the carrier {0, ..., size-1} and are
    delocated onto atom occurrences when membership evidence is built.
    """

    def __init__(self, names: dict[str, VarName] | None = None,
                 tests: dict[str, list[Project]] | None = None):
        self.names = dict(names or {})
        self.tests = dict(tests or {})
        indices = [vn.index for vn in self.names.values()]
        if len(set(indices)) != len(indices):
            raise ValueError("variable indices must be distinct")
        for name, ps in self.tests.items():
            size = self.names[name].size
            want = frozenset(range(size))
            for p in ps:
                if p.carrier != want:
                    raise ValueError(f"test for {name} must have carrier 0..{size - 1}")

    def lookup(self, name: str) -> VarName:
        try:
            return self.names[name]
        except KeyError:
            raise ProofError(f"unknown variable name {name!r}") from None

    def registered(self, name: str) -> bool:
        return name in self.names

    def extended_for(self, proof: "ProofTree") -> "Basis":
        """Register any undeclared names with size 1 and fresh indices,
        in first-use order."""
        names = dict(self.names)
        used = {vn.index for vn in names.values()}
        fresh = 0
        for name in _axiom_names(proof):
            if name in names:
                continue
            while fresh in used:
                fresh += 1
            names[name] = VarName(fresh, 1)
            used.add(fresh)
        return Basis(names, self.tests)


def delta(n: int, m: int) -> int:
    """The pairing bijection (n, m) -> 2^n (2m + 1) - 1."""
    if n < 0 or m < 0:
        raise ValueError("delta takes naturals")
    return (1 << n) * (2 * m + 1) - 1


def delta_inv(k: int) -> tuple[int, int]:
    """Inverse of :func:`delta`."""
    if k < 0:
        raise ValueError("delta_inv takes naturals")
    v = k + 1
    n = (v & -v).bit_length() - 1
    odd = v >> n
    return n, (odd - 1) // 2


def var_location(name: str, j: int, basis: Basis) -> frozenset[int]:
    vn = basis.lookup(name)
    return frozenset(delta(vn.index, j * vn.size + x) for x in range(vn.size))


def formula_location(f: Formula, basis: Basis) -> frozenset[int]:
    """The set of vertices a formula occupies; empty for the units."""
    if isinstance(f, (Var, NegVar)):
        if f.j is None:
            raise ProofError("formula is not localized")
        return var_location(f.name, f.j, basis)
    if isinstance(f, (Tensor, Par)):
        left = formula_location(f.left, basis)
        right = formula_location(f.right, basis)
        if left & right:
            raise ProofError(
                f"subformula locations overlap at vertex {min(left & right)}"
            )
        return left | right
    return frozenset()


def sequent_location(s: Sequent, basis: Basis) -> frozenset[int]:
    out: frozenset[int] = frozenset()
    for f in s:
        loc = formula_location(f, basis)
        if out & loc:
            raise ProofError(f"sequent formulas overlap at vertex {min(out & loc)}")
        out |= loc
    return out


# ---------------------------------------------------------------------------
# proof trees


@dataclass(frozen=True)
class Ax:
    name: str
    j: int | None
    jp: int | None


@dataclass(frozen=True)
class OneRule:
    pass


@dataclass(frozen=True)
class BotRule:
    premise: "ProofTree"


@dataclass(frozen=True)
class ParRule:
    premise: "ProofTree"


@dataclass(frozen=True)
class TensorRule:
    left: "ProofTree"
    right: "ProofTree"


@dataclass(frozen=True)
class CutRule:
    left: "ProofTree"
    right: "ProofTree"


@dataclass(frozen=True)
class MixRule:
    left: "ProofTree"
    right: "ProofTree"


@dataclass(frozen=True)
class ExRule:
    premise: "ProofTree"
    i: int
    j: int


ProofTree = Union[Ax, OneRule, BotRule, ParRule, TensorRule, CutRule, MixRule, ExRule]


def _axiom_names(p: ProofTree) -> list[str]:
    if isinstance(p, Ax):
        return [p.name]
    if isinstance(p, (OneRule,)):
        return []
    if isinstance(p, (BotRule, ParRule)):
        return _axiom_names(p.premise)
    if isinstance(p, ExRule):
        return _axiom_names(p.premise)
    return _axiom_names(p.left) + _axiom_names(p.right)


def conclusion(p: ProofTree) -> Sequent:
    """The conclusion sequent, by structural recursion.

    Performs arity checks only; rule side conditions live in
    :func:`check_proof`.
    """
    if isinstance(p, Ax):
        return (Var(p.name, p.j), NegVar(p.name, p.jp))
    if isinstance(p, OneRule):
        return (One(),)
    if isinstance(p, BotRule):
        return conclusion(p.premise) + (Bottom(),)
    if isinstance(p, ParRule):
        c = conclusion(p.premise)
        if len(c) < 2:
            raise ProofError("par needs at least two conclusion formulas")
        return c[:-2] + (Par(c[-2], c[-1]),)
    if isinstance(p, TensorRule):
        cl, cr = conclusion(p.left), conclusion(p.right)
        if not cl or not cr:
            raise ProofError("tensor premises must have a conclusion formula")
        return cl[:-1] + cr[:-1] + (Tensor(cl[-1], cr[-1]),)
    if isinstance(p, CutRule):
        cl, cr = conclusion(p.left), conclusion(p.right)
        if not cl or not cr:
            raise ProofError("cut premises must have a conclusion formula")
        return cl[:-1] + cr[:-1]
    if isinstance(p, MixRule):
        return conclusion(p.left) + conclusion(p.right)
    if isinstance(p, ExRule):
        c = conclusion(p.premise)
        if not (0 <= p.i < len(c) and 0 <= p.j < len(c)):
            raise ProofError(f"exchange positions {p.i},{p.j} out of range")
        lst = list(c)
        lst[p.i], lst[p.j] = lst[p.j], lst[p.i]
        return tuple(lst)
    raise ProofError(f"unknown proof node {p!r}")


def check_proof(p: ProofTree, basis: Basis) -> Sequent:
    """Validate every rule's side conditions and return the conclusion.

    Checks: axioms localized with j != j', location disjointness for
    tensor/cut/mix, duality of cut formulas, pairwise disjointness inside
    every sequent, and global linearity of axiom occurrences.
    """
    positives: list[tuple[str, int]] = []
    negatives: list[tuple[str, int]] = []

    def walk(node: ProofTree) -> Sequent:
        if isinstance(node, Ax):
            if node.j is None or node.jp is None:
                raise ProofError("axiom is not localized")
            if node.j == node.jp:
                raise ProofError(f"axiom requires distinct indices, got {node.j} twice")
            basis.lookup(node.name)
            positives.append((node.name, node.j))
            negatives.append((node.name, node.jp))
        elif isinstance(node, BotRule):
            walk(node.premise)
        elif isinstance(node, ParRule):
            walk(node.premise)
        elif isinstance(node, ExRule):
            walk(node.premise)
        elif isinstance(node, TensorRule):
            cl, cr = walk(node.left), walk(node.right)
            shared = sequent_location(cl, basis) & sequent_location(cr, basis)
            if shared:
                raise ProofError(f"tensor premises overlap at vertex {min(shared)}")
        elif isinstance(node, CutRule):
            cl, cr = walk(node.left), walk(node.right)
            if dual(cl[-1]) != cr[-1]:
                raise ProofError(
                    f"cut formulas are not dual: {format_formula(cl[-1])} vs "
                    f"{format_formula(cr[-1])}"
                )
            shared = sequent_location(cl[:-1], basis) & sequent_location(cr[:-1], basis)
            if shared:
                raise ProofError(f"cut contexts overlap at vertex {min(shared)}")
        elif isinstance(node, MixRule):
            cl, cr = walk(node.left), walk(node.right)
            shared = sequent_location(cl, basis) & sequent_location(cr, basis)
            if shared:
                raise ProofError(f"mix premises overlap at vertex {min(shared)}")
        elif not isinstance(node, OneRule):
            raise ProofError(f"unknown proof node {node!r}")
        c = conclusion(node)
        sequent_location(c, basis)  # raises on overlap inside the sequent
        return c

    result = walk(p)
    for occ, kind in ((positives, "variable"), (negatives, "negated variable")):
        seen = set()
        for name, j in occ:
            if (name, j) in seen:
                raise ProofError(f"{kind} {name}({j}) appears in two axiom rules")
            seen.add((name, j))
    return result


# ---------------------------------------------------------------------------
# parsing and serialization


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


@dataclass(frozen=True)
class ParsedProof:
    tree: ProofTree
    basis: Basis


def _tokenize(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for m in _TOKEN.finditer(body):
            yield m.group(0), lineno, m.start() + 1
    yield None, -1, -1


def parse_proof(text: str) -> ParsedProof:
    """Parse a proof file: optional ``var`` headers, then one prefix term.

    Variable names mentioned only in the term get size 1 and fresh
    indices, assigned in first-use order after the declared ones.
    """
    names: dict[str, VarName] = {}
    term_lines = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        stripped = body.strip()
        if stripped.startswith("var "):
            parts = stripped.split()
            if len(parts) < 2:
                raise ProofError("var header needs a name", lineno, 1)
            name = parts[1]
            fields = {"size": 1, "index": None}
            rest = parts[2:]
            if len(rest) % 2 != 0:
                raise ProofError("var header takes key/value pairs", lineno, 1)
            for key, value in zip(rest[::2], rest[1::2]):
                if key not in fields:
                    raise ProofError(f"unknown var header key {key!r}", lineno, 1)
                try:
                    fields[key] = int(value)
                except ValueError:
                    raise ProofError(f"var header {key} must be an integer", lineno, 1) from None
            index = fields["index"]
            if index is None:
                used = {vn.index for vn in names.values()}
                index = 0
                while index in used:
                    index += 1
            names[name] = VarName(index, fields["size"])
        else:
            term_lines.append(line)

    tokens = _tokenize("\n".join(term_lines))
    tok, line, col = next(tokens)

    def advance():
        nonlocal tok, line, col
        tok, line, col = next(tokens)

    def expect_int() -> int:
        if tok is None or not re.fullmatch(r"-?\d+", tok):
            raise ProofError(f"expected an integer, got {tok!r}", line, col)
        value = int(tok)
        advance()
        return value

    def parse_term() -> ProofTree:
        if tok != "(":
            raise ProofError(f"expected '(', got {tok!r}", line, col)
        advance()
        if tok is None:
            raise ProofError("unexpected end of input", line, col)
        head = tok
        advance()
        if head == "ax":
            if tok is None or tok in "()":
                raise ProofError("ax needs a variable name", line, col)
            name = tok
            advance()
            if tok == ")":
                node: ProofTree = Ax(name, None, None)
            else:
                j = expect_int()
                jp = expect_int()
                node = Ax(name, j, jp)
        elif head == "one":
            node = OneRule()
        elif head == "bot":
            node = BotRule(parse_term())
        elif head == "par":
            node = ParRule(parse_term())
        elif head == "tensor":
            node = TensorRule(parse_term(), parse_term())
        elif head == "cut":
            node = CutRule(parse_term(), parse_term())
        elif head == "mix":
            node = MixRule(parse_term(), parse_term())
        elif head == "ex":
            node = ExRule(parse_term(), expect_int(), expect_int())
        else:
            raise ProofError(f"unknown rule {head!r}", line, col)
        if tok != ")":
            raise ProofError(f"expected ')', got {tok!r}", line, col)
        advance()
        return node

    tree = parse_term()
    if tok is not None:
        raise ProofError(f"trailing input {tok!r}", line, col)
    basis = Basis(names).extended_for(tree)
    return ParsedProof(tree, basis)


def serialize_proof(p: ProofTree, basis: Basis | None = None) -> str:
    """Render a proof back to its file form (headers plus one term)."""
    lines = []
    if basis is not None:
        for name in sorted(set(_axiom_names(p))):
            vn = basis.lookup(name)
            lines.append(f"var {name} index {vn.index} size {vn.size}")

    def term(node: ProofTree) -> str:
        if isinstance(node, Ax):
            if node.j is None:
                return f"(ax {node.name})"
            return f"(ax {node.name} {node.j} {node.jp})"
        if isinstance(node, OneRule):
            return "(one)"
        if isinstance(node, BotRule):
            return f"(bot {term(node.premise)})"
        if isinstance(node, ParRule):
            return f"(par {term(node.premise)})"
        if isinstance(node, TensorRule):
            return f"(tensor {term(node.left)} {term(node.right)})"
        if isinstance(node, CutRule):
            return f"(cut {term(node.left)} {term(node.right)})"
        if isinstance(node, MixRule):
            return f"(mix {term(node.left)} {term(node.right)})"
        return f"(ex {term(node.premise)} {node.i} {node.j})"

    lines.append(term(p))
    return "\n".join(lines) + "\n"


def localize(p: ProofTree, enumeration: Iterable[tuple[int, int]]) -> ProofTree:
    """Fill the axiom indices of a name-level proof.

    ``enumeration`` gives one (j, j') pair per axiom, in depth-first
    order.  Per variable name it must be injective on positive slots and
    on negative slots separately (an index may appear once with each
    polarity: that is how cut formulas line up).
    """
    pairs = list(enumeration)
    counter = [0]
    used_pos: dict[str, set[int]] = {}
    used_neg: dict[str, set[int]] = {}

    def walk(node: ProofTree) -> ProofTree:
        if isinstance(node, Ax):
            if counter[0] >= len(pairs):
                raise ProofError("enumeration has fewer pairs than axioms")
            j, jp = pairs[counter[0]]
            counter[0] += 1
            for value, used in ((j, used_pos), (jp, used_neg)):
                slots = used.setdefault(node.name, set())
                if value in slots:
                    raise ProofError(f"enumeration reuses index {value} for {node.name}")
                slots.add(value)
            return Ax(node.name, j, jp)
        if isinstance(node, OneRule):
            return node
        if isinstance(node, BotRule):
            return BotRule(walk(node.premise))
        if isinstance(node, ParRule):
            return ParRule(walk(node.premise))
        if isinstance(node, ExRule):
            return ExRule(walk(node.premise), node.i, node.j)
        if isinstance(node, TensorRule):
            return TensorRule(walk(node.left), walk(node.right))
        if isinstance(node, CutRule):
            return CutRule(walk(node.left), walk(node.right))
        return MixRule(walk(node.left), walk(node.right))

    out = walk(p)
    if counter[0] != len(pairs):
        raise ProofError("enumeration has more pairs than axioms")
    return out


def erase_names(p: ProofTree) -> ProofTree:
    """Forget all axiom localizations (the name-level proof)."""
    return localize_map(p, lambda ax: Ax(ax.name, None, None))


def localize_map(p: ProofTree, f) -> ProofTree:
    if isinstance(p, Ax):
        return f(p)
    if isinstance(p, OneRule):
        return p
    if isinstance(p, BotRule):
        return BotRule(localize_map(p.premise, f))
    if isinstance(p, ParRule):
        return ParRule(localize_map(p.premise, f))
    if isinstance(p, ExRule):
        return ExRule(localize_map(p.premise, f), p.i, p.j)
    if isinstance(p, TensorRule):
        return TensorRule(localize_map(p.left, f), localize_map(p.right, f))
    if isinstance(p, CutRule):
        return CutRule(localize_map(p.left, f), localize_map(p.right, f))
    return MixRule(localize_map(p.left, f), localize_map(p.right, f))


# ---------------------------------------------------------------------------
# interpretation


def interpret(p: ProofTree, basis: Basis) -> Project:
    """The project of a checked proof.

    Axioms become faxes between the two atom locations; tensor and mix
    become the tensor of projects, cut the cut, everything else is the
    identity.  The result lives on the location of the conclusion.
    """
    if isinstance(p, Ax):
        vn = basis.lookup(p.name)
        mapping = {
            delta(vn.index, p.j * vn.size + x): delta(vn.index, p.jp * vn.size + x)
            for x in range(vn.size)
        }
        return fax(Delocation(mapping))
    if isinstance(p, OneRule):
        return Project(0.0, WeightedGraph.empty())
    if isinstance(p, (BotRule, ParRule)):
        return interpret(p.premise, basis)
    if isinstance(p, ExRule):
        return interpret(p.premise, basis)
    if isinstance(p, (TensorRule, MixRule)):
        return tensor(interpret(p.left, basis), interpret(p.right, basis))
    if isinstance(p, CutRule):
        return cut(interpret(p.left, basis), interpret(p.right, basis))
    raise ProofError(f"unknown proof node {p!r}")


# ---------------------------------------------------------------------------
# cut elimination


def _principal(node: ProofTree, pos: int, length: int) -> bool:
    if isinstance(node, (Ax, OneRule)):
        return True
    if isinstance(node, (BotRule, ParRule, TensorRule)):
        return pos == length - 1
    return False


def _reorder(p: ProofTree, target: Sequent) -> ProofTree:
    """Append exchanges until the conclusion equals ``target`` exactly."""
    current = list(conclusion(p))
    if len(current) != len(target):
        raise ProofError("internal: reorder on mismatched sequents")
    out = p
    for k, want in enumerate(target):
        pos = next((i for i in range(k, len(current)) if current[i] == want), None)
        if pos is None:
            raise ProofError("internal: reorder on mismatched multisets")
        if pos != k:
            out = ExRule(out, k, pos)
            current[k], current[pos] = current[pos], current[k]
    return out


def _bring_last(p: ProofTree, pos: int) -> ProofTree:
    n = len(conclusion(p))
    return p if pos == n - 1 else ExRule(p, pos, n - 1)


def _bring_two_last(p: ProofTree, pos_b: int, pos_c: int) -> ProofTree:
    n = len(conclusion(p))
    if pos_c != n - 1:
        p = ExRule(p, pos_c, n - 1)
        if pos_b == n - 1:
            pos_b = pos_c
    if pos_b != n - 2:
        p = ExRule(p, pos_b, n - 2)
    return p


def _rename_axiom(p: ProofTree, name: str, old: int, new: int, positive: bool):
    if isinstance(p, Ax):
        if positive and p.name == name and p.j == old:
            if p.jp == new:
                raise ProofError("axiom renaming would collapse its two indices")
            return Ax(p.name, new, p.jp), 1
        if not positive and p.name == name and p.jp == old:
            if p.j == new:
                raise ProofError("axiom renaming would collapse its two indices")
            return Ax(p.name, p.j, new), 1
        return p, 0
    if isinstance(p, OneRule):
        return p, 0
    if isinstance(p, BotRule):
        q, n = _rename_axiom(p.premise, name, old, new, positive)
        return BotRule(q), n
    if isinstance(p, ParRule):
        q, n = _rename_axiom(p.premise, name, old, new, positive)
        return ParRule(q), n
    if isinstance(p, ExRule):
        q, n = _rename_axiom(p.premise, name, old, new, positive)
        return ExRule(q, p.i, p.j), n
    ctor = type(p)
    ql, nl = _rename_axiom(p.left, name, old, new, positive)
    qr, nr = _rename_axiom(p.right, name, old, new, positive)
    return ctor(ql, qr), nl + nr


def _commute(p: ProofTree, pa: int, q: ProofTree, qa: int, target: Sequent) -> ProofTree:
    """Push a cut above a rule in which the cut formula is a context
    formula, rebuilding the rule afterwards."""
    cq = conclusion(q)
    q_rest = cq[:qa] + cq[qa + 1:]
    if isinstance(p, BotRule):
        cpre = conclusion(p.premise)
        t2 = cpre[:pa] + cpre[pa + 1:] + q_rest
        r = _reduce_cut(p.premise, pa, q, qa, t2)
        return _reorder(BotRule(r), target)
    if isinstance(p, ParRule):
        cpre = conclusion(p.premise)
        t2 = cpre[:pa] + cpre[pa + 1:] + q_rest
        r = _reduce_cut(p.premise, pa, q, qa, t2)
        pos_b, pos_c = len(cpre) - 3, len(cpre) - 2  # operands shifted by the removal
        return _reorder(ParRule(_bring_two_last(r, pos_b, pos_c)), target)
    if isinstance(p, TensorRule):
        cl, cr = conclusion(p.left), conclusion(p.right)
        if pa < len(cl) - 1:
            t2 = cl[:pa] + cl[pa + 1:] + q_rest
            r = _reduce_cut(p.left, pa, q, qa, t2)
            r = _bring_last(r, len(cl) - 2)
            return _reorder(TensorRule(r, p.right), target)
        pa_r = pa - (len(cl) - 1)
        t2 = cr[:pa_r] + cr[pa_r + 1:] + q_rest
        r = _reduce_cut(p.right, pa_r, q, qa, t2)
        r = _bring_last(r, len(cr) - 2)
        return _reorder(TensorRule(p.left, r), target)
    if isinstance(p, MixRule):
        cl, cr = conclusion(p.left), conclusion(p.right)
        if pa < len(cl):
            t2 = cl[:pa] + cl[pa + 1:] + q_rest
            r = _reduce_cut(p.left, pa, q, qa, t2)
            return _reorder(MixRule(r, p.right), target)
        pa_r = pa - len(cl)
        t2 = cr[:pa_r] + cr[pa_r + 1:] + q_rest
        r = _reduce_cut(p.right, pa_r, q, qa, t2)
        return _reorder(MixRule(p.left, r), target)
    raise ProofError(f"internal: cannot commute past {type(p).__name__}")


def _reduce_cut(p: ProofTree, pa: int, q: ProofTree, qa: int, target: Sequent) -> ProofTree:
    """Eliminate one cut between cut-free proofs.

    ``p``/``q`` prove sequents containing the dual cut formulas at
    positions ``pa``/``qa``; the result is cut-free with conclusion
    exactly ``target`` (the two contexts in order).
    """
    cp, cq = conclusion(p), conclusion(q)
    a = cp[pa]
    if dual(a) != cq[qa]:
        raise ProofError("internal: cut formulas are not dual")

    if isinstance(p, ExRule):
        inner = p.j if pa == p.i else p.i if pa == p.j else pa
        return _reduce_cut(p.premise, inner, q, qa, target)
    if isinstance(q, ExRule):
        inner = q.j if qa == q.i else q.i if qa == q.j else qa
        return _reduce_cut(p, pa, q.premise, inner, target)

    if isinstance(p, Ax):
        if pa == 1:
            renamed, n = _rename_axiom(q, p.name, p.jp, p.j, positive=True)
        else:
            renamed, n = _rename_axiom(q, p.name, p.j, p.jp, positive=False)
        if n != 1:
            raise ProofError("internal: axiom occurrence not unique during renaming")
        return _reorder(renamed, target)
    if isinstance(q, Ax):
        return _reduce_cut(q, qa, p, pa, target)

    if not _principal(p, pa, len(cp)):
        return _commute(p, pa, q, qa, target)
    if not _principal(q, qa, len(cq)):
        return _reduce_cut(q, qa, p, pa, target)

    if isinstance(p, OneRule):
        if not isinstance(q, BotRule):
            raise ProofError("internal: dual of a principal one is not a bot")
        return _reorder(q.premise, target)
    if isinstance(q, OneRule):
        return _reduce_cut(q, qa, p, pa, target)

    if isinstance(p, TensorRule) and isinstance(q, ParRule):
        c1, c2 = conclusion(p.left), conclusion(p.right)
        cq1 = conclusion(q.premise)
        b, c = c1[-1], c2[-1]
        if dual(b) != cq1[-2] or dual(c) != cq1[-1]:
            raise ProofError("internal: tensor/par operands are not dual")
        t1 = c1[:-1] + cq1[:-2] + (cq1[-1],)
        r1 = _reduce_cut(p.left, len(c1) - 1, q.premise, len(cq1) - 2, t1)
        t2 = c2[:-1] + t1[:-1]
        r2 = _reduce_cut(p.right, len(c2) - 1, r1, len(t1) - 1, t2)
        return _reorder(r2, target)
    if isinstance(p, ParRule) and isinstance(q, TensorRule):
        return _reduce_cut(q, qa, p, pa, target)

    raise ProofError(f"internal: unhandled cut configuration {type(p).__name__}/{type(q).__name__}")


def eliminate_cuts(p: ProofTree) -> ProofTree:
    """Rewrite a checked proof into an equivalent cut-free proof.

    The conclusion sequent is preserved exactly (order included) and so
    is the interpretation.  Key steps: axiom cuts relabel the matching
    axiom in the other premise; tensor/par cuts split into two smaller
    cuts; everything else commutes upward.
    """
    if isinstance(p, (Ax, OneRule)):
        return p
    if isinstance(p, BotRule):
        return BotRule(eliminate_cuts(p.premise))
    if isinstance(p, ParRule):
        return ParRule(eliminate_cuts(p.premise))
    if isinstance(p, ExRule):
        return ExRule(eliminate_cuts(p.premise), p.i, p.j)
    if isinstance(p, TensorRule):
        return TensorRule(eliminate_cuts(p.left), eliminate_cuts(p.right))
    if isinstance(p, MixRule):
        return MixRule(eliminate_cuts(p.left), eliminate_cuts(p.right))
    if isinstance(p, CutRule):
        left = eliminate_cuts(p.left)
        right = eliminate_cuts(p.right)
        cl, cr = conclusion(left), conclusion(right)
        target = cl[:-1] + cr[:-1]
        return _reduce_cut(left, len(cl) - 1, right, len(cr) - 1, target)
    raise ProofError(f"unknown proof node {p!r}")


def is_cut_free(p: ProofTree) -> bool:
    if isinstance(p, CutRule):
        return False
    if isinstance(p, (Ax, OneRule)):
        return True
    if isinstance(p, (BotRule, ParRule, ExRule)):
        return is_cut_free(p.premise)
    return is_cut_free(p.left) and is_cut_free(p.right)


# ---------------------------------------------------------------------------
# switching tests


def _par_count(f: Formula) -> int:
    if isinstance(f, Par):
        return 1 + _par_count(f.left) + _par_count(f.right)
    if isinstance(f, Tensor):
        return _par_count(f.left) + _par_count(f.right)
    return 0


def _emit_atoms(f: Formula, bits: int, base: int, basis: Basis, out: list[int]) -> None:
    """Append atom vertices in the traversal order of switching ``bits``.

    Par premise order flips with the node's bit; par bit positions are
    assigned in fixed pre-order, independent of the switching.
    """
    if isinstance(f, (Var, NegVar)):
        out.extend(sorted(var_location(f.name, f.j, basis)))
    elif isinstance(f, Tensor):
        _emit_atoms(f.left, bits, base, basis, out)
        _emit_atoms(f.right, bits, base + _par_count(f.left), basis, out)
    elif isinstance(f, Par):
        left_base = base + 1
        right_base = base + 1 + _par_count(f.left)
        if (bits >> base) & 1 == 0:
            _emit_atoms(f.left, bits, left_base, basis, out)
            _emit_atoms(f.right, bits, right_base, basis, out)
        else:
            _emit_atoms(f.right, bits, right_base, basis, out)
            _emit_atoms(f.left, bits, left_base, basis, out)


def _matching_of(f: Project) -> dict[int, int]:
    s = simplify(f.graph)
    partner: dict[int, int] = {}
    for (v, w), _ in s.items():
        partner[v] = w
    if set(partner) != set(f.carrier) or any(partner[partner[v]] != v for v in partner):
        raise ProofError("interpretation is not a perfect matching; cannot build tests")
    return partner


def switching_tests(p: ProofTree, basis: Basis) -> list[Project]:
    """One test project per switching of the conclusion's par nodes.

    Each switching orders the atom vertices by a depth-first traversal of
    the conclusion (par premise order given by the switch, tensor and
    sequent order fixed); composing the proof's axiom matching with the
    cyclic successor of that order gives the test permutation.  Its graph
    (one designated edge at weight 1/2, the rest at 1) is orthogonal to
    the interpretation: the plugging has exactly one alternating circuit,
    of weight 1/2.

    Empty-carrier conclusions admit no vertex tests; the list is empty.
    """
    s = check_proof(p, basis)
    f = interpret(p, basis)
    if not f.carrier:
        return []
    sigma = _matching_of(f)
    n_pars = sum(_par_count(g) for g in s)
    tests = []
    for bits in range(1 << n_pars):
        order: list[int] = []
        base = 0
        for g in s:
            _emit_atoms(g, bits, base, basis, order)
            base += _par_count(g)
        successor = {order[k]: order[(k + 1) % len(order)] for k in range(len(order))}
        tau = {v: sigma[successor[v]] for v in order}
        least = min(tau.items())
        graph = WeightedGraph.build(
            f.carrier,
            [(v, w, 0.5 if (v, w) == least else 1.0) for v, w in sorted(tau.items())],
        )
        tests.append(Project(0.0, graph))
    return tests


def atom_tests(p: ProofTree, basis: Basis, cap: int = 32) -> list[Project]:
    """Membership evidence from basis-supplied atom tests.

    Tensors one delocated test per atom occurrence of the conclusion
    (every atom must have tests; at most ``cap`` combinations are
    produced).  An empty-carrier conclusion gets the positive-wager test
    on the empty graph.
    """
    s = check_proof(p, basis)
    atoms: list[tuple[str, int]] = []

    def collect(g: Formula) -> None:
        if isinstance(g, (Var, NegVar)):
            atoms.append((g.name, g.j))
        elif isinstance(g, (Tensor, Par)):
            collect(g.left)
            collect(g.right)

    for g in s:
        collect(g)
    if not atoms:
        return [Project(0.5, WeightedGraph.empty())]
    per_atom: list[list[Project]] = []
    for name, j in atoms:
        pool = basis.tests.get(name, [])
        if not pool:
            return []
        vn = basis.lookup(name)
        d = Delocation({x: delta(vn.index, j * vn.size + x) for x in range(vn.size)})
        per_atom.append([delocate(t, d) for t in pool])
    combos = itertools.islice(itertools.product(*per_atom), cap)
    out = []
    for combo in combos:
        t = combo[0]
        for extra in combo[1:]:
            t = tensor(t, extra)
        out.append(t)
    return out
