from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goimll.errors import ProofError
from goimll.generators import GEN_BASIS, random_proof, trial_rng
from goimll.graphs import WeightedGraph
from goimll.logic import (
    Ax,
    Basis,
    BotRule,
    CutRule,
    ExRule,
    MixRule,
    NegVar,
    One,
    OneRule,
    Par,
    ParRule,
    Tensor,
    TensorRule,
    Var,
    VarName,
    atom_tests,
    check_proof,
    conclusion,
    delta,
    delta_inv,
    eliminate_cuts,
    erase_names,
    format_sequent,
    formula_location,
    interpret,
    is_cut_free,
    localize,
    parse_proof,
    serialize_proof,
    switching_tests,
    var_location,
)
from goimll.projects import Delocation, Project, delocate, orthogonal, project_equal
from goimll.truth import is_successful

DATA = Path(__file__).parent / "data"

BASIS12 = Basis({"X1": VarName(1, 1), "X2": VarName(2, 1)})


def worked_proof():
    return parse_proof((DATA / "worked_proof.p").read_text())


class TestDelta:
    def test_base_values(self):
        assert delta(0, 0) == 0
        assert delta(1, 0) == 1
        assert delta(0, 1) == 2
        assert delta(2, 0) == 3

    @given(st.integers(min_value=0, max_value=10**4))
    @settings(max_examples=300)
    def test_roundtrip(self, k):
        n, m = delta_inv(k)
        assert delta(n, m) == k

    @given(st.integers(min_value=0, max_value=20), st.integers(min_value=0, max_value=1000))
    @settings(max_examples=300)
    def test_injective_pairs(self, n, m):
        assert delta_inv(delta(n, m)) == (n, m)


class TestLocations:
    def test_atom_location_size_one(self):
        basis = Basis({"X0": VarName(0, 1)})
        assert formula_location(Var("X0", 0), basis) == {0}

    def test_unit_location_empty(self):
        assert formula_location(One(), Basis()) == frozenset()

    def test_tensor_location_union(self):
        basis = Basis({"X0": VarName(0, 1), "X1": VarName(1, 1)})
        f = Tensor(Var("X0", 0), Var("X1", 0))
        assert formula_location(f, basis) == {0, 1}

    def test_sized_variable(self):
        basis = Basis({"X2": VarName(2, 2)})
        loc = var_location("X2", 1, basis)
        assert loc == {delta(2, 2), delta(2, 3)}

    def test_unknown_name(self):
        with pytest.raises(ProofError):
            formula_location(Var("Y", 0), Basis())

    def test_overlap_detected(self):
        basis = Basis({"X0": VarName(0, 1)})
        with pytest.raises(ProofError):
            formula_location(Tensor(Var("X0", 0), NegVar("X0", 0)), basis)


class TestParsing:
    def test_axiom(self):
        pp = parse_proof("(ax X1 3 97)")
        assert pp.tree == Ax("X1", 3, 97)
        assert conclusion(pp.tree) == (Var("X1", 3), NegVar("X1", 97))

    def test_one(self):
        assert parse_proof("(one)").tree == OneRule()

    def test_worked_proof_shape(self):
        pp = worked_proof()
        assert isinstance(pp.tree, ExRule)
        assert pp.basis.lookup("X1") == VarName(1, 1)
        assert pp.basis.lookup("X2") == VarName(2, 1)

    def test_unlocalized_axiom(self):
        pp = parse_proof("(ax X)")
        assert pp.tree == Ax("X", None, None)

    def test_syntax_error_position(self):
        with pytest.raises(ProofError) as err:
            parse_proof("(ax X1 3")
        assert "line" in str(err.value)

    def test_unknown_rule(self):
        with pytest.raises(ProofError):
            parse_proof("(because)")

    def test_roundtrip(self):
        pp = worked_proof()
        again = parse_proof(serialize_proof(pp.tree, pp.basis))
        assert again.tree == pp.tree
        assert again.basis.names == pp.basis.names

    def test_random_roundtrip(self):
        for t in range(30):
            rng = trial_rng(73, t)
            p = random_proof(rng, 10)
            assert parse_proof(serialize_proof(p, GEN_BASIS)).tree == p


class TestCheckProof:
    def test_worked_proof_conclusion(self):
        pp = worked_proof()
        s = check_proof(pp.tree, pp.basis)
        assert s == (
            Par(NegVar("X1", 23), NegVar("X2", 12)),
            Tensor(Var("X1", 3), Var("X2", 7)),
        )
        assert format_sequent(s) == "|- (X1(23)^ | X2(12)^), (X1(3) * X2(7))"

    def test_axiom_same_index_rejected(self):
        with pytest.raises(ProofError):
            check_proof(Ax("X1", 3, 3), BASIS12)

    def test_duplicate_axiom_occurrence_rejected(self):
        # X1(3) appears positively in two axioms; both copies are consumed
        # by local cuts, so only the linearity clause can reject this
        c1 = CutRule(ExRule(Ax("X1", 3, 4), 0, 1), Ax("X1", 6, 3))
        c2 = CutRule(ExRule(Ax("X1", 3, 7), 0, 1), Ax("X1", 8, 3))
        with pytest.raises(ProofError) as err:
            check_proof(MixRule(c1, c2), BASIS12)
        assert "two axiom rules" in str(err.value)

    def test_unlocalized_rejected(self):
        with pytest.raises(ProofError):
            check_proof(Ax("X1", None, None), BASIS12)

    def test_tensor_overlap_rejected(self):
        p = TensorRule(Ax("X1", 0, 1), Ax("X1", 1, 2))
        with pytest.raises(ProofError):
            check_proof(p, BASIS12)

    def test_cut_requires_duals(self):
        p = CutRule(Ax("X1", 0, 1), Ax("X1", 2, 3))
        with pytest.raises(ProofError):
            check_proof(p, BASIS12)


class TestLocalize:
    def test_single_axiom(self):
        p = localize(Ax("X", None, None), [(0, 1)])
        assert p == Ax("X", 0, 1)

    def test_relocalize_name_level_proof(self):
        name_level = erase_names(worked_proof().tree)
        relocalized = localize(name_level, [(97, 23), (3, 97), (7, 12)])
        assert relocalized == worked_proof().tree

    def test_two_localizations_are_delocations(self):
        name_level = erase_names(worked_proof().tree)
        basis = BASIS12
        e1 = [(97, 23), (3, 97), (7, 12)]
        e2 = [(50, 60), (40, 50), (8, 9)]
        p1, p2 = localize(name_level, e1), localize(name_level, e2)
        f1, f2 = interpret(p1, basis), interpret(p2, basis)

        # build the vertex map from matching axiom parameters
        mapping = {}

        def collect(p, acc):
            if isinstance(p, Ax):
                acc.append(p)
            elif isinstance(p, (BotRule, ParRule, ExRule)):
                collect(p.premise, acc)
            elif isinstance(p, (TensorRule, CutRule, MixRule)):
                collect(p.left, acc)
                collect(p.right, acc)

        ax1, ax2 = [], []
        collect(p1, ax1)
        collect(p2, ax2)
        for a1, a2 in zip(ax1, ax2):
            vn = basis.lookup(a1.name)
            for x in range(vn.size):
                mapping[delta(vn.index, a1.j * vn.size + x)] = delta(vn.index, a2.j * vn.size + x)
                mapping[delta(vn.index, a1.jp * vn.size + x)] = delta(vn.index, a2.jp * vn.size + x)
        moved = delocate(f1, Delocation({k: v for k, v in mapping.items() if k in f1.carrier}))
        assert project_equal(moved, f2, tol=0.0)

    def test_non_injective_rejected(self):
        p = MixRule(Ax("X", None, None), Ax("X", None, None))
        with pytest.raises(ProofError):
            localize(p, [(0, 1), (0, 2)])  # positive slot 0 reused


class TestInterpret:
    def test_axiom_fax(self):
        basis = Basis({"X": VarName(0, 1)})
        f = interpret(Ax("X", 0, 1), basis)
        assert f.wager == 0.0
        assert sorted(f.graph.edge_triples()) == [
            (delta(0, 0), delta(0, 1), 1.0),
            (delta(0, 1), delta(0, 0), 1.0),
        ]

    def test_one_is_empty_project(self):
        f = interpret(OneRule(), Basis())
        assert f.wager == 0.0 and f.carrier == frozenset()

    def test_sized_axiom(self):
        basis = Basis({"X2": VarName(2, 2)})
        f = interpret(Ax("X2", 0, 1), basis)
        assert f.carrier == {delta(2, 0), delta(2, 1), delta(2, 2), delta(2, 3)}
        assert len(f.graph.edges) == 4

    def test_worked_proof_successful_and_invariant(self):
        pp = worked_proof()
        f = interpret(pp.tree, pp.basis)
        assert is_successful(f).successful
        assert f.carrier == {13, 59, 93, 99}
        g = interpret(eliminate_cuts(pp.tree), pp.basis)
        assert project_equal(f, g, tol=0.0)


class TestEliminateCuts:
    def test_worked_proof_normal_form(self):
        pp = worked_proof()
        nf = eliminate_cuts(pp.tree)
        assert is_cut_free(nf)
        assert check_proof(nf, pp.basis) == check_proof(pp.tree, pp.basis)
        axioms = []

        def collect(p):
            if isinstance(p, Ax):
                axioms.append(p)
            elif isinstance(p, (BotRule, ParRule, ExRule)):
                collect(p.premise)
            elif isinstance(p, (TensorRule, CutRule, MixRule)):
                collect(p.left)
                collect(p.right)

        collect(nf)
        assert Ax("X1", 3, 23) in axioms

    def test_cut_free_unchanged(self):
        p = MixRule(Ax("X1", 0, 1), OneRule())
        assert eliminate_cuts(p) == p

    def test_one_bot_cut(self):
        p = CutRule(OneRule(), BotRule(Ax("X1", 0, 1)))
        s = check_proof(p, BASIS12)
        nf = eliminate_cuts(p)
        assert is_cut_free(nf)
        assert check_proof(nf, BASIS12) == s
        assert project_equal(interpret(p, BASIS12), interpret(nf, BASIS12), tol=0.0)

    def test_tensor_par_cut(self):
        # the key case: a tensor of axioms cut against its par-shaped dual
        left = TensorRule(Ax("X1", 0, 1), Ax("X2", 0, 1))
        p = CutRule(left, _eta_par_partner())
        s = check_proof(p, BASIS12)
        nf = eliminate_cuts(p)
        assert is_cut_free(nf)
        assert check_proof(nf, BASIS12) == s
        assert project_equal(interpret(p, BASIS12), interpret(nf, BASIS12), tol=0.0)

    def test_random_proofs_invariant(self):
        for t in range(60):
            rng = trial_rng(79, t)
            p = random_proof(rng, 12)
            s = check_proof(p, GEN_BASIS)
            nf = eliminate_cuts(p)
            assert is_cut_free(nf)
            assert check_proof(nf, GEN_BASIS) == s
            assert project_equal(interpret(p, GEN_BASIS), interpret(nf, GEN_BASIS), tol=0.0)


def _eta_par_partner():
    """|- X1(2)^, X2(2)^, (X1(1) | X2(1)): dual of X1(1)^ (x) X2(1)^."""
    qb = ExRule(Ax("X1", 1, 2), 0, 1)  # |- X1(2)^, X1(1)
    qc = ExRule(Ax("X2", 1, 2), 0, 1)  # |- X2(2)^, X2(1)
    m = MixRule(qb, qc)  # |- X1(2)^, X1(1), X2(2)^, X2(1)
    m = ExRule(m, 1, 2)  # |- X1(2)^, X2(2)^, X1(1), X2(1)
    return ParRule(m)


class TestSwitchingTests:
    def test_no_par_single_test(self):
        p = TensorRule(Ax("X1", 0, 1), Ax("X2", 0, 1))
        # conclusion |- X1(1)^, X2(1)^, X1(0) (x) X2(0): wait -- two contexts retained
        tests = switching_tests(p, BASIS12)
        assert len(tests) == 1

    def test_worked_proof_two_tests(self):
        pp = worked_proof()
        tests = switching_tests(pp.tree, pp.basis)
        assert len(tests) == 2

    def test_tests_orthogonal_to_interpretation(self):
        pp = worked_proof()
        f = interpret(pp.tree, pp.basis)
        for t in switching_tests(pp.tree, pp.basis):
            assert t.wager == 0.0
            assert t.carrier == f.carrier
            assert orthogonal(f, t)

    def test_weight_structure(self):
        pp = worked_proof()
        for t in switching_tests(pp.tree, pp.basis):
            weights = sorted(w for _, _, w in t.graph.edge_triples())
            assert weights[0] == 0.5 and all(w == 1.0 for w in weights[1:])

    def test_empty_carrier_no_tests(self):
        assert switching_tests(OneRule(), Basis()) == []

    def test_random_proofs_orthogonal(self):
        for t in range(40):
            rng = trial_rng(83, t)
            p = random_proof(rng, 10)
            f = interpret(p, GEN_BASIS)
            for test in switching_tests(p, GEN_BASIS):
                assert orthogonal(f, test)


class TestAtomTests:
    def _loop_basis(self):
        loop1 = Project(0.0, WeightedGraph.build([0], [(0, 0, 0.5)]))
        loop2 = Project(
            0.0, WeightedGraph.build([0, 1], [(0, 0, 0.5), (1, 1, 0.5)])
        )
        return Basis(
            {"X0": VarName(0, 1), "X1": VarName(1, 1), "X2": VarName(2, 2)},
            {"X0": [loop1], "X1": [loop1], "X2": [loop2]},
        )

    def test_axiom_sequent(self):
        basis = self._loop_basis()
        p = Ax("X1", 0, 1)
        tests = atom_tests(p, basis)
        assert len(tests) == 1
        f = interpret(p, basis)
        assert orthogonal(f, tests[0])

    def test_empty_carrier_wager_test(self):
        tests = atom_tests(OneRule(), Basis())
        assert len(tests) == 1 and tests[0].wager > 0

    def test_random_proofs(self):
        basis = self._loop_basis()
        for t in range(30):
            rng = trial_rng(89, t)
            p = random_proof(rng, 10, basis)
            f = interpret(p, basis)
            for test in atom_tests(p, basis):
                assert orthogonal(f, test)
