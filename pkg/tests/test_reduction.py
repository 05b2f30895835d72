import pytest

from realpred.formula import (
    And,
    Diff,
    Exists,
    Forall,
    Implies,
    IsInt,
    Not,
    Or,
    Pred,
    alpha_equal,
    free_vars,
    walk,
)
from realpred.fragments import FragmentLabel, classify
from realpred.reduction import (
    compile_machine,
    head_formula,
    n_bits,
    paxioms,
    pred_sup_def,
    rel_def,
    state_codes,
    state_formula,
    succ_sup_def,
    transition_formula,
)
from realpred.syntax import print_formula
from conftest import machine_corpus


def diff_constants(f):
    return {a.c for a in walk(f) if isinstance(a, Diff)}


def predicate_names(f):
    return {a.name for a in walk(f) if isinstance(a, Pred)}


class TestStateCodes:
    def test_width_padding(self, m2, corpus):
        assert n_bits(m2) == 2
        assert n_bits(corpus["binary_counter"]) == 2
        assert n_bits(corpus["seventeen_stepper"]) == 5

    def test_codes_distinct_and_uniform(self, corpus):
        for m in corpus.values():
            codes = state_codes(m)
            widths = {len(c) for c in codes.values()}
            assert widths == {n_bits(m)}
            assert len(set(codes.values())) == len(codes)

    def test_declaration_order(self, m2):
        codes = state_codes(m2)
        assert codes["qI"] == (0, 0)
        assert codes["qF"] == (0, 1)


class TestRelDef:
    def test_shape(self):
        f = rel_def("x")
        assert isinstance(f, And) and len(f.items) == 2
        left, right = f.items
        assert isinstance(left, Exists) and isinstance(right, Exists)

    def test_order_only(self):
        assert FragmentLabel.MSO_OR in classify(rel_def("x")).best_labels

    def test_free_vars(self):
        assert free_vars(rel_def("x")) == {"x"}


class TestSuccSup:
    def test_pred_is_argument_swap(self):
        assert alpha_equal(pred_sup_def("a", "b"), succ_sup_def("b", "a"))

    def test_free_vars(self):
        assert free_vars(succ_sup_def("a", "b")) == {"a", "b"}

    def test_three_rel_expansions(self):
        f = succ_sup_def("a", "b")
        rels = [
            n
            for n in walk(f)
            if isinstance(n, And)
            and len(n.items) == 2
            and all(isinstance(g, Exists) for g in n.items)
        ]
        assert len(rels) == 3


class TestPaxioms:
    def test_axiom1_chains_anchors(self):
        a1 = paxioms(2).items[0]
        assert [type(atom) for atom in a1.items] == [Diff, Diff, Diff]
        assert [(atom.x, atom.y, atom.c) for atom in a1.items] == [
            ("v1", "v0", 1),
            ("v2", "v1", 1),
            ("v3", "v2", 1),
        ]

    def test_axiom3_shape(self):
        a3 = paxioms(2).items[2]
        assert isinstance(a3, Forall)
        assert isinstance(a3.body, Implies)
        assert isinstance(a3.body.consequent, Pred)

    def test_axiom4_degenerate_for_two_bits(self):
        a4 = paxioms(2).items[3]
        assert isinstance(a4, Exists) and len(a4.vars) == 2
        # one interior clause: bounds plus a single supporting-successor link
        assert len(a4.body.items) == 3

    def test_axiom4_chain_grows(self):
        a4 = paxioms(4).items[3]
        assert isinstance(a4, Exists) and len(a4.vars) == 4
        assert len(a4.body.items) == 2 + 3

    def test_rejects_narrow_codes(self):
        with pytest.raises(ValueError):
            paxioms(1)

    def test_constants_and_predicate(self):
        f = paxioms(3)
        assert diff_constants(f) == {1, 3}
        assert predicate_names(f) == {"P"}

    def test_closed_up_to_anchors(self):
        assert free_vars(paxioms(3)) == {"v0", "v1", "v2", "v3"}


class TestStateFormula:
    def test_code_literals(self, m2):
        f = state_formula(m2, "qI", "x")  # code 00
        bits = f.items[1].body.items[-2:]
        assert all(isinstance(b, Not) and isinstance(b.body, Pred) for b in bits)
        g = state_formula(m2, "qF", "x")  # code 01
        bits = g.items[1].body.items[-2:]
        assert isinstance(bits[0], Not) and isinstance(bits[1], Pred)

    def test_chain_length_two_bits(self, m2):
        f = state_formula(m2, "qI", "x")
        block = f.items[1]
        assert isinstance(block, Exists) and len(block.vars) == 2
        # conjuncts: anchor equality, one supporting-successor link, two bit literals
        assert len(block.body.items) == 4

    def test_unknown_state(self, m2):
        with pytest.raises(ValueError):
            state_formula(m2, "nope", "x")

    def test_start_embeds_initial_state(self, m2):
        out = compile_machine(m2)
        start = out.parts["start"]
        assert alpha_equal(start.items[0], state_formula(m2, "qI", "v0"))


class TestTransition:
    def test_one_disjunct_per_transition(self, m2, corpus):
        f = transition_formula(m2, "x", "y")
        assert isinstance(f, Or) and len(f.items) == len(m2.delta)
        g = transition_formula(corpus["binary_counter"], "x", "y")
        assert len(g.items) == len(corpus["binary_counter"].delta)


class TestCompile:
    def test_parts_compose_halt(self, m2):
        out = compile_machine(m2)
        assert out.halt == And(
            [out.parts["start"], out.parts["step"], out.parts["end"], out.parts["paxioms"]]
        )

    def test_classifies_as_real_difference_fragment(self, m2):
        out = compile_machine(m2)
        assert classify(out.halt).best_labels == {FragmentLabel.RDL_UUP}

    def test_single_predicate_and_constants(self):
        for name, m in machine_corpus().items():
            out = compile_machine(m)
            assert predicate_names(out.halt) == {"P"}, name
            assert diff_constants(out.halt) <= {1, 3, 4}, name
            assert not any(isinstance(n, IsInt) for n in walk(out.halt)), name

    def test_anchors_are_only_free_vars(self, m2):
        out = compile_machine(m2)
        assert free_vars(out.halt) == set(out.anchors)

    def test_deterministic(self, m2):
        a = compile_machine(m2)
        b = compile_machine(m2)
        assert print_formula(a.halt) == print_formula(b.halt)

    def test_five_state_machine_width(self):
        corpus = machine_corpus()
        out = compile_machine(corpus["seventeen_stepper"])
        assert out.n_bits == 5

    def test_rejects_invalid_machine(self, m2):
        from realpred.machine import TuringMachine

        broken = TuringMachine(m2.states, "qI", "qF", {("qI", 0): ("qF", 1, "R")})
        with pytest.raises(ValueError, match="delta not total"):
            compile_machine(broken)


def _head_clauses(f):
    """(antecedent, consequent) pairs of the head-movement implications."""
    pairs = []
    for node in walk(f):
        if isinstance(node, Forall) and isinstance(node.body, Implies):
            ant = node.body.antecedent
            if isinstance(ant, And) and any(
                isinstance(g, Pred) and g.x == node.vars[0] for g in ant.items
            ):
                pairs.append((node.vars[0], ant, node.body.consequent))
    return pairs


class TestHeadFix:
    def test_default_rewrites_old_mark_to_next_period(self):
        f = head_formula("R", "x", head_fix=True)
        text = print_formula(f)
        (var, _, consequent) = _head_clauses(f)[0]
        assert f"(not (P {var}))" not in text
        # the tail is the expanded form: exists u. u - z = 3 and not P(u)
        tails = [
            n
            for n in walk(consequent)
            if isinstance(n, Exists)
            and isinstance(n.body, And)
            and any(isinstance(g, Diff) and g.c == 3 for g in n.body.items)
            and any(isinstance(g, Not) and isinstance(g.body, Pred) for g in n.body.items)
        ]
        assert tails

    def test_literal_mode_reproduces_printed_clause(self):
        f = head_formula("R", "x", head_fix=False)
        (var, ant, consequent) = _head_clauses(f)[0]
        # the antecedent asserts P(z); the consequent carries a literal not P(z)
        assert any(isinstance(g, Pred) and g.x == var for g in ant.items)
        assert any(
            isinstance(n, Not) and isinstance(n.body, Pred) and n.body.x == var
            for n in walk(consequent)
        )
        assert f"(not (P {var}))" in print_formula(f)

    def test_compile_respects_flag(self, m2):
        fixed = compile_machine(m2, head_fix=True)
        literal = compile_machine(m2, head_fix=False)
        assert print_formula(fixed.halt) != print_formula(literal.halt)
