import random

import pytest

from realpred.formula import (
    And,
    Diff,
    Exists,
    Forall,
    IsInt,
    Order,
    Pred,
    PredOffset,
    RelOp,
    TRUE,
    alpha_equal,
)
from realpred.machine import simulate
from realpred.syntax import ParseError, parse_formula, parse_tm, print_formula, print_tm
from genformulas import random_formula


class TestParseFormula:
    def test_quantifiers(self):
        f = parse_formula("(forall (x) (exists (y z) (and (< y x) (< x z))))")
        want = Forall(
            ["x"],
            Exists(["y", "z"], And([Order("y", RelOp.LT, "x"), Order("x", RelOp.LT, "z")])),
        )
        assert f == want

    def test_guarded_difference(self):
        f = parse_formula("(and (int x) (int y) (<= (- x y) 2))")
        assert f == And([IsInt("x"), IsInt("y"), Diff("x", "y", RelOp.LE, 2)])

    def test_offset_shorthand(self):
        assert parse_formula("(P (+ x 2))") == PredOffset("P", "x", 2)

    def test_negative_constant(self):
        assert parse_formula("(= (- x y) -1)") == Diff("x", "y", RelOp.EQ, -1)

    def test_duplicate_binder_rejected(self):
        with pytest.raises(ParseError):
            parse_formula("(forall (x x) (P x))")

    def test_reserved_word_rejected_as_name(self):
        with pytest.raises(ParseError):
            parse_formula("(P forall)")

    def test_trailing_input_rejected(self):
        with pytest.raises(ParseError):
            parse_formula("true false")

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "(and)",
            "(< x)",
            "(forall () (P x))",
            "(P (+ x))",
            "(=> (P x))",
            "(foo",
            "(1bad x)",
        ],
    )
    def test_errors_have_in_range_spans(self, text):
        with pytest.raises(ParseError) as exc:
            parse_formula(text)
        span = exc.value.span
        assert 0 <= span.start <= span.end <= max(len(text), 1)
        assert exc.value.message


class TestPrintFormula:
    def test_forall(self):
        assert print_formula(Forall(["x"], Pred("P", "x"))) == "(forall (x) (P x))"

    def test_negative_diff(self):
        assert print_formula(Diff("x", "y", RelOp.EQ, -1)) == "(= (- x y) -1)"

    def test_true(self):
        assert print_formula(TRUE) == "true"

    def test_round_trip_corpus(self):
        rng = random.Random(5)
        for _ in range(200):
            f = random_formula(rng, 6)
            again = parse_formula(print_formula(f))
            assert alpha_equal(f, again)
            # printing is canonical, so the round trip is in fact exact
            assert again == f


M2_TEXT = """\
# two states, halts immediately
states: qI qF
init: qI
halt: qF
trans: qI 0 -> qF 1 R
trans: qI 1 -> qF 1 R
"""


class TestMachineFormat:
    def test_parse_two_state(self):
        m = parse_tm(M2_TEXT)
        assert m.states == ("qI", "qF")
        assert len(m.delta) == 2
        assert simulate(m, 10).halted

    def test_missing_transition(self):
        text = M2_TEXT.replace("trans: qI 1 -> qF 1 R\n", "")
        with pytest.raises(ParseError, match="delta not total"):
            parse_tm(text)

    def test_halting_state_outgoing(self):
        with pytest.raises(ParseError, match="halting state"):
            parse_tm(M2_TEXT + "trans: qF 0 -> qI 0 L\n")

    def test_non_functional_rejected(self):
        with pytest.raises(ParseError, match="functional"):
            parse_tm(M2_TEXT + "trans: qI 0 -> qI 0 L\n")

    def test_duplicate_identical_line_tolerated(self):
        m = parse_tm(M2_TEXT + "trans: qI 0 -> qF 1 R\n")
        assert len(m.delta) == 2

    def test_round_trip(self, corpus):
        for name, m in corpus.items():
            assert parse_tm(print_tm(m)) == m, name

    def test_bad_symbol(self):
        with pytest.raises(ParseError, match="symbols"):
            parse_tm(M2_TEXT.replace("qI 0 -> qF 1 R", "qI 2 -> qF 1 R"))
