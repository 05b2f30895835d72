import re

import pytest

from realpred.formula import PredOffset, expand_shorthand
from realpred.reduction import compile_machine
from realpred.smtlib import emit_smtlib
from realpred.syntax import parse_formula


def balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                return False
    return depth == 0


def declared_symbols(text: str) -> list[str]:
    return re.findall(r"\(declare-(?:fun|const) (\S+)", text)


class TestEmit:
    def test_single_predicate_atom(self):
        script = emit_smtlib(parse_formula("(P x)"))
        assert "(set-logic UFLRA)" in script
        assert "(declare-fun P (Real) Bool)" in script
        assert "(declare-const x Real)" in script
        assert "(assert (P x))" in script
        assert script.rstrip().endswith("(check-sat)")

    def test_integer_guard_uses_is_int_and_all(self):
        script = emit_smtlib(parse_formula("(int x)"))
        assert "(set-logic ALL)" in script
        assert "(assert (is_int x))" in script

    def test_negative_constant_form(self):
        script = emit_smtlib(parse_formula("(<= (- x y) -2)"))
        assert "(<= (- x y) (- 2))" in script

    def test_close_free_quantifies(self):
        script = emit_smtlib(parse_formula("(P x)"), close_free=True)
        assert "declare-const" not in script
        assert "(assert (exists ((x Real)) (P x)))" in script

    def test_iff_renders_as_equality(self):
        script = emit_smtlib(parse_formula("(iff (P x) (Q x))"))
        assert "(= (P x) (Q x))" in script

    def test_rejects_shorthand(self):
        with pytest.raises(ValueError):
            emit_smtlib(PredOffset("P", "x", 1))

    def test_expanded_shorthand_accepted(self):
        script = emit_smtlib(expand_shorthand(parse_formula("(P (+ x 2))")))
        assert balanced(script)


class TestWellFormedness:
    def test_halting_formula_script(self, m2):
        script = emit_smtlib(compile_machine(m2).halt)
        assert balanced(script)
        symbols = declared_symbols(script)
        assert len(symbols) == len(set(symbols))
        assert "P" in symbols
        assert {"v0", "v1", "v2", "v3"} <= set(symbols)

    def test_halting_formula_closed(self, m2):
        script = emit_smtlib(compile_machine(m2).halt, close_free=True)
        assert balanced(script)
        assert declared_symbols(script) == ["P"]

    def test_quantifier_binders_not_declared(self):
        script = emit_smtlib(parse_formula("(forall (t) (P t))"))
        assert "(declare-const t Real)" not in script
        assert "(forall ((t Real)) (P t))" in script
