import random

import pytest
from hypothesis import given, strategies as st

from realpred.formula import (
    And,
    Diff,
    Exists,
    Forall,
    Or,
    Order,
    Pred,
    PredOffset,
    RelOp,
    alpha_equal,
    expand_shorthand,
    free_vars,
    normalize_diff,
    substitute,
    walk,
)
from genformulas import random_formula, rename_binders


class TestFreeVars:
    def test_fully_bound(self):
        assert free_vars(Forall(["x"], Pred("P", "x"))) == set()

    def test_no_binders(self):
        assert free_vars(Diff("x", "y", RelOp.LE, 2)) == {"x", "y"}

    def test_mixed(self):
        f = Exists(["y"], And([Diff("y", "x", RelOp.EQ, 3), Pred("P", "y")]))
        assert free_vars(f) == {"x"}


class TestSubstitute:
    def test_simple(self):
        assert substitute(Pred("P", "x"), {"x": "y"}) == Pred("P", "y")

    def test_capture_forces_rename(self):
        f = Exists(["y"], Order("x", RelOp.LT, "y"))
        g = substitute(f, {"x": "y"})
        assert g == Exists(["_k0"], Order("y", RelOp.LT, "_k0"))

    def test_diff(self):
        got = substitute(Diff("x", "y", RelOp.EQ, 1), {"x": "z"})
        assert got == Diff("z", "y", RelOp.EQ, 1)

    def test_identity_when_untouched(self):
        rng = random.Random(7)
        for _ in range(50):
            f = random_formula(rng, 4)
            assert substitute(f, {"nosuchvar": "w"}) == f

    def test_bound_occurrences_untouched(self):
        f = Forall(["x"], Pred("P", "x"))
        assert substitute(f, {"x": "y"}) == f


class TestExpandShorthand:
    def test_offset(self):
        got = expand_shorthand(PredOffset("P", "x", 3))
        want = Exists(["_k0"], And([Diff("_k0", "x", RelOp.EQ, 3), Pred("P", "_k0")]))
        assert got == want

    def test_zero_offset_still_expands(self):
        got = expand_shorthand(PredOffset("P", "x", 0))
        want = Exists(["_k0"], And([Diff("_k0", "x", RelOp.EQ, 0), Pred("P", "_k0")]))
        assert got == want

    def test_identity_on_plain_pred(self):
        assert expand_shorthand(Pred("P", "x")) == Pred("P", "x")

    def test_preserves_free_vars(self):
        rng = random.Random(3)
        for _ in range(100):
            f = random_formula(rng, 4)
            g = expand_shorthand(f)
            assert free_vars(g) == free_vars(f)
            assert not any(isinstance(n, PredOffset) for n in walk(g))


class TestNormalizeDiff:
    def test_negative_le(self):
        assert normalize_diff(Diff("x", "y", RelOp.LE, -2)) == Diff("y", "x", RelOp.GE, 2)

    def test_negative_eq(self):
        assert normalize_diff(Diff("x", "y", RelOp.EQ, -1)) == Diff("y", "x", RelOp.EQ, 1)

    def test_nonnegative_unchanged(self):
        a = Diff("x", "y", RelOp.LT, 3)
        assert normalize_diff(a) is a

    def test_rejects_non_diff(self):
        with pytest.raises(TypeError):
            normalize_diff(Order("x", RelOp.LT, "y"))

    @given(st.integers(-10, 10), st.sampled_from(list(RelOp)))
    def test_idempotent(self, c, op):
        a = Diff("x", "y", op, c)
        once = normalize_diff(a)
        assert normalize_diff(once) == once


@given(st.sampled_from(list(RelOp)))
def test_flip_involution(op):
    assert op.flip().flip() is op


class TestAlphaEqual:
    def test_renamed_binder(self):
        assert alpha_equal(
            Exists(["y"], Pred("P", "y")), Exists(["z"], Pred("P", "z"))
        )

    def test_different_predicate(self):
        assert not alpha_equal(
            Exists(["y"], Pred("P", "y")), Exists(["z"], Pred("Q", "z"))
        )

    def test_nested(self):
        f = Forall(["x"], Exists(["y"], Order("x", RelOp.LT, "y")))
        g = Forall(["a"], Exists(["b"], Order("a", RelOp.LT, "b")))
        assert alpha_equal(f, g)

    def test_free_variables_must_match(self):
        assert not alpha_equal(Pred("P", "x"), Pred("P", "y"))

    def test_shadowing_tracks_innermost(self):
        f = Forall(["x"], Exists(["x"], Order("x", RelOp.LT, "z")))
        g = Forall(["a"], Exists(["b"], Order("b", RelOp.LT, "z")))
        h = Forall(["a"], Exists(["b"], Order("a", RelOp.LT, "z")))
        assert alpha_equal(f, g)
        assert not alpha_equal(f, h)

    def test_equivalence_relation_on_corpus(self):
        rng = random.Random(11)
        formulas = [random_formula(rng, 4) for _ in range(50)]
        for f in formulas:
            assert alpha_equal(f, f)
            variant = rename_binders(f)
            assert alpha_equal(f, variant)
            assert alpha_equal(variant, f)
        # transitivity across two renamings
        for f in formulas[:20]:
            a, b = rename_binders(f), rename_binders(rename_binders(f))
            assert alpha_equal(a, b)


def test_binder_rejects_duplicates():
    with pytest.raises(ValueError):
        Forall(["x", "x"], Pred("P", "x"))


def test_empty_connectives_rejected():
    with pytest.raises(ValueError):
        And([])
    with pytest.raises(ValueError):
        Or([])
