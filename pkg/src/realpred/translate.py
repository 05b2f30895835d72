"""Satisfiability-preserving translation of integer-guarded difference
formulas into the pure order-and-predicates fragment.

A fresh unary predicate (the "integer grid") is axiomatized so that its
extension is order-isomorphic to the integers: every member is isolated and
every real has a unique grid successor and predecessor.  Integer guards
become grid membership, and a difference constraint ``x - y <op> c`` becomes
a chain of c grid-successor steps from y, compared against x.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    And,
    Atom,
    Diff,
    Exists,
    Forall,
    Formula,
    FreshNames,
    Iff,
    Implies,
    IsInt,
    Not,
    Or,
    Order,
    Pred,
    PredOffset,
    RelOp,
    normalize_diff,
    pred_names,
)
from .fragments import FragmentLabel, classify

DEFAULT_GRID_NAME = "Zint"


@dataclass(frozen=True)
class TranslationOutput:
    axioms: Formula
    body: Formula
    combined: Formula
    pint_name: str


def pint_axioms(pint: str) -> Formula:
    """The three grid axioms: isolation, unique successor, unique predecessor."""
    isolation = Forall(
        ["x"],
        Exists(
            ["y", "z"],
            And(
                [
                    Order("y", RelOp.LT, "x"),
                    Order("x", RelOp.LT, "z"),
                    Forall(
                        ["t"],
                        Implies(
                            And(
                                [
                                    Order("y", RelOp.LT, "t"),
                                    Order("t", RelOp.LT, "z"),
                                    Pred(pint, "t"),
                                ]
                            ),
                            Order("t", RelOp.EQ, "x"),
                        ),
                    ),
                ]
            ),
        ),
    )
    successor = Forall(
        ["x"],
        Exists(
            ["y"],
            And(
                [
                    Order("x", RelOp.LT, "y"),
                    Pred(pint, "y"),
                    Forall(
                        ["t"],
                        Implies(
                            And([Order("x", RelOp.LT, "t"), Order("t", RelOp.LT, "y")]),
                            Not(Pred(pint, "t")),
                        ),
                    ),
                ]
            ),
        ),
    )
    predecessor = Forall(
        ["x"],
        Exists(
            ["y"],
            And(
                [
                    Order("y", RelOp.LT, "x"),
                    Pred(pint, "y"),
                    Forall(
                        ["t"],
                        Implies(
                            And([Order("y", RelOp.LT, "t"), Order("t", RelOp.LT, "x")]),
                            Not(Pred(pint, "t")),
                        ),
                    ),
                ]
            ),
        ),
    )
    return And([isolation, successor, predecessor])


def succ_formula(x: str, y: str, pint: str, fresh: FreshNames) -> Formula:
    """Grid successor: x and y on the grid, y < x, nothing on the grid between."""
    z = fresh.take()
    return And(
        [
            Pred(pint, x),
            Pred(pint, y),
            Order(y, RelOp.LT, x),
            Forall(
                [z],
                Implies(
                    And([Order(y, RelOp.LT, z), Order(z, RelOp.LT, x)]),
                    Not(Pred(pint, z)),
                ),
            ),
        ]
    )


def translate_atom(a: Atom, pint: str, fresh: FreshNames | None = None) -> Formula:
    """Translate one atom; order and predicate atoms pass through unchanged."""
    if isinstance(a, PredOffset):
        raise ValueError("expand shorthand atoms before translation")
    if isinstance(a, IsInt):
        return Pred(pint, a.x)
    if not isinstance(a, Diff):
        return a
    if fresh is None:
        fresh = FreshNames({a.x, a.y})
    else:
        fresh.reserve({a.x, a.y})
    a = normalize_diff(a)
    chain = [fresh.take() for _ in range(a.c + 1)]
    conjuncts: list[Formula] = [Order(a.y, RelOp.EQ, chain[0])]
    for i in range(a.c):
        conjuncts.append(succ_formula(chain[i + 1], chain[i], pint, fresh))
    conjuncts.append(Order(a.x, a.op, chain[-1]))
    return Exists(chain, And(conjuncts))


def choose_pint(f: Formula) -> str:
    """A grid predicate name not used by f."""
    used = pred_names(f)
    if DEFAULT_GRID_NAME not in used:
        return DEFAULT_GRID_NAME
    i = 0
    while f"{DEFAULT_GRID_NAME}{i}" in used:
        i += 1
    return f"{DEFAULT_GRID_NAME}{i}"


def translate(f: Formula) -> TranslationOutput:
    """Translate a well-guarded formula; the result is order-and-predicates only.

    Raises ValueError (with the classifier's explanations) if f is not in the
    guarded fragment.
    """
    report = classify(f)
    if FragmentLabel.LMIX not in report.best_labels:
        detail = "; ".join(report.violations) or "formula is outside the guarded fragment"
        raise ValueError(f"not translatable: {detail}")
    pint = choose_pint(f)
    body = _translate(f, pint)
    axioms = pint_axioms(pint)
    return TranslationOutput(axioms, body, And([axioms, body]), pint)


def _translate(f: Formula, pint: str) -> Formula:
    if isinstance(f, Atom):
        return translate_atom(f, pint)
    if isinstance(f, Not):
        return Not(_translate(f.body, pint))
    if isinstance(f, And):
        return And(_translate(g, pint) for g in f.items)
    if isinstance(f, Or):
        return Or(_translate(g, pint) for g in f.items)
    if isinstance(f, Implies):
        return Implies(_translate(f.antecedent, pint), _translate(f.consequent, pint))
    if isinstance(f, Iff):
        return Iff(_translate(f.left, pint), _translate(f.right, pint))
    if isinstance(f, Exists):
        return Exists(f.vars, _translate(f.body, pint))
    if isinstance(f, Forall):
        return Forall(f.vars, _translate(f.body, pint))
    raise TypeError(f"not a formula: {f!r}")
