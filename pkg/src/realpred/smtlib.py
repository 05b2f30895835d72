"""SMT-LIB 2 script emission.

Predicates become Real -> Bool functions.  Free variables either become Real
constants or are closed under one outer existential block.  Integer guards
render as the mixed reals-integers ``is_int`` predicate, which forces the
catch-all logic; plain order/difference/predicate formulas use UFLRA.
"""

from __future__ import annotations

from .formula import (
    And,
    Diff,
    Exists,
    FalseAtom,
    Forall,
    Formula,
    Iff,
    Implies,
    IsInt,
    Not,
    Or,
    Order,
    Pred,
    PredOffset,
    TrueAtom,
    free_vars,
    pred_names,
    walk,
)


def _int_term(c: int) -> str:
    return f"(- {-c})" if c < 0 else str(c)


def _render(f: Formula) -> str:
    if isinstance(f, TrueAtom):
        return "true"
    if isinstance(f, FalseAtom):
        return "false"
    if isinstance(f, Order):
        return f"({f.op.value} {f.x} {f.y})"
    if isinstance(f, Diff):
        return f"({f.op.value} (- {f.x} {f.y}) {_int_term(f.c)})"
    if isinstance(f, Pred):
        return f"({f.name} {f.x})"
    if isinstance(f, IsInt):
        return f"(is_int {f.x})"
    if isinstance(f, Not):
        return f"(not {_render(f.body)})"
    if isinstance(f, And):
        return "(and " + " ".join(_render(g) for g in f.items) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(_render(g) for g in f.items) + ")"
    if isinstance(f, Implies):
        return f"(=> {_render(f.antecedent)} {_render(f.consequent)})"
    if isinstance(f, Iff):
        return f"(= {_render(f.left)} {_render(f.right)})"
    if isinstance(f, (Exists, Forall)):
        binder = "exists" if isinstance(f, Exists) else "forall"
        decls = " ".join(f"({v} Real)" for v in f.vars)
        return f"({binder} ({decls}) {_render(f.body)})"
    raise TypeError(f"cannot render {f!r}")


def emit_smtlib(f: Formula, close_free: bool = False) -> str:
    """Complete script: set-logic, declarations, one assert, check-sat.

    With close_free, free variables are existentially quantified instead of
    declared, producing a sentence.
    """
    for node in walk(f):
        if isinstance(node, PredOffset):
            raise ValueError("expand shorthand atoms before emitting SMT-LIB")
    preds = sorted(pred_names(f))
    fv = sorted(free_vars(f))
    clash = set(preds) & set(fv)
    if clash:
        raise ValueError(f"names used as both predicate and variable: {sorted(clash)}")
    logic = "ALL" if any(isinstance(n, IsInt) for n in walk(f)) else "UFLRA"
    lines = [f"(set-logic {logic})"]
    for p in preds:
        lines.append(f"(declare-fun {p} (Real) Bool)")
    body = _render(f)
    if close_free and fv:
        decls = " ".join(f"({v} Real)" for v in fv)
        lines.append(f"(assert (exists ({decls}) {body}))")
    else:
        for v in fv:
            lines.append(f"(declare-const {v} Real)")
        lines.append(f"(assert {body})")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
