"""Sampling evaluator for formulas over an interval model.

Quantifiers are instantiated over finite sets of test points, recomputed at
each binder from the model's interval endpoints and labeled points, the
caller's samples and assignment, and the values already bound -- plus their
translates by the difference constants of the formula, midpoints of adjacent
candidates, and one sentinel beyond each end.  Because the model is piecewise
constant and all of its discontinuities are candidates, a formula's truth is
constant between adjacent candidates, so every order position a real value
could occupy relative to the bound values has a representative.

Atoms are exact; points the finite pattern leaves undescribed (beyond the
generated depth, or unlabeled isolated points) evaluate to unknown and
propagate by three-valued logic, so Valid and Falsified are trustworthy and
questions hinging on ungenerated structure come back Unknown.  Limitation:
a universally quantified variable whose truth depends on several chained
difference offsets (for example nested "+1" hops under one quantifier) may
need cut points this closure does not include; such formulas should be
checked structurally instead.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .dyadic import Dyadic
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
    walk,
)
from .realmodel import IntervalModel, predicate_at


class Verdict(enum.Enum):
    VALID = "valid"
    FALSIFIED = "falsified"
    UNKNOWN = "unknown"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Dyadic):
        return value.to_fraction()
    return Fraction(value)


class _Evaluator:
    def __init__(self, m: IntervalModel, static: set[Fraction], consts: set[int]):
        self.m = m
        self.consts = consts
        ext = set(static)
        for c in consts:
            ext |= {p + c for p in static} | {p - c for p in static}
        self.static = ext
        self._pred_cache: dict[Fraction, Optional[bool]] = {}

    def candidates(self, env: dict[str, Fraction]) -> list[Fraction]:
        pts = set(self.static)
        for v in env.values():
            pts.add(v)
            for c in self.consts:
                pts.add(v + c)
                pts.add(v - c)
        if not pts:
            pts = {Fraction(0)}
        s = sorted(pts)
        out = set(s)
        for a, b in zip(s, s[1:]):
            out.add((a + b) / 2)
        out.add(s[0] - 1)
        out.add(s[-1] + 1)
        return sorted(out)

    def pred(self, x: Fraction) -> Optional[bool]:
        if x not in self._pred_cache:
            self._pred_cache[x] = predicate_at(self.m, x)
        return self._pred_cache[x]

    def eval(self, f: Formula, env: dict[str, Fraction]) -> Optional[bool]:
        if isinstance(f, TrueAtom):
            return True
        if isinstance(f, FalseAtom):
            return False
        if isinstance(f, Order):
            a, b = env.get(f.x), env.get(f.y)
            if a is None or b is None:
                return None
            return f.op.holds(a, b)
        if isinstance(f, Diff):
            a, b = env.get(f.x), env.get(f.y)
            if a is None or b is None:
                return None
            return f.op.holds(a - b, f.c)
        if isinstance(f, Pred):
            a = env.get(f.x)
            if a is None:
                return None
            return self.pred(a)
        if isinstance(f, Not):
            r = self.eval(f.body, env)
            return None if r is None else not r
        if isinstance(f, And):
            unknown = False
            for g in f.items:
                r = self.eval(g, env)
                if r is False:
                    return False
                if r is None:
                    unknown = True
            return None if unknown else True
        if isinstance(f, Or):
            unknown = False
            for g in f.items:
                r = self.eval(g, env)
                if r is True:
                    return True
                if r is None:
                    unknown = True
            return None if unknown else False
        if isinstance(f, Implies):
            a = self.eval(f.antecedent, env)
            if a is False:
                return True
            b = self.eval(f.consequent, env)
            if b is True:
                return True
            if a is True and b is False:
                return False
            return None
        if isinstance(f, Iff):
            a = self.eval(f.left, env)
            b = self.eval(f.right, env)
            if a is None or b is None:
                return None
            return a == b
        if isinstance(f, (Exists, Forall)):
            return self._quantified(f, env)
        raise TypeError(f"cannot evaluate {f!r}")

    def _quantified(self, f: Exists | Forall, env: dict[str, Fraction]) -> Optional[bool]:
        # short-circuit: a verdict reached while the bound variables are still
        # unvalued holds for every instantiation
        quick = self.eval(f.body, env)
        if quick is not None:
            return quick
        want = isinstance(f, Exists)  # the value that settles this quantifier
        if len(f.vars) == 1:
            rest: Formula = f.body
        else:
            ctor = Exists if isinstance(f, Exists) else Forall
            rest = ctor(f.vars[1:], f.body)
        v = f.vars[0]
        saved = env.pop(v, None)
        unknown = False
        result: Optional[bool] = not want
        for d in self.candidates(env):
            env[v] = d
            r = self.eval(rest, env)
            if r is want:
                result = want
                break
            if r is None:
                unknown = True
        else:
            result = None if unknown else (not want)
        del env[v]
        if saved is not None:
            env[v] = saved
        return result


def bounded_evaluate(
    f: Formula,
    m: IntervalModel,
    assignment: Mapping[str, object] | None = None,
    samples: Iterable[object] = (),
) -> Verdict:
    """Three-valued evaluation of f against the model.

    The formula may use order constraints, difference constraints, and
    predicate atoms over a single predicate name (every predicate atom is read
    as the model's predicate).  Integer-guard atoms are rejected; expand and
    translate them first.
    """
    for node in walk(f):
        if isinstance(node, IsInt):
            raise ValueError("integer-guard atoms cannot be evaluated against a model")
        if isinstance(node, PredOffset):
            raise ValueError("expand shorthand atoms before evaluation")
    env = {name: _as_fraction(v) for name, v in (assignment or {}).items()}
    missing = free_vars(f) - env.keys()
    if missing:
        raise ValueError(f"assignment missing variables: {', '.join(sorted(missing))}")
    static: set[Fraction] = set(env.values())
    static.update(_as_fraction(s) for s in samples)
    for iv in m.intervals:
        static.add(iv.lo)
        static.add(iv.hi)
    static.update(m.point_labels)
    consts = {a.c for a in walk(f) if isinstance(a, Diff)}
    result = _Evaluator(m, static, consts).eval(f, env)
    if result is True:
        return Verdict.VALID
    if result is False:
        return Verdict.FALSIFIED
    return Verdict.UNKNOWN
