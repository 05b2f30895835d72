"""Formula language: order constraints, difference constraints, unary
predicates, and integer guards under the usual first-order connectives.

Terms are variables only.  The atom shapes are fixed:

* ``x <op> y``            -- order constraint between two variables
* ``x - y <op> c``        -- difference constraint, integer constant ``c``
* ``P(x)``                -- unary predicate application
* ``P(x + c)``            -- shorthand, eliminated by :func:`expand_shorthand`
* ``x in Z``              -- integer guard

All nodes are immutable; every operation is a pure function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

RESERVED_PREFIX = "_k"


class RelOp(enum.Enum):
    LT = "<"
    LE = "<="
    EQ = "="
    GE = ">="
    GT = ">"

    def flip(self) -> "RelOp":
        """Mirror the relation: swaps < with > and <= with >=, fixes =."""
        return _FLIP[self]

    def holds(self, lhs, rhs) -> bool:
        """Evaluate ``lhs <op> rhs`` for any ordered operands."""
        if self is RelOp.LT:
            return lhs < rhs
        if self is RelOp.LE:
            return lhs <= rhs
        if self is RelOp.EQ:
            return lhs == rhs
        if self is RelOp.GE:
            return lhs >= rhs
        return lhs > rhs


_FLIP = {
    RelOp.LT: RelOp.GT,
    RelOp.GT: RelOp.LT,
    RelOp.LE: RelOp.GE,
    RelOp.GE: RelOp.LE,
    RelOp.EQ: RelOp.EQ,
}


class Formula:
    """Base class for all formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:  # avoids importing syntax at module load
        from .syntax import print_formula

        return print_formula(self)


class Atom(Formula):
    """Base class for the leaf formulas."""

    __slots__ = ()


@dataclass(frozen=True)
class Order(Atom):
    x: str
    op: RelOp
    y: str


@dataclass(frozen=True)
class Diff(Atom):
    """Difference constraint ``x - y <op> c`` with c a (possibly negative) integer."""

    x: str
    y: str
    op: RelOp
    c: int


@dataclass(frozen=True)
class Pred(Atom):
    name: str
    x: str


@dataclass(frozen=True)
class PredOffset(Atom):
    """Shorthand ``P(x + c)``; only :func:`expand_shorthand` removes it."""

    name: str
    x: str
    c: int


@dataclass(frozen=True)
class IsInt(Atom):
    x: str


@dataclass(frozen=True)
class TrueAtom(Atom):
    pass


@dataclass(frozen=True)
class FalseAtom(Atom):
    pass


TRUE = TrueAtom()
FALSE = FalseAtom()


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    items: tuple[Formula, ...]

    def __init__(self, items: Iterable[Formula]):
        object.__setattr__(self, "items", tuple(items))
        if not self.items:
            raise ValueError("And needs at least one conjunct")


@dataclass(frozen=True)
class Or(Formula):
    items: tuple[Formula, ...]

    def __init__(self, items: Iterable[Formula]):
        object.__setattr__(self, "items", tuple(items))
        if not self.items:
            raise ValueError("Or needs at least one disjunct")


@dataclass(frozen=True)
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


def _check_binder(vars: tuple[str, ...]) -> None:
    if not vars:
        raise ValueError("quantifier needs at least one variable")
    if len(set(vars)) != len(vars):
        raise ValueError(f"duplicate binder variable in {vars}")


@dataclass(frozen=True)
class Exists(Formula):
    vars: tuple[str, ...]
    body: Formula

    def __init__(self, vars: Iterable[str], body: Formula):
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "body", body)
        _check_binder(self.vars)


@dataclass(frozen=True)
class Forall(Formula):
    vars: tuple[str, ...]
    body: Formula

    def __init__(self, vars: Iterable[str], body: Formula):
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "body", body)
        _check_binder(self.vars)


def children(f: Formula) -> tuple[Formula, ...]:
    """Immediate subformulas of ``f`` (empty for atoms)."""
    if isinstance(f, Atom):
        return ()
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or)):
        return f.items
    if isinstance(f, Implies):
        return (f.antecedent, f.consequent)
    if isinstance(f, Iff):
        return (f.left, f.right)
    if isinstance(f, (Exists, Forall)):
        return (f.body,)
    raise TypeError(f"not a formula: {f!r}")


def walk(f: Formula) -> Iterator[Formula]:
    """Yield every node of ``f`` in preorder."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def atoms(f: Formula) -> Iterator[Atom]:
    for node in walk(f):
        if isinstance(node, Atom):
            yield node


def atom_vars(a: Atom) -> tuple[str, ...]:
    if isinstance(a, Order):
        return (a.x, a.y)
    if isinstance(a, Diff):
        return (a.x, a.y)
    if isinstance(a, (Pred, PredOffset, IsInt)):
        return (a.x,)
    return ()


def free_vars(f: Formula) -> frozenset[str]:
    """Variables with at least one free occurrence in ``f``."""
    if isinstance(f, Atom):
        return frozenset(atom_vars(f))
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - frozenset(f.vars)
    out: frozenset[str] = frozenset()
    for sub in children(f):
        out |= free_vars(sub)
    return out


def all_vars(f: Formula) -> frozenset[str]:
    """Every variable name occurring in ``f``, free or bound."""
    out: set[str] = set()
    for node in walk(f):
        if isinstance(node, Atom):
            out.update(atom_vars(node))
        elif isinstance(node, (Exists, Forall)):
            out.update(node.vars)
    return frozenset(out)


def pred_names(f: Formula) -> frozenset[str]:
    return frozenset(
        a.name for a in atoms(f) if isinstance(a, (Pred, PredOffset))
    )


class FreshNames:
    """Deterministic supply of generator-owned variable names.

    Names are ``_k0``, ``_k1``, ... skipping anything in the avoid set, so
    generated binders can never collide with (or capture) existing variables.
    """

    def __init__(self, avoid: Iterable[str] = (), prefix: str = RESERVED_PREFIX):
        self._avoid = set(avoid)
        self._prefix = prefix
        self._next = 0

    def take(self) -> str:
        while True:
            name = f"{self._prefix}{self._next}"
            self._next += 1
            if name not in self._avoid:
                self._avoid.add(name)
                return name

    def reserve(self, names: Iterable[str]) -> None:
        self._avoid.update(names)


def _rename_atom(a: Atom, env: Mapping[str, str]) -> Atom:
    if isinstance(a, Order):
        return Order(env.get(a.x, a.x), a.op, env.get(a.y, a.y))
    if isinstance(a, Diff):
        return Diff(env.get(a.x, a.x), env.get(a.y, a.y), a.op, a.c)
    if isinstance(a, Pred):
        return Pred(a.name, env.get(a.x, a.x))
    if isinstance(a, PredOffset):
        return PredOffset(a.name, env.get(a.x, a.x), a.c)
    if isinstance(a, IsInt):
        return IsInt(env.get(a.x, a.x))
    return a


def substitute(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Capture-avoiding substitution of free variable occurrences.

    Binders whose variables would capture a substituted name are renamed
    to fresh ``_k`` names first.
    """
    fresh = FreshNames(all_vars(f) | set(mapping) | set(mapping.values()))
    return _subst(f, dict(mapping), fresh)


def _subst(f: Formula, env: dict[str, str], fresh: FreshNames) -> Formula:
    if isinstance(f, Atom):
        return _rename_atom(f, env)
    if isinstance(f, Not):
        return Not(_subst(f.body, env, fresh))
    if isinstance(f, And):
        return And(_subst(g, env, fresh) for g in f.items)
    if isinstance(f, Or):
        return Or(_subst(g, env, fresh) for g in f.items)
    if isinstance(f, Implies):
        return Implies(_subst(f.antecedent, env, fresh), _subst(f.consequent, env, fresh))
    if isinstance(f, Iff):
        return Iff(_subst(f.left, env, fresh), _subst(f.right, env, fresh))
    if isinstance(f, (Exists, Forall)):
        inner = {k: v for k, v in env.items() if k not in f.vars}
        # rename any binder variable that would capture a substituted name
        targets = {inner[v] for v in (free_vars(f.body) & inner.keys())}
        binder_env: dict[str, str] = {}
        new_vars = []
        for v in f.vars:
            if v in targets:
                nv = fresh.take()
                binder_env[v] = nv
                new_vars.append(nv)
            else:
                new_vars.append(v)
        body = f.body
        if binder_env:
            body = _subst(body, binder_env, fresh)
        body = _subst(body, inner, fresh) if inner else body
        ctor = Exists if isinstance(f, Exists) else Forall
        return ctor(new_vars, body)
    raise TypeError(f"not a formula: {f!r}")


def expand_shorthand(f: Formula) -> Formula:
    """Replace every ``P(x + c)`` atom with ``Exists y. y - x = c and P(y)``."""
    fresh = FreshNames(all_vars(f))
    return _expand(f, fresh)


def _expand(f: Formula, fresh: FreshNames) -> Formula:
    if isinstance(f, PredOffset):
        y = fresh.take()
        return Exists([y], And([Diff(y, f.x, RelOp.EQ, f.c), Pred(f.name, y)]))
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(_expand(f.body, fresh))
    if isinstance(f, And):
        return And(_expand(g, fresh) for g in f.items)
    if isinstance(f, Or):
        return Or(_expand(g, fresh) for g in f.items)
    if isinstance(f, Implies):
        return Implies(_expand(f.antecedent, fresh), _expand(f.consequent, fresh))
    if isinstance(f, Iff):
        return Iff(_expand(f.left, fresh), _expand(f.right, fresh))
    if isinstance(f, Exists):
        return Exists(f.vars, _expand(f.body, fresh))
    if isinstance(f, Forall):
        return Forall(f.vars, _expand(f.body, fresh))
    raise TypeError(f"not a formula: {f!r}")


def normalize_diff(a: Atom) -> Diff:
    """Rewrite ``x - y <op> c`` with c < 0 as ``y - x <op'> -c``.

    The operator correspondence is (=,=), (<,>), (>,<), (>=,<=), (<=,>=);
    atoms with c >= 0 are returned unchanged.
    """
    if not isinstance(a, Diff):
        raise TypeError(f"normalize_diff expects a difference atom, got {a!r}")
    if a.c >= 0:
        return a
    return Diff(a.y, a.x, a.op.flip(), -a.c)


def alpha_equal(f: Formula, g: Formula) -> bool:
    """Structural equality up to consistent renaming of bound variables."""
    return _alpha(f, g, {}, {}, 0)


def _var_eq(x: str, y: str, envf: dict[str, int], envg: dict[str, int]) -> bool:
    bx, by = envf.get(x), envg.get(y)
    if bx is None and by is None:
        return x == y  # both free
    return bx == by  # same binder level, or one bound / one free -> False


def _alpha(
    f: Formula, g: Formula, envf: dict[str, int], envg: dict[str, int], depth: int
) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, (TrueAtom, FalseAtom)):
        return True
    if isinstance(f, Order):
        return f.op is g.op and _var_eq(f.x, g.x, envf, envg) and _var_eq(f.y, g.y, envf, envg)
    if isinstance(f, Diff):
        return (
            f.op is g.op
            and f.c == g.c
            and _var_eq(f.x, g.x, envf, envg)
            and _var_eq(f.y, g.y, envf, envg)
        )
    if isinstance(f, Pred):
        return f.name == g.name and _var_eq(f.x, g.x, envf, envg)
    if isinstance(f, PredOffset):
        return f.name == g.name and f.c == g.c and _var_eq(f.x, g.x, envf, envg)
    if isinstance(f, IsInt):
        return _var_eq(f.x, g.x, envf, envg)
    if isinstance(f, Not):
        return _alpha(f.body, g.body, envf, envg, depth)
    if isinstance(f, (And, Or)):
        return len(f.items) == len(g.items) and all(
            _alpha(a, b, envf, envg, depth) for a, b in zip(f.items, g.items)
        )
    if isinstance(f, Implies):
        return _alpha(f.antecedent, g.antecedent, envf, envg, depth) and _alpha(
            f.consequent, g.consequent, envf, envg, depth
        )
    if isinstance(f, Iff):
        return _alpha(f.left, g.left, envf, envg, depth) and _alpha(
            f.right, g.right, envf, envg, depth
        )
    if isinstance(f, (Exists, Forall)):
        if len(f.vars) != len(g.vars):
            return False
        nf, ng = dict(envf), dict(envg)
        for i, (x, y) in enumerate(zip(f.vars, g.vars)):
            nf[x] = depth + i
            ng[y] = depth + i
        return _alpha(f.body, g.body, nf, ng, depth + len(f.vars))
    raise TypeError(f"not a formula: {f!r}")
