"""Fragment membership: order/predicate formulas, integer-guard extensions,
well-guarded difference constraints, and unrestricted real difference logic.

The well-guardedness check is purely syntactic: a difference atom over x, y
counts as guarded only when it sits as a conjunct next to integer guards on
both variables, or in the consequent of an implication whose antecedent
conjoins both guards.  Conjunct order and associativity are ignored; guards
established in an enclosing scope do not count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .formula import (
    And,
    Atom,
    Diff,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    IsInt,
    Not,
    Or,
    PredOffset,
    walk,
)
from .syntax import print_formula


class FragmentLabel(enum.Enum):
    MSO_OR = "MSO_OR"
    MSO_IRO = "MSO_IRO"
    LMIX = "LMIX"
    RDL_UUP = "RDL_UUP"
    OUTSIDE = "OUTSIDE"


@dataclass
class ClassificationReport:
    best_labels: frozenset[FragmentLabel]
    violations: list[str] = field(default_factory=list)

    def __contains__(self, label: FragmentLabel) -> bool:
        return label in self.best_labels


def _reject_offsets(f: Formula) -> None:
    for node in walk(f):
        if isinstance(node, PredOffset):
            raise ValueError(
                f"shorthand atom {print_formula(node)} must be expanded before classification"
            )


def _flatten_and(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        out: list[Formula] = []
        for item in f.items:
            out.extend(_flatten_and(item))
        return out
    return [f]


def is_well_guarded(f: Formula) -> tuple[bool, list[str]]:
    """True iff every difference atom occurs in one of the two guarded contexts."""
    _reject_offsets(f)
    violations: list[str] = []
    _guard_check(f, violations)
    return (not violations, violations)


def _guard_check(f: Formula, violations: list[str]) -> None:
    if isinstance(f, Diff):
        violations.append(
            f"difference constraint {print_formula(f)} outside any guarded context"
        )
        return
    if isinstance(f, Atom):
        return
    if isinstance(f, And):
        _conjunction_check(_flatten_and(f), frozenset(), violations)
        return
    if isinstance(f, Implies):
        _implication_check(f, violations)
        return
    if isinstance(f, Not):
        _guard_check(f.body, violations)
        return
    if isinstance(f, Or):
        for item in f.items:
            _guard_check(item, violations)
        return
    if isinstance(f, Iff):
        _guard_check(f.left, violations)
        _guard_check(f.right, violations)
        return
    if isinstance(f, (Exists, Forall)):
        _guard_check(f.body, violations)
        return
    raise TypeError(f"not a formula: {f!r}")


def _guards_of(conjuncts: list[Formula]) -> frozenset[str]:
    return frozenset(c.x for c in conjuncts if isinstance(c, IsInt))


def _conjunction_check(
    conjuncts: list[Formula], extra_guards: frozenset[str], violations: list[str]
) -> None:
    guards = _guards_of(conjuncts) | extra_guards
    for c in conjuncts:
        if isinstance(c, Diff):
            missing = {v for v in (c.x, c.y) if v not in guards}
            if missing:
                violations.append(
                    f"difference constraint {print_formula(c)} missing integer guard"
                    f" for {', '.join(sorted(missing))}"
                )
        elif isinstance(c, Implies):
            _implication_check(c, violations)
        else:
            _guard_check(c, violations)


def _implication_check(f: Implies, violations: list[str]) -> None:
    ant_guards = _guards_of(_flatten_and(f.antecedent))
    _guard_check(f.antecedent, violations)
    consequent = _flatten_and(f.consequent)
    if len(consequent) == 1 and isinstance(consequent[0], Diff):
        _conjunction_check(consequent, ant_guards, violations)
    elif isinstance(f.consequent, And):
        _conjunction_check(consequent, ant_guards, violations)
    else:
        _guard_check(f.consequent, violations)


def classify(f: Formula) -> ClassificationReport:
    """All fragments containing f, plus guard violations when relevant."""
    _reject_offsets(f)
    has_diff = any(isinstance(a, Diff) for a in walk(f))
    has_int = any(isinstance(a, IsInt) for a in walk(f))
    guarded, violations = is_well_guarded(f)

    labels: set[FragmentLabel] = set()
    if not has_diff and not has_int:
        labels.add(FragmentLabel.MSO_OR)
    if not has_diff:
        labels.add(FragmentLabel.MSO_IRO)
    if not has_int:
        labels.add(FragmentLabel.RDL_UUP)
    if guarded:
        labels.add(FragmentLabel.LMIX)

    if not labels:
        labels.add(FragmentLabel.OUTSIDE)
    report_violations = violations if not guarded else []
    return ClassificationReport(frozenset(labels), report_violations)
