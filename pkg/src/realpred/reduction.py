"""Compiles a Turing machine into a halting formula over a single unary
predicate, using only order constraints and difference constraints with
offsets 1, 3 and 4.

The predicate is axiomatized so that its "supporting points" (points with a
uniformly-true open interval on the left and a uniformly-false one on the
right) form a repeating grid of period 3: one period per machine
configuration, carrying the state bits on its first unit interval, the head
position on the second, and the tape content on the third.  The compiled
formula is satisfiable exactly when the machine halts from the blank tape.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    And,
    Diff,
    Exists,
    Forall,
    Formula,
    FreshNames,
    Iff,
    Implies,
    Not,
    Or,
    Order,
    Pred,
    RelOp,
)
from .machine import RIGHT, TuringMachine, validate_tm

DEFAULT_ANCHORS = ("v0", "v1", "v2", "v3")
DEFAULT_PRED = "P"


def n_bits(m: TuringMachine) -> int:
    """State-code width, padded to at least 2 so the state zone has interior
    structure for every machine."""
    return max(2, (len(m.states) - 1).bit_length())


def state_codes(m: TuringMachine) -> dict[str, tuple[int, ...]]:
    """Big-endian binary of each state's position in the declared order."""
    n = n_bits(m)
    return {
        q: tuple((i >> (n - 1 - j)) & 1 for j in range(n))
        for i, q in enumerate(m.states)
    }


@dataclass(frozen=True)
class ReductionOutput:
    halt: Formula
    parts: dict[str, Formula]
    anchors: tuple[str, ...]
    pred_name: str
    n_bits: int
    codes: dict[str, tuple[int, ...]]


class _Builder:
    def __init__(self, m: TuringMachine, pred_name: str, head_fix: bool, anchors):
        self.m = m
        self.p = pred_name
        self.head_fix = head_fix
        self.anchors = tuple(anchors)
        self.n = n_bits(m)
        self.codes = state_codes(m)
        self.fresh = FreshNames(self.anchors)

    # -- geometry predicates ------------------------------------------------

    def rel(self, x: str) -> Formula:
        """x is a supporting point: uniformly true open interval on the left,
        uniformly false open interval on the right."""
        y1, z1, y2, z2 = (self.fresh.take() for _ in range(4))
        left = Exists(
            [y1],
            And(
                [
                    Order(y1, RelOp.LT, x),
                    Forall(
                        [z1],
                        Implies(
                            And([Order(y1, RelOp.LT, z1), Order(z1, RelOp.LT, x)]),
                            Pred(self.p, z1),
                        ),
                    ),
                ]
            ),
        )
        right = Exists(
            [y2],
            And(
                [
                    Order(x, RelOp.LT, y2),
                    Forall(
                        [z2],
                        Implies(
                            And([Order(x, RelOp.LT, z2), Order(z2, RelOp.LT, y2)]),
                            Not(Pred(self.p, z2)),
                        ),
                    ),
                ]
            ),
        )
        return And([left, right])

    def succ_sup(self, x: str, y: str) -> Formula:
        """x is the first supporting point strictly greater than y."""
        z = self.fresh.take()
        return And(
            [
                Order(y, RelOp.LT, x),
                self.rel(x),
                self.rel(y),
                Forall(
                    [z],
                    Implies(
                        And([Order(y, RelOp.LT, z), Order(z, RelOp.LT, x)]),
                        Not(self.rel(z)),
                    ),
                ),
            ]
        )

    def pred_sup(self, x: str, y: str) -> Formula:
        return self.succ_sup(y, x)

    def rel_at_offset(self, x: str, c: int) -> Formula:
        u = self.fresh.take()
        return Exists([u], And([Diff(u, x, RelOp.EQ, c), self.rel(u)]))

    def pred_at_offset(self, x: str, c: int, value: bool) -> Formula:
        u = self.fresh.take()
        lit = Pred(self.p, u) if value else Not(Pred(self.p, u))
        return Exists([u], And([Diff(u, x, RelOp.EQ, c), lit]))

    # -- grid axioms ---------------------------------------------------------

    def paxioms(self) -> Formula:
        v0, v1, v2, v3 = self.anchors
        a1 = And(
            [
                Diff(v1, v0, RelOp.EQ, 1),
                Diff(v2, v1, RelOp.EQ, 1),
                Diff(v3, v2, RelOp.EQ, 1),
            ]
        )
        a2 = And([self.rel(v0), self.rel(v1), self.rel(v2)])
        x = self.fresh.take()
        a3 = Forall([x], Implies(Order(x, RelOp.LT, v0), Pred(self.p, x)))
        a4 = self._axiom4()
        a5 = self._axiom5()
        x = self.fresh.take()
        a6 = Forall(
            [x],
            Implies(
                And([Order(v1, RelOp.LT, x), Order(x, RelOp.LT, v2)]),
                Iff(self.rel(x), self.rel_at_offset(x, 1)),
            ),
        )
        x = self.fresh.take()
        a7 = Forall(
            [x],
            Implies(Order(x, RelOp.GE, v0), Iff(self.rel(x), self.rel_at_offset(x, 3))),
        )
        return And([a1, a2, a3, a4, a5, a6, a7])

    def _axiom4(self) -> Formula:
        v0, v1 = self.anchors[0], self.anchors[1]
        xs = [self.fresh.take() for _ in range(self.n)]
        conjuncts: list[Formula] = [
            Order(xs[0], RelOp.EQ, v0),
            Order(xs[-1], RelOp.EQ, v1),
        ]
        for i in range(self.n - 1):
            conjuncts.append(
                And(
                    [
                        Order(v0, RelOp.LE, xs[i]),
                        Order(xs[i], RelOp.LT, v1),
                        self.succ_sup(xs[i + 1], xs[i]),
                    ]
                )
            )
        return Exists(xs, And(conjuncts))

    def _axiom5(self) -> Formula:
        v1, v2 = self.anchors[1], self.anchors[2]
        b1, b2 = self.fresh.take(), self.fresh.take()
        bounds = And(
            [
                Order(v1, RelOp.LT, b1),
                Order(b1, RelOp.LT, b2),
                Order(b2, RelOp.LT, v2),
            ]
        )
        x, y, z = (self.fresh.take() for _ in range(3))
        has_succ = Forall(
            [x],
            Implies(
                And([Order(b1, RelOp.LT, x), Order(x, RelOp.LT, b2)]),
                Exists(
                    [y],
                    And(
                        [
                            Order(x, RelOp.LT, y),
                            Order(y, RelOp.LT, b2),
                            self.rel(y),
                            Forall(
                                [z],
                                Implies(
                                    And([Order(x, RelOp.LT, z), Order(z, RelOp.LT, y)]),
                                    Not(self.rel(z)),
                                ),
                            ),
                        ]
                    ),
                ),
            ),
        )
        x, y, z = (self.fresh.take() for _ in range(3))
        has_pred = Forall(
            [x],
            Implies(
                And([Order(b1, RelOp.LT, x), Order(x, RelOp.LT, b2)]),
                Exists(
                    [y],
                    And(
                        [
                            Order(b1, RelOp.LT, y),
                            Order(y, RelOp.LT, x),
                            self.rel(y),
                            Forall(
                                [z],
                                Implies(
                                    And([Order(y, RelOp.LT, z), Order(z, RelOp.LT, x)]),
                                    Not(self.rel(z)),
                                ),
                            ),
                        ]
                    ),
                ),
            ),
        )
        x = self.fresh.take()
        confined = Forall(
            [x],
            Implies(
                And([Order(v1, RelOp.LT, x), Order(x, RelOp.LT, v2), self.rel(x)]),
                And([Order(b1, RelOp.LT, x), Order(x, RelOp.LT, b2)]),
            ),
        )
        return Exists([b1, b2], And([bounds, has_succ, has_pred, confined]))

    # -- configuration encodings ---------------------------------------------

    def left_cvg(self, x: str) -> Formula:
        z, y = self.fresh.take(), self.fresh.take()
        return Forall(
            [z],
            Implies(
                And([Order(z, RelOp.LT, x), self.rel(z)]),
                Exists([y], And([Order(z, RelOp.LT, y), Order(y, RelOp.LT, x), self.rel(y)])),
            ),
        )

    def r_succ(self, x: str) -> Formula:
        z, y = self.fresh.take(), self.fresh.take()
        return Exists(
            [z],
            And(
                [
                    Order(x, RelOp.LT, z),
                    self.rel(z),
                    Forall(
                        [y],
                        Implies(
                            And([Order(x, RelOp.LT, y), Order(y, RelOp.LT, z)]),
                            Not(self.rel(y)),
                        ),
                    ),
                ]
            ),
        )

    def start_conf(self, x: str) -> Formula:
        """x starts a configuration: supporting, with supporting points
        converging from the left and an immediate supporting successor."""
        return And([self.rel(x), self.left_cvg(x), self.r_succ(x)])

    def state(self, q: str, x: str) -> Formula:
        """State q is encoded on x and its n-1 supporting successors."""
        if q not in self.codes:
            raise ValueError(f"unknown state {q!r}")
        ys = [self.fresh.take() for _ in range(self.n)]
        conjuncts: list[Formula] = [Order(x, RelOp.EQ, ys[0])]
        for i in range(self.n - 1):
            conjuncts.append(self.succ_sup(ys[i + 1], ys[i]))
        for bit, y in zip(self.codes[q], ys):
            conjuncts.append(Pred(self.p, y) if bit else Not(Pred(self.p, y)))
        return And([self.start_conf(x), Exists(ys, And(conjuncts))])

    # -- run conditions --------------------------------------------------------

    def start_formula(self) -> Formula:
        v0, v1, v2, v3 = self.anchors
        y, x = self.fresh.take(), self.fresh.take()
        unique_head = Exists(
            [y],
            And(
                [
                    Order(v1, RelOp.LT, y),
                    Order(y, RelOp.LT, v2),
                    self.rel(y),
                    Pred(self.p, y),
                    Forall(
                        [x],
                        Implies(
                            And(
                                [
                                    Order(v1, RelOp.LT, x),
                                    Order(x, RelOp.LT, v2),
                                    self.rel(x),
                                    Pred(self.p, x),
                                ]
                            ),
                            Order(x, RelOp.EQ, y),
                        ),
                    ),
                ]
            ),
        )
        y = self.fresh.take()
        blank_tape = Forall(
            [y],
            Implies(
                And([Order(v2, RelOp.LT, y), Order(y, RelOp.LT, v3), self.rel(y)]),
                Not(Pred(self.p, y)),
            ),
        )
        return And([self.state(self.m.q_init, v0), unique_head, blank_tape])

    def not_ended(self, y: str) -> Formula:
        x = self.fresh.take()
        return Forall(
            [x],
            Implies(
                And([Order(x, RelOp.LT, y), self.start_conf(x)]),
                Not(self.state(self.m.q_halt, x)),
            ),
        )

    def _head_zone(self, x: str, z: str) -> tuple[list[str], list[Formula]]:
        """Bounds x+1 < z < x+2, with the offsets named by a +1 chain."""
        u1, u2 = self.fresh.take(), self.fresh.take()
        chain = [Diff(u1, x, RelOp.EQ, 1), Diff(u2, u1, RelOp.EQ, 1)]
        bounds = [Order(u1, RelOp.LT, z), Order(z, RelOp.LT, u2)]
        return [u1, u2], chain + bounds

    def tape(self, alpha: int, alpha2: int, x: str) -> Formula:
        z = self.fresh.take()
        vars1, parts1 = self._head_zone(x, z)
        marked = Forall(
            [z],
            Implies(
                And(parts1[2:] + [self.rel(z), Pred(self.p, z)]),
                And(
                    [
                        self.pred_at_offset(z, 1, alpha == 1),
                        self.pred_at_offset(z, 4, alpha2 == 1),
                    ]
                ),
            ),
        )
        z2 = self.fresh.take()
        bounds2 = [Order(vars1[0], RelOp.LT, z2), Order(z2, RelOp.LT, vars1[1])]
        unmarked = Forall(
            [z2],
            Implies(
                And(bounds2 + [self.rel(z2), Not(Pred(self.p, z2))]),
                Iff(self.pred_at_offset(z2, 1, True), self.pred_at_offset(z2, 4, True)),
            ),
        )
        return Exists(vars1, And(parts1[:2] + [marked, unmarked]))

    def head(self, direction: str, x: str) -> Formula:
        z = self.fresh.take()
        vars1, parts1 = self._head_zone(x, z)
        v, w = self.fresh.take(), self.fresh.take()
        move = self.succ_sup(v, w) if direction == RIGHT else self.pred_sup(v, w)
        jump = Exists([w], And([Diff(w, z, RelOp.EQ, 3), move]))
        if self.head_fix:
            # the old head position is unmarked in the next configuration
            tail = self.pred_at_offset(z, 3, False)
        else:
            tail = Not(Pred(self.p, z))
        consequent = Exists([v], And([jump, Pred(self.p, v), tail]))
        body = Forall(
            [z],
            Implies(And(parts1[2:] + [self.rel(z), Pred(self.p, z)]), consequent),
        )
        return Exists(vars1, And(parts1[:2] + [body]))

    def transition(self, x: str, y: str) -> Formula:
        order = {q: i for i, q in enumerate(self.m.states)}
        disjuncts = []
        for (q, alpha), (q2, alpha2, direction) in sorted(
            self.m.delta.items(), key=lambda kv: (order[kv[0][0]], kv[0][1])
        ):
            disjuncts.append(
                And(
                    [
                        self.state(q, x),
                        self.state(q2, y),
                        self.tape(alpha, alpha2, x),
                        self.head(direction, x),
                    ]
                )
            )
        return Or(disjuncts)

    def step_formula(self) -> Formula:
        v0 = self.anchors[0]
        y, x = self.fresh.take(), self.fresh.take()
        return Forall(
            [y],
            Implies(
                And([Order(y, RelOp.GT, v0), self.start_conf(y), self.not_ended(y)]),
                Exists([x], And([Diff(y, x, RelOp.EQ, 3), self.transition(x, y)])),
            ),
        )

    def end_formula(self) -> Formula:
        x = self.fresh.take()
        return Exists([x], self.state(self.m.q_halt, x))


def rel_def(x: str, pred_name: str = DEFAULT_PRED) -> Formula:
    """Standalone supporting-point formula with fresh bound variables."""
    b = _Builder(_dummy_machine(), pred_name, True, DEFAULT_ANCHORS)
    b.fresh.reserve([x])
    return b.rel(x)


def succ_sup_def(x: str, y: str, pred_name: str = DEFAULT_PRED) -> Formula:
    b = _Builder(_dummy_machine(), pred_name, True, DEFAULT_ANCHORS)
    b.fresh.reserve([x, y])
    return b.succ_sup(x, y)


def pred_sup_def(x: str, y: str, pred_name: str = DEFAULT_PRED) -> Formula:
    b = _Builder(_dummy_machine(), pred_name, True, DEFAULT_ANCHORS)
    b.fresh.reserve([x, y])
    return b.pred_sup(x, y)


def paxioms(
    n: int, anchors=DEFAULT_ANCHORS, pred_name: str = DEFAULT_PRED
) -> Formula:
    """The seven grid axioms for an n-bit state zone."""
    if n < 2:
        raise ValueError("the state zone needs at least 2 points")
    b = _Builder(_dummy_machine(), pred_name, True, anchors)
    b.n = n
    return b.paxioms()


def _dummy_machine() -> TuringMachine:
    return TuringMachine(
        ("a", "b"), "a", "b", {("a", 0): ("b", 0, RIGHT), ("a", 1): ("b", 1, RIGHT)}
    )


def state_formula(
    m: TuringMachine, q: str, x: str, pred_name: str = DEFAULT_PRED
) -> Formula:
    b = _Builder(m, pred_name, True, DEFAULT_ANCHORS)
    b.fresh.reserve([x])
    return b.state(q, x)


def tape_formula(
    alpha: int, alpha2: int, x: str, pred_name: str = DEFAULT_PRED
) -> Formula:
    """Tape condition for one transition; depends only on the source period x."""
    b = _Builder(_dummy_machine(), pred_name, True, DEFAULT_ANCHORS)
    b.fresh.reserve([x])
    return b.tape(alpha, alpha2, x)


def head_formula(
    direction: str, x: str, head_fix: bool = True, pred_name: str = DEFAULT_PRED
) -> Formula:
    b = _Builder(_dummy_machine(), pred_name, head_fix, DEFAULT_ANCHORS)
    b.fresh.reserve([x])
    return b.head(direction, x)


def transition_formula(
    m: TuringMachine, x: str, y: str, head_fix: bool = True, pred_name: str = DEFAULT_PRED
) -> Formula:
    b = _Builder(m, pred_name, head_fix, DEFAULT_ANCHORS)
    b.fresh.reserve([x, y])
    return b.transition(x, y)


def not_ended(m: TuringMachine, y: str, pred_name: str = DEFAULT_PRED) -> Formula:
    b = _Builder(m, pred_name, True, DEFAULT_ANCHORS)
    b.fresh.reserve([y])
    return b.not_ended(y)


def compile_machine(
    m: TuringMachine,
    head_fix: bool = True,
    pred_name: str = DEFAULT_PRED,
    anchors=DEFAULT_ANCHORS,
) -> ReductionOutput:
    """Build the halting formula; deterministic for a given machine."""
    errors = validate_tm(m)
    if errors:
        raise ValueError("invalid machine: " + "; ".join(errors))
    b = _Builder(m, pred_name, head_fix, anchors)
    parts = {
        "start": b.start_formula(),
        "step": b.step_formula(),
        "end": b.end_formula(),
        "paxioms": b.paxioms(),
    }
    halt = And([parts["start"], parts["step"], parts["end"], parts["paxioms"]])
    return ReductionOutput(
        halt, parts, b.anchors, pred_name, b.n, dict(b.codes)
    )
