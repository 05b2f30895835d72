"""Deterministic Turing machines over the two-symbol alphabet {0, 1} with a
bi-infinite tape and no explicit blank (blank cells read 0), plus a direct
simulator used as the ground-truth oracle elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

LEFT = "L"
RIGHT = "R"


@dataclass(frozen=True, eq=True)
class TuringMachine:
    states: tuple[str, ...]
    q_init: str
    q_halt: str
    # (state, read symbol) -> (next state, written symbol, head direction)
    delta: dict[tuple[str, int], tuple[str, int, str]]

    __hash__ = None  # delta is a dict; machines are compared, never hashed

    def __init__(self, states, q_init, q_halt, delta):
        object.__setattr__(self, "states", tuple(states))
        object.__setattr__(self, "q_init", q_init)
        object.__setattr__(self, "q_halt", q_halt)
        object.__setattr__(self, "delta", dict(delta))


@dataclass(frozen=True)
class Configuration:
    """Machine snapshot; the tape stores only the cells holding 1."""

    state: str
    tape: frozenset[int]
    head: int

    def read(self) -> int:
        return 1 if self.head in self.tape else 0


@dataclass(frozen=True)
class RunTrace:
    configs: tuple[Configuration, ...]
    halted: bool

    def __init__(self, configs, halted):
        object.__setattr__(self, "configs", tuple(configs))
        object.__setattr__(self, "halted", bool(halted))
        if not self.configs:
            raise ValueError("a run has at least the initial configuration")


def initial_configuration(m: TuringMachine) -> Configuration:
    return Configuration(m.q_init, frozenset(), 0)


def validate_tm(m: TuringMachine) -> list[str]:
    """Check all machine invariants; returns every violation (empty = ok)."""
    errors = []
    if len(set(m.states)) != len(m.states):
        errors.append("duplicate state names")
    if m.q_init not in m.states:
        errors.append(f"initial state {m.q_init!r} not declared")
    if m.q_halt not in m.states:
        errors.append(f"halting state {m.q_halt!r} not declared")
    for (q, a), (q2, w, d) in sorted(m.delta.items()):
        if q not in m.states:
            errors.append(f"transition from undeclared state {q!r}")
        if q == m.q_halt:
            errors.append(f"outgoing transition from halting state at ({q},{a})")
        if q2 not in m.states:
            errors.append(f"transition into undeclared state {q2!r}")
        if a not in (0, 1) or w not in (0, 1):
            errors.append(f"transition ({q},{a}) uses a symbol outside {{0,1}}")
        if d not in (LEFT, RIGHT):
            errors.append(f"transition ({q},{a}) has direction {d!r}, expected L or R")
    for q in m.states:
        if q == m.q_halt:
            continue
        for a in (0, 1):
            if (q, a) not in m.delta:
                errors.append(f"delta not total at ({q},{a})")
    return errors


def step(m: TuringMachine, c: Configuration) -> Configuration:
    """Apply the unique transition for (state, read symbol)."""
    if c.state == m.q_halt:
        raise ValueError("cannot step from the halting state")
    q2, w, d = m.delta[(c.state, c.read())]
    if w == 1:
        tape = c.tape | {c.head}
    else:
        tape = c.tape - {c.head}
    head = c.head + 1 if d == RIGHT else c.head - 1
    return Configuration(q2, tape, head)


def simulate(m: TuringMachine, max_steps: int) -> RunTrace:
    """Run from the blank-tape initial configuration for at most max_steps."""
    configs = [initial_configuration(m)]
    for _ in range(max_steps):
        if configs[-1].state == m.q_halt:
            break
        configs.append(step(m, configs[-1]))
    return RunTrace(configs, configs[-1].state == m.q_halt)


def consecutive_ok(m: TuringMachine, a: Configuration, b: Configuration) -> bool:
    """Independent pairwise run validity: some transition of delta relates
    a to b (state match, read symbol, written symbol, frame condition on all
    other cells, and a one-step head move)."""
    for (q, alpha), (q2, alpha2, d) in m.delta.items():
        if q != a.state or q2 != b.state:
            continue
        if (1 if a.head in a.tape else 0) != alpha:
            continue
        if (1 if a.head in b.tape else 0) != alpha2:
            continue
        if (a.tape - {a.head}) != (b.tape - {a.head}):
            continue
        expected = a.head + 1 if d == RIGHT else a.head - 1
        if b.head == expected:
            return True
    return False
