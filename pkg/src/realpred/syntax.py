"""Concrete syntax: parenthesized prefix notation for formulas and a
line-oriented Turing-machine description format.

Formula grammar::

    formula := atom | "(not" f ")" | "(and" f+ ")" | "(or" f+ ")"
             | "(=>" f f ")" | "(iff" f f ")"
             | "(forall (" var+ ")" f ")" | "(exists (" var+ ")" f ")"
    atom    := "true" | "false"
             | "(" relop var var ")"
             | "(" relop "(-" var var ")" int ")"
             | "(" predname var ")"
             | "(" predname "(+" var int ")" ")"
             | "(int" var ")"
    relop   := "<" | "<=" | "=" | ">=" | ">"
    var, predname := [A-Za-z][A-Za-z0-9_]*       (keywords reserved)
    int     := "-"? digits

The parser additionally accepts identifiers with a leading underscore run
(``_k3``) so that generated formulas, whose fresh variables carry the
reserved ``_k`` prefix, survive a print/parse round trip.

Machine files are line oriented with ``#`` comments::

    states: <name>+
    init: <name>
    halt: <name>
    trans: <q> <0|1> -> <q'> <0|1> <L|R>         (one line per transition)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .formula import (
    And,
    Diff,
    Exists,
    FALSE,
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
    RelOp,
    TRUE,
)
from .machine import TuringMachine, validate_tm

KEYWORDS = frozenset(
    {"not", "and", "or", "=>", "iff", "forall", "exists", "int", "true", "false"}
)
RELOPS = {op.value: op for op in RelOp}
_IDENT = re.compile(r"_*[A-Za-z][A-Za-z0-9_]*")
_INT = re.compile(r"-?[0-9]+")


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


@dataclass
class ParseError(Exception):
    span: SourceSpan
    message: str
    expected: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        loc = f"at {self.span.start}..{self.span.end}"
        if self.expected:
            return f"{self.message} {loc} (expected {', '.join(self.expected)})"
        return f"{self.message} {loc}"


@dataclass(frozen=True)
class _Token:
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            tokens.append(_Token(ch, SourceSpan(i, i + 1)))
            i += 1
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(_Token(m.group(), SourceSpan(i, m.end())))
            i = m.end()
            continue
        m = _INT.match(text, i)
        if m:
            tokens.append(_Token(m.group(), SourceSpan(i, m.end())))
            i = m.end()
            continue
        for sym in ("<=", ">=", "=>", "<", ">", "=", "-", "+"):
            if text.startswith(sym, i):
                tokens.append(_Token(sym, SourceSpan(i, i + len(sym))))
                i += len(sym)
                break
        else:
            raise ParseError(SourceSpan(i, i + 1), f"unexpected character {ch!r}")
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _eof_span(self) -> SourceSpan:
        end = max(len(self.text) - 1, 0)
        return SourceSpan(end, max(end, len(self.text)))

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, expected: list[str] | None = None) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(self._eof_span(), "unexpected end of input", expected or [])
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next([repr(text)])
        if tok.text != text:
            raise ParseError(tok.span, f"unexpected {tok.text!r}", [repr(text)])
        return tok

    def ident(self, what: str) -> _Token:
        tok = self.next([what])
        if not _IDENT.fullmatch(tok.text):
            raise ParseError(tok.span, f"unexpected {tok.text!r}", [what])
        if tok.text in KEYWORDS:
            raise ParseError(tok.span, f"reserved word {tok.text!r} cannot be a {what}")
        return tok

    def integer(self) -> int:
        tok = self.next(["integer"])
        if not _INT.fullmatch(tok.text):
            raise ParseError(tok.span, f"unexpected {tok.text!r}", ["integer"])
        return int(tok.text)

    def formula(self) -> Formula:
        tok = self.next(["formula"])
        if tok.text == "true":
            return TRUE
        if tok.text == "false":
            return FALSE
        if tok.text != "(":
            raise ParseError(tok.span, f"unexpected {tok.text!r}", ["'('", "true", "false"])
        head = self.next(["connective", "relation", "predicate name"])
        if head.text == "not":
            body = self.formula()
            self.expect(")")
            return Not(body)
        if head.text in ("and", "or"):
            items = [self.formula()]
            while self.peek() is not None and self.peek().text != ")":
                items.append(self.formula())
            self.expect(")")
            return And(items) if head.text == "and" else Or(items)
        if head.text == "=>":
            a, b = self.formula(), self.formula()
            self.expect(")")
            return Implies(a, b)
        if head.text == "iff":
            a, b = self.formula(), self.formula()
            self.expect(")")
            return Iff(a, b)
        if head.text in ("forall", "exists"):
            self.expect("(")
            vars = []
            spans = []
            while self.peek() is not None and self.peek().text != ")":
                v = self.ident("variable")
                vars.append(v.text)
                spans.append(v.span)
            self.expect(")")
            if not vars:
                raise ParseError(head.span, "quantifier needs at least one variable")
            dup = {v for v in vars if vars.count(v) > 1}
            if dup:
                at = spans[vars.index(next(iter(dup)))]
                raise ParseError(at, f"duplicate binder variable {next(iter(dup))!r}")
            body = self.formula()
            self.expect(")")
            return Forall(vars, body) if head.text == "forall" else Exists(vars, body)
        if head.text == "int":
            v = self.ident("variable")
            self.expect(")")
            return IsInt(v.text)
        if head.text in RELOPS:
            op = RELOPS[head.text]
            tok = self.peek()
            if tok is not None and tok.text == "(":
                self.next()
                self.expect("-")
                x = self.ident("variable")
                y = self.ident("variable")
                self.expect(")")
                c = self.integer()
                self.expect(")")
                return Diff(x.text, y.text, op, c)
            x = self.ident("variable")
            y = self.ident("variable")
            self.expect(")")
            return Order(x.text, op, y.text)
        if _IDENT.fullmatch(head.text) and head.text not in KEYWORDS:
            tok = self.peek()
            if tok is not None and tok.text == "(":
                self.next()
                self.expect("+")
                x = self.ident("variable")
                c = self.integer()
                self.expect(")")
                self.expect(")")
                return PredOffset(head.text, x.text, c)
            x = self.ident("variable")
            self.expect(")")
            return Pred(head.text, x.text)
        raise ParseError(
            head.span, f"unexpected {head.text!r}", ["connective", "relation", "predicate name"]
        )


def parse_formula(text: str) -> Formula:
    """Parse the prefix grammar above; raises ParseError with a location."""
    p = _Parser(text)
    f = p.formula()
    tok = p.peek()
    if tok is not None:
        raise ParseError(tok.span, f"trailing input {tok.text!r}")
    return f


def print_formula(f: Formula) -> str:
    """Canonical text; parse_formula(print_formula(f)) reproduces f."""
    if isinstance(f, TRUE.__class__):
        return "true"
    if isinstance(f, FALSE.__class__):
        return "false"
    if isinstance(f, Order):
        return f"({f.op.value} {f.x} {f.y})"
    if isinstance(f, Diff):
        return f"({f.op.value} (- {f.x} {f.y}) {f.c})"
    if isinstance(f, Pred):
        return f"({f.name} {f.x})"
    if isinstance(f, PredOffset):
        return f"({f.name} (+ {f.x} {f.c}))"
    if isinstance(f, IsInt):
        return f"(int {f.x})"
    if isinstance(f, Not):
        return f"(not {print_formula(f.body)})"
    if isinstance(f, And):
        return "(and " + " ".join(print_formula(g) for g in f.items) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(print_formula(g) for g in f.items) + ")"
    if isinstance(f, Implies):
        return f"(=> {print_formula(f.antecedent)} {print_formula(f.consequent)})"
    if isinstance(f, Iff):
        return f"(iff {print_formula(f.left)} {print_formula(f.right)})"
    if isinstance(f, Exists):
        return f"(exists ({' '.join(f.vars)}) {print_formula(f.body)})"
    if isinstance(f, Forall):
        return f"(forall ({' '.join(f.vars)}) {print_formula(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


_TM_NAME = re.compile(r"[A-Za-z0-9_]+")


def parse_tm(text: str) -> TuringMachine:
    """Parse a machine description and validate it."""
    states: list[str] = []
    init = halt = None
    delta: dict[tuple[str, int], tuple[str, int, str]] = {}
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0].strip()
        start = offset + raw.index(raw.strip()[0]) if raw.strip() else offset
        offset += len(raw)
        if not line:
            continue
        span = SourceSpan(start, start + len(line))
        if ":" not in line:
            raise ParseError(span, f"expected 'key: ...' line, got {line!r}")
        key, rest = (part.strip() for part in line.split(":", 1))
        if key == "states":
            states.extend(_tm_names(rest, span))
        elif key == "init":
            (init,) = _tm_names(rest, span, exactly=1)
        elif key == "halt":
            (halt,) = _tm_names(rest, span, exactly=1)
        elif key == "trans":
            if "->" not in rest:
                raise ParseError(span, "transition needs '->'")
            lhs, rhs = rest.split("->", 1)
            q, a = _tm_names(lhs, span, exactly=2)
            q2, w, d = _tm_names(rhs, span, exactly=3)
            if a not in ("0", "1") or w not in ("0", "1"):
                raise ParseError(span, "tape symbols must be 0 or 1")
            if d not in ("L", "R"):
                raise ParseError(span, "direction must be L or R")
            if (q, int(a)) in delta:
                if delta[(q, int(a))] != (q2, int(w), d):
                    raise ParseError(
                        span, f"conflicting transitions for ({q},{a}): delta must be functional"
                    )
                continue
            delta[(q, int(a))] = (q2, int(w), d)
        else:
            raise ParseError(span, f"unknown key {key!r}", ["states", "init", "halt", "trans"])
    whole = SourceSpan(0, len(text))
    if not states:
        raise ParseError(whole, "missing 'states:' line")
    if init is None:
        raise ParseError(whole, "missing 'init:' line")
    if halt is None:
        raise ParseError(whole, "missing 'halt:' line")
    m = TuringMachine(states, init, halt, delta)
    errors = validate_tm(m)
    if errors:
        raise ParseError(whole, "; ".join(errors))
    return m


def _tm_names(chunk: str, span: SourceSpan, exactly: int | None = None) -> list[str]:
    names = chunk.split()
    for name in names:
        if not _TM_NAME.fullmatch(name):
            raise ParseError(span, f"bad name {name!r}")
    if exactly is not None and len(names) != exactly:
        raise ParseError(span, f"expected {exactly} name(s), got {len(names)}")
    return names


def print_tm(m: TuringMachine) -> str:
    lines = [
        "states: " + " ".join(m.states),
        f"init: {m.q_init}",
        f"halt: {m.q_halt}",
    ]
    for q in m.states:
        for a in (0, 1):
            if (q, a) in m.delta:
                q2, w, d = m.delta[(q, a)]
                lines.append(f"trans: {q} {a} -> {q2} {w} {d}")
    return "\n".join(lines) + "\n"
