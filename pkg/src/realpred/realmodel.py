"""Symbolic predicate models over the real line.

A model is a finitely generated pattern: open intervals tagged as inside or
outside the predicate, labeled isolated points carrying encoding bits, and an
all-true prefix left of the origin.  The generated pattern follows the
periodic grid construction: per period of length 3, a state zone cut into
2n-2 equal intervals, then two unit zones whose alternating dyadic interval
families accumulate toward the zone margins, giving a bi-infinite chain of
supporting points per zone, truncated here at a finite depth.

Supporting point: a point with an in-S interval immediately to its left and
an out-of-S interval immediately to its right.  These points carry the
discrete content (state bits, head marks, tape marks), which this module
extracts and checks against machine runs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .dyadic import Dyadic, half_power
from .machine import RIGHT, RunTrace, TuringMachine
from .reduction import state_codes

ZERO = Fraction(0)


class Zone(enum.Enum):
    STATE = "state"
    HEAD = "head"
    TAPE = "tape"
    SEPARATOR = "separator"


@dataclass(frozen=True)
class TaggedInterval:
    lo: Fraction
    hi: Fraction
    in_s: bool

    def shifted(self, delta: Fraction) -> "TaggedInterval":
        return TaggedInterval(self.lo + delta, self.hi + delta, self.in_s)


@dataclass(frozen=True)
class GridPoint:
    config_index: int
    zone: Zone
    index: int  # state slot 1..n, head/tape cell in Z, 0 for the separator


@dataclass
class IntervalModel:
    n_bits: int
    depth: int
    period_count: int
    origin: Fraction
    prefix_true: Optional[bool]
    intervals: tuple[TaggedInterval, ...]
    point_labels: dict[Fraction, bool] = field(default_factory=dict)


@dataclass(frozen=True)
class ConfigEncoding:
    state_bits: tuple[int, ...]
    head_marks: frozenset[int]
    tape_marks: frozenset[int]


@dataclass(frozen=True)
class GridAbstraction:
    n_bits: int
    configs: tuple[ConfigEncoding, ...]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CheckReport:
    results: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def lines(self) -> list[str]:
        return [
            f"{r.name} {'ok' if r.passed else 'FAIL'}"
            + (f": {r.detail}" if r.detail and not r.passed else "")
            for r in self.results
        ]


# -- geometry of one period ----------------------------------------------------


def _tail_sum(j: int) -> Dyadic:
    """1/8 + 1/16 + ... + 1/2**j, i.e. 1/4 - 1/2**j."""
    return half_power(2) - half_power(j)


def cell_offset(cell: int) -> Fraction:
    """Offset of a head/tape cell's supporting point within its unit zone."""
    half = half_power(1)
    if cell == 0:
        return half.to_fraction()
    if cell > 0:
        j = cell + 2
        return (half + _tail_sum(j) + half_power(j + 2)).to_fraction()
    j = 3 - cell
    return (half - _tail_sum(j) + half_power(j + 2)).to_fraction()


def cell_range(depth: int) -> range:
    """Cells whose supporting points are generated at the given depth."""
    return range(3 - depth, depth - 1)


def state_offsets(n_bits: int) -> list[Fraction]:
    return [Fraction(i, n_bits - 1) for i in range(n_bits)]


def _state_zone(n: int) -> list[TaggedInterval]:
    out = []
    for i in range(n - 1):
        lo = Fraction(i, n - 1)
        mid = Fraction(2 * i + 1, 2 * (n - 1))
        hi = Fraction(i + 1, n - 1)
        out.append(TaggedInterval(lo, mid, False))
        out.append(TaggedInterval(mid, hi, True))
    return out


def _cell_zone(depth: int) -> list[TaggedInterval]:
    """Alternating families of one unit zone, offsets relative to the zone base."""
    half = half_power(1)
    quarter = half_power(2)
    items = [
        TaggedInterval(ZERO, quarter.to_fraction(), False),
        TaggedInterval((half + quarter).to_fraction(), Fraction(1), True),
        TaggedInterval((half - half_power(3)).to_fraction(), half.to_fraction(), True),
        TaggedInterval(half.to_fraction(), (half + half_power(3)).to_fraction(), False),
    ]
    for j in range(4, depth + 1):
        lo = half - _tail_sum(j)
        mid = lo + half_power(j + 2)
        hi = half - _tail_sum(j - 1)
        items.append(TaggedInterval(lo.to_fraction(), mid.to_fraction(), True))
        items.append(TaggedInterval(mid.to_fraction(), hi.to_fraction(), False))
    for j in range(3, depth + 1):
        lo = half + _tail_sum(j)
        mid = lo + half_power(j + 2)
        hi = half + _tail_sum(j + 1)
        items.append(TaggedInterval(lo.to_fraction(), mid.to_fraction(), True))
        items.append(TaggedInterval(mid.to_fraction(), hi.to_fraction(), False))
    return sorted(items, key=lambda iv: iv.lo)


def build_appendix_model(
    n: int,
    depth: int,
    periods: int = 1,
    origin: Fraction | int = 0,
    point_labels: dict[Fraction, bool] | None = None,
) -> IntervalModel:
    """Materialize the periodic grid pattern at finite depth.

    Per period: the state zone's 2n-2 equal alternating intervals, then two
    identical unit zones (head, tape) offset by +1 and +2.
    """
    if n < 2:
        raise ValueError("state zone needs n >= 2")
    if depth < 4:
        raise ValueError("depth must be at least 4")
    if periods < 1:
        raise ValueError("need at least one period")
    origin = Fraction(origin)
    state = _state_zone(n)
    cells = _cell_zone(depth)
    intervals: list[TaggedInterval] = []
    for k in range(periods):
        base = origin + 3 * k
        intervals.extend(iv.shifted(base) for iv in state)
        intervals.extend(iv.shifted(base + 1) for iv in cells)
        intervals.extend(iv.shifted(base + 2) for iv in cells)
    intervals.sort(key=lambda iv: iv.lo)
    return IntervalModel(
        n_bits=n,
        depth=depth,
        period_count=periods,
        origin=origin,
        prefix_true=True,
        intervals=tuple(intervals),
        point_labels=dict(point_labels or {}),
    )


def canonical_integer_model(lo: int, hi: int) -> IntervalModel:
    """Predicate true exactly on the integers of [lo, hi]; the open unit
    intervals between them are out of the predicate.  The degenerate grid
    metadata marks this as a non-periodic model."""
    if hi <= lo:
        raise ValueError("window must contain at least two integers")
    intervals = tuple(
        TaggedInterval(Fraction(k), Fraction(k + 1), False) for k in range(lo, hi)
    )
    labels = {Fraction(k): True for k in range(lo, hi + 1)}
    return IntervalModel(
        n_bits=0,
        depth=0,
        period_count=0,
        origin=Fraction(lo),
        prefix_true=None,
        intervals=intervals,
        point_labels=labels,
    )


# -- supporting points ---------------------------------------------------------


def _sorted_intervals(m: IntervalModel) -> list[TaggedInterval]:
    return sorted(m.intervals, key=lambda iv: (iv.lo, iv.hi))


def supporting_points(m: IntervalModel) -> list[Fraction]:
    """All points with an in-S interval ending exactly where an out-of-S
    interval begins; the all-true prefix counts as an in-S interval."""
    ivs = _sorted_intervals(m)
    if m.prefix_true:
        ivs = [TaggedInterval(m.origin - 1, m.origin, True)] + ivs
    out = []
    for left, right in zip(ivs, ivs[1:]):
        if left.hi == right.lo and left.in_s and not right.in_s:
            out.append(left.hi)
    return out


def zone_and_period(m: IntervalModel, x: Fraction) -> tuple[int, Zone, Fraction]:
    """Locate x in the periodic layout: (period, zone, offset within period)."""
    rel = x - m.origin
    k = rel // 3
    r = rel - 3 * k
    if r <= 1:
        return int(k), Zone.STATE, r
    if r < 2:
        return int(k), Zone.HEAD, r
    if r == 2:
        return int(k), Zone.SEPARATOR, r
    return int(k), Zone.TAPE, r


def extract_supporting_points(
    m: IntervalModel, zone: Zone, config_index: int
) -> list[Fraction]:
    """Supporting points of one zone of one period, in increasing order."""
    out = []
    for p in supporting_points(m):
        k, z, _ = zone_and_period(m, p)
        if k == config_index and z is zone:
            out.append(p)
    return out


def grid_index(m: IntervalModel, x: Fraction | int | Dyadic) -> Optional[GridPoint]:
    """Map a supporting coordinate to its grid cell; None if x is not a
    supporting point or sits at no generated cell."""
    if m.n_bits < 2:
        raise ValueError("model has no grid metadata")
    x = x.to_fraction() if isinstance(x, Dyadic) else Fraction(x)
    if x not in set(supporting_points(m)):
        return None
    k, zone, r = zone_and_period(m, x)
    if zone is Zone.STATE:
        for i, off in enumerate(state_offsets(m.n_bits)):
            if r == off:
                return GridPoint(k, Zone.STATE, i + 1)
        return None
    if zone is Zone.SEPARATOR:
        return GridPoint(k, Zone.SEPARATOR, 0)
    base = 1 if zone is Zone.HEAD else 2
    offset = r - base
    for cell in cell_range(m.depth):
        if offset == cell_offset(cell):
            return GridPoint(k, zone, cell)
    return None


def predicate_at(m: IntervalModel, x: Fraction) -> Optional[bool]:
    """Membership of x in the predicate, or None where the finite pattern
    leaves it undescribed."""
    if x in m.point_labels:
        return m.point_labels[x]
    if x < m.origin and m.prefix_true is not None:
        return m.prefix_true
    for iv in m.intervals:
        if iv.lo < x < iv.hi:
            return iv.in_s
    return None


def shift_model(m: IntervalModel, k: int) -> IntervalModel:
    """Translate the whole model by an integer offset."""
    delta = Fraction(k)
    return IntervalModel(
        n_bits=m.n_bits,
        depth=m.depth,
        period_count=m.period_count,
        origin=m.origin + delta,
        prefix_true=m.prefix_true,
        intervals=tuple(iv.shifted(delta) for iv in m.intervals),
        point_labels={p + delta: b for p, b in m.point_labels.items()},
    )


# -- machine traces as models ----------------------------------------------------


def trace_to_abstraction(m: TuringMachine, t: RunTrace) -> GridAbstraction:
    codes = state_codes(m)
    configs = tuple(
        ConfigEncoding(codes[c.state], frozenset({c.head}), frozenset(c.tape))
        for c in t.configs
    )
    return GridAbstraction(len(next(iter(codes.values()))), configs)


def required_depth(g: GridAbstraction) -> int:
    cells = {0}
    for c in g.configs:
        cells |= c.head_marks | c.tape_marks
    return max(4, max(cells) + 2, 3 - min(cells))


def abstraction_to_interval_model(
    g: GridAbstraction, depth: int, origin: Fraction | int = 0
) -> IntervalModel:
    """Concrete model for a discrete encoding: one period per configuration,
    every generated supporting point labeled with its encoding bit."""
    cells = cell_range(depth)
    for i, c in enumerate(g.configs):
        outside = (c.head_marks | c.tape_marks) - set(cells)
        if outside:
            raise ValueError(
                f"depth {depth} too small: config {i} marks cells {sorted(outside)}"
            )
    origin = Fraction(origin)
    labels: dict[Fraction, bool] = {}
    offs = state_offsets(g.n_bits)
    for k, c in enumerate(g.configs):
        base = origin + 3 * k
        for off, bit in zip(offs, c.state_bits):
            labels[base + off] = bool(bit)
        labels[base + 2] = False
        for cell in cells:
            labels[base + 1 + cell_offset(cell)] = cell in c.head_marks
            labels[base + 2 + cell_offset(cell)] = cell in c.tape_marks
    return build_appendix_model(
        g.n_bits, depth, periods=len(g.configs), origin=origin, point_labels=labels
    )


def abstraction_from_interval_model(m: IntervalModel) -> GridAbstraction:
    """Read the encoding back off the labeled supporting points."""
    if m.n_bits < 2:
        raise ValueError("model has no grid metadata")
    offs = state_offsets(m.n_bits)
    cells = cell_range(m.depth)
    configs = []
    for k in range(m.period_count):
        base = m.origin + 3 * k
        bits = []
        for off in offs:
            p = base + off
            if p not in m.point_labels:
                raise ValueError(f"unlabeled state point at {p}")
            bits.append(int(m.point_labels[p]))
        head = frozenset(
            c for c in cells if m.point_labels.get(base + 1 + cell_offset(c))
        )
        tape = frozenset(
            c for c in cells if m.point_labels.get(base + 2 + cell_offset(c))
        )
        configs.append(ConfigEncoding(tuple(bits), head, tape))
    return GridAbstraction(m.n_bits, tuple(configs))


def intended_model_from_trace(
    m: TuringMachine,
    t: RunTrace,
    depth: int | None = None,
    origin: Fraction | int = 0,
    periods: int | None = None,
) -> tuple[GridAbstraction, IntervalModel]:
    """The model a halting run is meant to satisfy.  Extra periods beyond the
    trace repeat the final configuration and are only allowed once halted."""
    g = trace_to_abstraction(m, t)
    if periods is not None and periods > len(g.configs):
        if not t.halted:
            raise ValueError("cannot freeze a non-final configuration forward")
        extra = (periods - len(g.configs)) * (g.configs[-1],)
        g = GridAbstraction(g.n_bits, g.configs + extra)
    if depth is None:
        depth = required_depth(g)
    return g, abstraction_to_interval_model(g, depth, origin)


# -- structural checks -------------------------------------------------------------


def _covered_by(
    m: IntervalModel, lo: Fraction, hi: Fraction, in_s: bool
) -> Optional[str]:
    """None if (lo, hi) is tiled by described intervals of the given tag."""
    touching = [
        iv for iv in _sorted_intervals(m) if iv.hi > lo and iv.lo < hi
    ]
    wrong = [iv for iv in touching if iv.in_s != in_s]
    if wrong:
        iv = wrong[0]
        return f"({iv.lo}, {iv.hi}) is {'in' if iv.in_s else 'out of'} S"
    edge = lo
    for iv in touching:
        if iv.lo > edge:
            return f"uncovered gap at {edge}"
        edge = max(edge, iv.hi)
    if edge < hi:
        return f"uncovered gap at {edge}"
    return None


def check_grid_axioms(m: IntervalModel) -> CheckReport:
    """Verify the seven grid constraints on the materialized pattern, each
    reported separately with a witness for failures."""
    o = m.origin
    sp = supporting_points(m)
    spset = set(sp)
    results = []

    landmarks = [o, o + 1, o + 2] + ([o + 3] if m.period_count >= 2 else [])
    missing = [str(p) for p in landmarks if p not in spset]
    results.append(
        CheckResult(
            "AXIOM1",
            not missing,
            "" if not missing else f"no supporting point at landmark(s) {', '.join(missing)}",
        )
    )

    anchors = [o, o + 1, o + 2]
    bad = [str(p) for p in anchors if p not in spset]
    results.append(
        CheckResult(
            "AXIOM2",
            not bad,
            "" if not bad else f"anchor(s) {', '.join(bad)} not supporting",
        )
    )

    results.append(
        CheckResult(
            "AXIOM3",
            m.prefix_true is True,
            "" if m.prefix_true is True else "prefix left of the origin is not all-true",
        )
    )

    interior = [p for p in sp if o < p < o + 1]
    expected = m.n_bits - 2
    results.append(
        CheckResult(
            "AXIOM4",
            len(interior) == expected,
            ""
            if len(interior) == expected
            else f"{len(interior)} supporting points in ({o}, {o + 1}), expected {expected}",
        )
    )

    results.append(_check_axiom5(m, sp))
    results.append(_check_axiom6(m, sp))
    results.append(_check_axiom7(m, sp))
    return CheckReport(tuple(results))


def _check_axiom5(m: IntervalModel, sp: list[Fraction]) -> CheckResult:
    o = m.origin
    b1 = o + 1 + Fraction(1, 4)
    b2 = o + 2 - Fraction(1, 4)
    problem = _covered_by(m, o + 1, b1, False)
    if problem:
        return CheckResult("AXIOM5", False, f"left margin ({o + 1}, {b1}): {problem}")
    problem = _covered_by(m, b2, o + 2, True)
    if problem:
        return CheckResult("AXIOM5", False, f"right margin ({b2}, {o + 2}): {problem}")
    zone = [p for p in sp if o + 1 < p < o + 2]
    stray = [p for p in zone if not (b1 < p < b2)]
    if stray:
        return CheckResult(
            "AXIOM5", False, f"supporting point {stray[0]} outside ({b1}, {b2})"
        )
    if not zone:
        return CheckResult("AXIOM5", False, "no supporting points in the head zone")
    for p, q in zip(zone, zone[1:]):
        between = [iv for iv in _sorted_intervals(m) if p <= iv.lo and iv.hi <= q]
        shape_ok = (
            len(between) == 2
            and between[0].lo == p
            and not between[0].in_s
            and between[0].hi == between[1].lo
            and between[1].in_s
            and between[1].hi == q
        )
        if not shape_ok:
            return CheckResult(
                "AXIOM5",
                False,
                f"no contiguous successor step between {p} and {q}",
            )
    return CheckResult("AXIOM5", True)


def _check_axiom6(m: IntervalModel, sp: list[Fraction]) -> CheckResult:
    o = m.origin
    head = {p for p in sp if o + 1 < p < o + 2}
    tape = {p for p in sp if o + 2 < p < o + 3}
    shifted = {p + 1 for p in head}
    if shifted != tape:
        diff = sorted(shifted.symmetric_difference(tape))
        return CheckResult(
            "AXIOM6",
            False,
            f"tape-zone pattern differs from head zone shifted by +1 at {diff[0]}",
        )
    return CheckResult("AXIOM6", True)


def _check_axiom7(m: IntervalModel, sp: list[Fraction]) -> CheckResult:
    o = m.origin
    by_period: dict[int, set[Fraction]] = {k: set() for k in range(m.period_count)}
    for p in sp:
        k = int((p - o) // 3)
        if 0 <= k < m.period_count:
            by_period[k].add(p - 3 * k)
    for k in range(1, m.period_count):
        if by_period[k] != by_period[0]:
            diff = sorted(by_period[k].symmetric_difference(by_period[0]))
            return CheckResult(
                "AXIOM7",
                False,
                f"period {k} differs from period 0 shifted by {3 * k} at offset {diff[0]}",
            )
    return CheckResult("AXIOM7", True)


def check_halt_constraints(m: TuringMachine, g: GridAbstraction) -> CheckReport:
    """Discrete run-validity of an encoding: initial conditions, per-step
    transition consistency, head-mark uniqueness, and a halting configuration."""
    codes = state_codes(m)
    if g.n_bits != len(next(iter(codes.values()))):
        raise ValueError("abstraction bit width does not match the machine")
    decode = {bits: q for q, bits in codes.items()}
    states = [decode.get(c.state_bits) for c in g.configs]

    results = []

    c0 = g.configs[0]
    start_issues = []
    if states[0] != m.q_init:
        start_issues.append(f"config 0 encodes {states[0]!r}, expected {m.q_init!r}")
    if len(c0.head_marks) != 1:
        start_issues.append(f"config 0 has {len(c0.head_marks)} head marks")
    if c0.tape_marks:
        start_issues.append("config 0 has a nonblank tape")
    results.append(CheckResult("START", not start_issues, "; ".join(start_issues)))

    step_issue = ""
    for k in range(1, len(g.configs)):
        if m.q_halt in states[:k]:
            break
        issue = _step_issue(m, states, g.configs, k)
        if issue:
            step_issue = f"step {k}: {issue}"
            break
    results.append(CheckResult("STEP", not step_issue, step_issue))

    ended = m.q_halt in states
    results.append(
        CheckResult("END", ended, "" if ended else "no configuration encodes the halting state")
    )

    multi = [i for i, c in enumerate(g.configs) if len(c.head_marks) != 1]
    results.append(
        CheckResult(
            "HEAD",
            not multi,
            "" if not multi else f"config {multi[0]} has {len(g.configs[multi[0]].head_marks)} head marks",
        )
    )
    return CheckReport(tuple(results))


# -- text form ---------------------------------------------------------------


_PREFIX_WORDS = {True: "in", False: "out", None: "none"}


def dump_model(m: IntervalModel) -> str:
    """One header line, one line per interval, one line per labeled point."""
    lines = [
        f"model n_bits={m.n_bits} depth={m.depth} periods={m.period_count}"
        f" origin={m.origin} prefix={_PREFIX_WORDS[m.prefix_true]}"
    ]
    for iv in _sorted_intervals(m):
        mid = (iv.lo + iv.hi) / 2
        _, zone, _ = zone_and_period(m, mid)
        lines.append(
            f"{zone.value} {zone_and_period(m, mid)[0]} {iv.lo} {iv.hi}"
            f" {'in' if iv.in_s else 'out'}"
        )
    for p in sorted(m.point_labels):
        k, _, _ = zone_and_period(m, p)
        lines.append(f"point {k} {p} {int(m.point_labels[p])}")
    return "\n".join(lines) + "\n"


def load_model(text: str) -> IntervalModel:
    header: dict[str, str] = {}
    intervals: list[TaggedInterval] = []
    labels: dict[Fraction, bool] = {}
    words_prefix = {v: k for k, v in _PREFIX_WORDS.items()}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "model":
            for item in parts[1:]:
                key, _, value = item.partition("=")
                header[key] = value
        elif parts[0] == "point":
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: bad label line")
            labels[Fraction(parts[2])] = parts[3] == "1"
        elif parts[0] in ("state", "head", "tape"):
            if len(parts) != 5 or parts[4] not in ("in", "out"):
                raise ValueError(f"line {lineno}: bad interval line")
            intervals.append(
                TaggedInterval(Fraction(parts[2]), Fraction(parts[3]), parts[4] == "in")
            )
        else:
            raise ValueError(f"line {lineno}: unknown line kind {parts[0]!r}")
    if not header:
        raise ValueError("missing model header line")
    try:
        return IntervalModel(
            n_bits=int(header["n_bits"]),
            depth=int(header["depth"]),
            period_count=int(header["periods"]),
            origin=Fraction(header["origin"]),
            prefix_true=words_prefix[header["prefix"]],
            intervals=tuple(sorted(intervals, key=lambda iv: iv.lo)),
            point_labels=labels,
        )
    except KeyError as e:
        raise ValueError(f"model header missing field {e}") from None


def _step_issue(
    m: TuringMachine, states: list, configs: tuple[ConfigEncoding, ...], k: int
) -> str:
    prev, cur = configs[k - 1], configs[k]
    q, q2 = states[k - 1], states[k]
    if q is None:
        return f"config {k - 1} state bits decode to no state"
    if q2 is None:
        return f"config {k} state bits decode to no state"
    if len(prev.head_marks) != 1:
        return f"config {k - 1} head position is ambiguous"
    (h,) = prev.head_marks
    alpha = 1 if h in prev.tape_marks else 0
    entry = m.delta.get((q, alpha))
    if entry is None:
        return f"no transition from ({q}, {alpha})"
    q2_exp, written, direction = entry
    if q2 != q2_exp:
        return f"state {q2!r} does not follow ({q}, {alpha}) -> {q2_exp!r}"
    if (h in cur.tape_marks) != (written == 1):
        return f"cell {h} does not hold the written symbol {written}"
    if prev.tape_marks - {h} != cur.tape_marks - {h}:
        changed = sorted((prev.tape_marks ^ cur.tape_marks) - {h})
        return f"tape changed away from the head at cell {changed[0]}"
    target = h + 1 if direction == RIGHT else h - 1
    if target not in cur.head_marks:
        return f"head mark missing at {target} after moving {direction}"
    return ""
