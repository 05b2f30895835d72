"""Command-line front-end.

Subcommands cover the whole pipeline: parse/print, fragment classification,
the guard-elimination translation, machine simulation, the halting-formula
compiler, model construction and checking, and SMT-LIB emission with an
optional external solver.

Exit codes: 0 success, 1 a check reported failures, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import shlex
import subprocess
import sys

from .formula import expand_shorthand
from .fragments import classify
from .machine import simulate
from .realmodel import (
    abstraction_from_interval_model,
    check_grid_axioms,
    check_halt_constraints,
    build_appendix_model,
    dump_model,
    intended_model_from_trace,
    load_model,
)
from .reduction import compile_machine
from .smtlib import emit_smtlib
from .syntax import ParseError, parse_formula, parse_tm, print_formula
from .translate import translate

_USAGE_ERROR = 2
_CHECK_FAILED = 1


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(args, text: str) -> None:
    if args.output == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _cmd_parse(args) -> int:
    _write(args, print_formula(parse_formula(_read(args.input))))
    return 0


def _cmd_classify(args) -> int:
    report = classify(expand_shorthand(parse_formula(_read(args.input))))
    labels = sorted(label.value for label in report.best_labels)
    lines = [" ".join(labels)]
    lines += [f"violation: {v}" for v in report.violations]
    _write(args, "\n".join(lines))
    return 0


def _cmd_translate(args) -> int:
    out = translate(expand_shorthand(parse_formula(_read(args.input))))
    _write(args, print_formula(out.combined))
    return 0


def _cmd_compile(args) -> int:
    out = compile_machine(parse_tm(_read(args.input)), head_fix=not args.no_head_fix)
    f = out.halt if args.part == "halt" else out.parts[args.part]
    _write(args, print_formula(f))
    return 0


def _cmd_simulate(args) -> int:
    m = parse_tm(_read(args.input))
    trace = simulate(m, args.bound)
    lines = []
    for i, c in enumerate(trace.configs):
        ones = ",".join(str(k) for k in sorted(c.tape))
        lines.append(f"step={i} state={c.state} head={c.head} ones={ones}")
    lines.append(f"halted={'true' if trace.halted else 'false'}")
    _write(args, "\n".join(lines))
    return 0


def _cmd_build_model(args) -> int:
    if args.n_bits is not None:
        model = build_appendix_model(args.n_bits, args.depth)
    else:
        if args.input is None:
            raise ValueError("build-model needs a machine file or --n-bits")
        m = parse_tm(_read(args.input))
        trace = simulate(m, args.bound)
        _, model = intended_model_from_trace(m, trace, depth=args.depth)
    _write(args, dump_model(model))
    return 0


def _cmd_check_model(args) -> int:
    model = load_model(_read(args.input))
    report = check_grid_axioms(model)
    lines = report.lines()
    ok = report.ok
    if args.tm:
        machine = parse_tm(_read(args.tm))
        halt_report = check_halt_constraints(
            machine, abstraction_from_interval_model(model)
        )
        lines += halt_report.lines()
        ok = ok and halt_report.ok
    _write(args, "\n".join(lines))
    return 0 if ok else _CHECK_FAILED


def _script_for(args) -> str:
    if args.tm:
        out = compile_machine(parse_tm(_read(args.input)), head_fix=not args.no_head_fix)
        f = out.halt
    else:
        f = expand_shorthand(parse_formula(_read(args.input)))
    return emit_smtlib(f, close_free=args.close_free)


def _cmd_emit_smt(args) -> int:
    _write(args, _script_for(args))
    return 0


def _cmd_solve(args) -> int:
    script = _script_for(args)
    if not args.solver:
        _write(args, script)
        print("no solver configured; emitted the script only", file=sys.stderr)
        return 0
    cmd = shlex.split(args.solver)
    try:
        proc = subprocess.run(
            cmd,
            input=script,
            capture_output=True,
            text=True,
            timeout=args.timeout,
        )
        verdict = (proc.stdout.strip().splitlines() or ["unknown"])[-1]
    except FileNotFoundError:
        print("solver executable not found", file=sys.stderr)
        return _USAGE_ERROR
    except subprocess.TimeoutExpired:
        _write(args, "timeout")
        return 0
    _write(args, verdict)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="realpred",
        description="order/difference-logic fragments over the reals with unary predicates",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="input file, or - for stdin")
        p.add_argument("-o", "--output", default="-", help="output file (default stdout)")

    common(sub.add_parser("parse", help="echo a formula in canonical form"))
    common(sub.add_parser("classify", help="report fragment labels and guard violations"))
    common(sub.add_parser("translate-lmix", help="translate into order-only form"))

    p = sub.add_parser("compile-tm", help="compile a machine into its halting formula")
    common(p)
    p.add_argument("--no-head-fix", action="store_true", help="emit the literal head clause")
    p.add_argument(
        "--part",
        choices=["halt", "start", "step", "end", "paxioms"],
        default="halt",
    )

    p = sub.add_parser("simulate-tm", help="run a machine from the blank tape")
    common(p)
    p.add_argument("--bound", type=int, default=1000, help="maximum steps (default 1000)")

    p = sub.add_parser("build-model", help="dump the intended model of a machine run")
    p.add_argument("input", nargs="?", help="machine file, or - for stdin")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--bound", type=int, default=1000)
    p.add_argument("--depth", type=int, default=8, help="alternation depth (default 8)")
    p.add_argument("--n-bits", type=int, help="build an unlabeled grid model instead")

    p = sub.add_parser("check-model", help="check grid axioms (and a machine's run families)")
    common(p)
    p.add_argument("--tm", help="machine file for the run-constraint families")

    for name in ("emit-smt", "solve"):
        p = sub.add_parser(name, help=f"{name.replace('-', ' ')} for a formula or machine")
        common(p)
        p.add_argument("--tm", action="store_true", help="input is a machine description")
        p.add_argument("--close-free", action="store_true", help="existentially close free variables")
        p.add_argument("--no-head-fix", action="store_true")
        if name == "solve":
            p.add_argument("--solver", help="solver command reading SMT-LIB on stdin")
            p.add_argument("--timeout", type=int, default=10, help="seconds (default 10)")
    return ap


_DISPATCH = {
    "parse": _cmd_parse,
    "classify": _cmd_classify,
    "translate-lmix": _cmd_translate,
    "compile-tm": _cmd_compile,
    "simulate-tm": _cmd_simulate,
    "build-model": _cmd_build_model,
    "check-model": _cmd_check_model,
    "emit-smt": _cmd_emit_smt,
    "solve": _cmd_solve,
}


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return _USAGE_ERROR if e.code not in (0, None) else 0
    if getattr(args, "depth", 4) < 4:
        print("error: --depth must be at least 4", file=sys.stderr)
        return _USAGE_ERROR
    if getattr(args, "timeout", 1) < 1:
        print("error: --timeout must be at least 1", file=sys.stderr)
        return _USAGE_ERROR
    try:
        return _DISPATCH[args.command](args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return _USAGE_ERROR
    except FileNotFoundError as e:
        print(f"missing file: {e.filename}", file=sys.stderr)
        return _USAGE_ERROR
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return _USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
