"""First-order fragments over the reals with unary predicates: formula
manipulation, fragment classification, the guard-elimination translation into
the order-only fragment, a Turing-machine halting reduction into difference
logic over a single predicate, and symbolic real-line models with structural
checkers.
"""

from .dyadic import Dyadic
from .evaluate import Verdict, bounded_evaluate
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
    alpha_equal,
    expand_shorthand,
    free_vars,
    normalize_diff,
    substitute,
)
from .fragments import ClassificationReport, FragmentLabel, classify, is_well_guarded
from .machine import Configuration, RunTrace, TuringMachine, simulate, step, validate_tm
from .realmodel import (
    GridAbstraction,
    GridPoint,
    IntervalModel,
    Zone,
    abstraction_from_interval_model,
    abstraction_to_interval_model,
    build_appendix_model,
    canonical_integer_model,
    check_grid_axioms,
    check_halt_constraints,
    dump_model,
    extract_supporting_points,
    grid_index,
    intended_model_from_trace,
    load_model,
    shift_model,
    supporting_points,
    trace_to_abstraction,
)
from .reduction import ReductionOutput, compile_machine, n_bits, paxioms, state_codes
from .smtlib import emit_smtlib
from .syntax import ParseError, parse_formula, parse_tm, print_formula, print_tm
from .translate import TranslationOutput, pint_axioms, translate, translate_atom

__version__ = "0.1.0"
