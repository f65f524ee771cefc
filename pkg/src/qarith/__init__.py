"""Sparse integer-register simulator with arithmetic gates and dynamics.

The computational basis is labeled by integers, states are finite
superpositions, and the two arithmetic gates (adder and multiplier) act
by rewriting labels.  On top of that sit a time-resolved model of the
adder, a boolean layer, and an indexed algebra of composed operations.
"""

from .config import Config, DEFAULT_TOLERANCES
from .dynamics import (
    GATE_TIME,
    EvolutionTrace,
    HamiltonianModel,
    SuperadditivityRow,
    WindowError,
    build_model,
    detect_stopping_time,
    evolve_exact,
    evolve_numeric,
    subsystem_evolve,
    superadditivity_table,
)
from .gates import (
    AncillaError,
    GateDomainError,
    GateKind,
    GateProgram,
    GateStep,
    ProgramStepError,
    apply_gate,
    apply_minus,
    apply_plus,
    apply_times,
    iterate_plus,
    run_program,
)
from .logic import and_, compiled_op, eval_with_gates, not_, or_, truth_table
from .states import Ket, ZeroNormError, basis_ket, superposition
from .terms import (
    FREE,
    ArityError,
    BijectionReport,
    BinOp,
    CompiledTerm,
    EvalReport,
    FreeVar,
    Node,
    TermSyntaxError,
    arity,
    bijection_report,
    class_of,
    class_size,
    compile_term,
    cumulative_size,
    decompose_index,
    enumerate_class,
    evaluate_gates,
    evaluate_oracle,
    index_of,
    parse_term,
    render_infix,
    render_term,
    term_of,
)

__all__ = [
    "Config",
    "DEFAULT_TOLERANCES",
    "GATE_TIME",
    "EvolutionTrace",
    "HamiltonianModel",
    "SuperadditivityRow",
    "WindowError",
    "build_model",
    "detect_stopping_time",
    "evolve_exact",
    "evolve_numeric",
    "subsystem_evolve",
    "superadditivity_table",
    "AncillaError",
    "GateDomainError",
    "GateKind",
    "GateProgram",
    "GateStep",
    "ProgramStepError",
    "apply_gate",
    "apply_minus",
    "apply_plus",
    "apply_times",
    "iterate_plus",
    "run_program",
    "and_",
    "compiled_op",
    "eval_with_gates",
    "not_",
    "or_",
    "truth_table",
    "Ket",
    "ZeroNormError",
    "basis_ket",
    "superposition",
    "FREE",
    "ArityError",
    "BijectionReport",
    "BinOp",
    "CompiledTerm",
    "EvalReport",
    "FreeVar",
    "Node",
    "TermSyntaxError",
    "arity",
    "bijection_report",
    "class_of",
    "class_size",
    "compile_term",
    "cumulative_size",
    "decompose_index",
    "enumerate_class",
    "evaluate_gates",
    "evaluate_oracle",
    "index_of",
    "parse_term",
    "render_infix",
    "render_term",
    "term_of",
]
