"""binmachine: synthesize compact binary machines from ternary sequences.

A binary machine is a bank of clocked stages, each with its own feedback
function, that replays a target bit sequence p bits per cycle.  The
toolkit covers sequence handling, state assignment (tag-permutation and
minimal-stage), don't-care-aware logic minimization, simulation-based
verification, pattern-set analysis, and a reproducible benchmark CLI.
"""

__version__ = "0.1.0"

from .analyze import PatternProfile, SubsetPlan, profile, select_subset
from .assignment import (
    MachineState,
    StateAssignment,
    assign_states,
    assign_states_minimal,
    min_stages,
)
from .bench import BenchConfig, BenchReport, random_ternary, run_bench
from .boolfunc import AnfExpression, IncompleteFunction, dependence_set, to_anf
from .errors import (
    BudgetUnsatisfiable,
    DegenerateSequence,
    EmptySequence,
    IllegalCharacter,
    IncompleteInput,
    InconsistentSpec,
    InvalidParallelization,
    PermutationTooShort,
    SynthesisError,
    VerificationFailed,
    WidthMismatch,
)
from .machine import (
    BinaryMachine,
    Trace,
    build,
    export_machine,
    machine_from_anf,
    machine_from_json,
    machine_to_json,
    machine_to_text,
    shift_machine,
    simulate,
    state_string,
    verify_against,
)
from .minimize import minimize, naive_minterm_gate_count
from .netlist import Netlist, NetlistBuilder, care_equivalent, evaluate, gate_count
from .permutation import (
    PRIMITIVE_POLYS,
    PermutationSpec,
    default_permutation,
    expand_permutation,
    parse_perm_spec,
)
from .pipeline import SweepReport, SynthesisResult, sweep_parallelization, synthesize
from .sequence import (
    DigitStream,
    PatternSet,
    TernarySequence,
    encode,
    flatten,
    load_patterns,
    load_sequence,
    parallelization_bound,
    parse_sequence,
    specified_stats,
)

__all__ = [name for name in dir() if not name.startswith("_")]
