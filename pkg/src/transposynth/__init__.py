"""Synthesis, lowering and gate-count accounting for circuits that swap
two basis states and fix all others."""

from .ir import (
    Circuit,
    Gate,
    GateCounts,
    GateKind,
    QubitRole,
    append_gate,
    circuit,
    cnot,
    concat,
    count_gates,
    from_text,
    h,
    inverse,
    mcx,
    s,
    sdg,
    t,
    tdg,
    to_qasm2,
    to_text,
    toffoli,
    x,
)
from .mcx import (
    McxLayout,
    McxStrategy,
    borrowed_toffoli_count,
    clean_ladder_toffoli_count,
    lower_mcx,
    lower_mcx_auto,
    mcx_borrowed,
    mcx_clean_ladder,
    mcx_single_clean,
    single_clean_toffoli_count,
)
from .transposition import (
    SynthesisStrategy,
    TranspositionSpec,
    ancilla_requirement,
    cnot_bound,
    projector_controlled_x,
    synthesize_gray_code,
    synthesize_transposition,
    toffoli_bound,
)
from .lowering import (
    LoweringMode,
    ToffoliOrientation,
    lower_all_toffolis,
    lower_toffoli,
)
from .peephole import remove_redundancies
from .simulator import (
    BasisState,
    VerificationReport,
    run_reversible,
    run_statevector,
    sim_cap,
    verify_mcx,
    verify_transposition,
)
from .harness import (
    BoundMode,
    LowerBoundParams,
    StudyResult,
    StudyRow,
    TrialConfig,
    export_stats,
    lower_bound,
    parse_stats,
    run_count_study,
    sample_transpositions,
    to_markdown,
    transposition_family_size,
)

__version__ = "0.1.0"
