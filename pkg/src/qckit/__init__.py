"""Gate-level quantum computation toolkit.

Dense state-vector simulation of quantum circuits, quantum Turing machines
on bounded tape windows, the black-box oracle query model, a QTM-step to
circuit compiler, and a small algorithm layer (QFT, Deutsch-Jozsa, toy Shor
factoring, bounded-error majority amplification).

Global convention: qubit 0 is the MOST significant bit of a basis-state
index (big-endian). All modules follow it.
"""

from qckit.errors import (
    CapacityError,
    DimensionError,
    ParseError,
    QckitError,
    StateError,
    UnresolvedOracleError,
    WellFormednessError,
)
from qckit.state import (
    MAX_QUBITS,
    MeasurementRecord,
    StateVector,
    apply_unitary,
    measure_all,
    measure_qubit,
    new_zero_state,
    schmidt_rank,
)
from qckit.gates import GATE_ARITY, standard_gate_matrix
from qckit.circuit import (
    Circuit,
    GateApp,
    circuit_unitary,
    parse_circuit,
    serialize_circuit,
    simulate,
)
from qckit.oracle import (
    Oracle,
    QueryCounter,
    classical_query,
    load_oracle,
    min_deterministic_queries_dj,
    oracle_gate,
    parse_oracle,
)
from qckit.qtm import (
    ConfigSpace,
    QTMDef,
    QTMState,
    check_well_formed,
    oracle_step,
    parse_qtm,
    run_qtm,
    step_operator,
)
from qckit.compiler import (
    CompilationReport,
    TwoLevelFactor,
    compile_qtm_step,
    decompose_two_level,
    two_level_to_gates,
)
from qckit.algorithms import (
    BoundedErrorVerdict,
    DJVerdict,
    FactorResult,
    decide_bounded_error,
    deutsch_jozsa,
    inverse_qft_circuit,
    order_finding,
    qft_circuit,
    shor_factor,
)

__version__ = "0.1.0"
