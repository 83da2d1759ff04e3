"""Circuit intermediate representation, text format, and simulation driver.

Text format (UTF-8, line oriented):

    qubits N
    <gatename> [( angle )] <target...>
    oracle <name> <x-targets...> <ancilla-target>
    unitary <n_controls> <target...> : <re im ...>

Gate names: i x y z h s t phase cphase cx swap ccx mcx. Comments start
with '#', blank lines are ignored. The `unitary` line carries a raw core
matrix (row-major re/im pairs) on the non-control targets; it exists so
compiled circuits, which use multi-controlled single-qubit primitives,
serialize losslessly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from qckit.errors import (
    CapacityError,
    DimensionError,
    ParseError,
    UnresolvedOracleError,
)
from qckit.gates import GATE_ARITY, PARAMETRIC, controlled, standard_gate_matrix
from qckit.oracle import Oracle, QueryCounter, apply_oracle
from qckit.state import StateVector, apply_unitary, basis_state, new_zero_state

MAX_UNITARY_QUBITS = 10  # circuit_unitary cap (1M-entry matrices)

NAMED, ORACLE, UNITARY = "named", "oracle", "unitary"


@dataclass
class GateApp:
    """One gate application: a named gate, an oracle reference, or a raw
    unitary. For the raw kind the first `n_controls` targets act as
    controls of the core matrix on the remaining targets."""

    kind: str
    targets: tuple[int, ...]
    name: str = ""
    param: float | None = None
    matrix: np.ndarray | None = None
    n_controls: int = 0

    def __post_init__(self):
        self.targets = tuple(int(t) for t in self.targets)
        if self.kind not in (NAMED, ORACLE, UNITARY):
            raise DimensionError(f"unknown gate kind {self.kind!r}")
        if self.param is not None:
            self.param = float(self.param)
            if not np.isfinite(self.param):
                raise DimensionError("gate angle must be finite")
        if self.kind == NAMED:
            arity = GATE_ARITY.get(self.name)
            if self.name not in GATE_ARITY:
                raise DimensionError(f"unknown gate {self.name!r}")
            if arity is not None and len(self.targets) != arity:
                raise DimensionError(
                    f"gate {self.name!r} expects {arity} targets, "
                    f"got {len(self.targets)}"
                )
            if self.name == "mcx" and len(self.targets) < 2:
                raise DimensionError("mcx requires at least 2 targets")
            if (self.name in PARAMETRIC) != (self.param is not None):
                raise DimensionError(
                    f"gate {self.name!r}: parameter mismatch"
                )
        elif self.kind == ORACLE:
            if len(self.targets) < 2:
                raise DimensionError(
                    "oracle gate needs at least one input and an ancilla"
                )
        else:
            self.matrix = np.asarray(self.matrix, dtype=np.complex128)
            core_qubits = len(self.targets) - self.n_controls
            if core_qubits < 1:
                raise DimensionError("raw unitary needs a non-control target")
            dim = 2 ** core_qubits
            if self.matrix.shape != (dim, dim):
                raise DimensionError(
                    f"raw matrix shape {self.matrix.shape} does not match "
                    f"{core_qubits} non-control targets"
                )

    def __eq__(self, other):
        if not isinstance(other, GateApp):
            return NotImplemented
        if (self.kind, self.targets, self.name, self.param,
                self.n_controls) != (other.kind, other.targets, other.name,
                                     other.param, other.n_controls):
            return False
        if (self.matrix is None) != (other.matrix is None):
            return False
        return self.matrix is None or np.array_equal(self.matrix, other.matrix)

    def effective_matrix(self, oracle_table=None) -> np.ndarray:
        """Full matrix on this gate's targets (controls expanded)."""
        if self.kind == NAMED:
            return standard_gate_matrix(
                self.name, self.param, arity=len(self.targets)
            )
        if self.kind == UNITARY:
            if self.n_controls:
                return controlled_embed(self.matrix, self.n_controls)
            return self.matrix
        oracle = (oracle_table or {}).get(self.name)
        if oracle is None:
            raise UnresolvedOracleError(
                f"oracle {self.name!r} has no binding"
            )
        from qckit.oracle import oracle_gate

        return oracle_gate(oracle)


def controlled_embed(core: np.ndarray, n_controls: int) -> np.ndarray:
    """Embed a core matrix controlled on n_controls leading qubits."""
    dim_core = core.shape[0]
    dim = dim_core * 2 ** n_controls
    m = np.eye(dim, dtype=np.complex128)
    m[dim - dim_core:, dim - dim_core:] = core
    return m


@dataclass
class Circuit:
    """Ordered gate list over a fixed qubit count; immutable after build."""

    n_qubits: int
    ops: list[GateApp] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        for op in self.ops:
            for t in op.targets:
                if not 0 <= t < self.n_qubits:
                    raise DimensionError(
                        f"target {t} out of range for {self.n_qubits} qubits"
                    )
            if len(set(op.targets)) != len(op.targets):
                raise DimensionError(f"duplicate targets {op.targets}")

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self.ops == other.ops


def simulate(
    circuit: Circuit,
    initial: StateVector | None = None,
    oracle_table: dict[str, Oracle] | None = None,
    rng_seed: int = 0,
    counter: QueryCounter | None = None,
) -> StateVector:
    """Apply every gate of the circuit in order.

    Oracle gates are resolved through `oracle_table` and applied via the
    strided kernel, incrementing `counter.quantum_queries` once each.
    The seed is threaded for interface uniformity; a unitary-only circuit
    is deterministic.
    """
    if initial is None:
        initial = new_zero_state(circuit.n_qubits)
    if initial.n_qubits != circuit.n_qubits:
        raise DimensionError(
            f"initial state has {initial.n_qubits} qubits, "
            f"circuit needs {circuit.n_qubits}"
        )
    state = initial
    for op in circuit.ops:
        if op.kind == ORACLE:
            oracle = (oracle_table or {}).get(op.name)
            if oracle is None:
                raise UnresolvedOracleError(
                    f"oracle {op.name!r} has no binding"
                )
            state = apply_oracle(
                state, oracle, list(op.targets[:-1]), op.targets[-1],
                counter=counter,
            )
        else:
            state = apply_unitary(
                state, op.effective_matrix(), list(op.targets)
            )
    return state


def circuit_unitary(
    circuit: Circuit, oracle_table: dict[str, Oracle] | None = None
) -> np.ndarray:
    """Full 2^n x 2^n matrix of the circuit, column by basis column."""
    if circuit.n_qubits > MAX_UNITARY_QUBITS:
        raise CapacityError(
            f"circuit_unitary capped at {MAX_UNITARY_QUBITS} qubits"
        )
    dim = 2 ** circuit.n_qubits
    m = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(dim):
        col = simulate(
            circuit, basis_state(circuit.n_qubits, j), oracle_table
        )
        m[:, j] = col.amps
    return m


def _parse_float(tok: str, lineno: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(lineno, f"bad number {tok!r}") from None
    if not np.isfinite(v):
        raise ParseError(lineno, f"number {tok!r} must be finite")
    return v


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"bad integer {tok!r}") from None


def _parse_targets(toks: list[str], n_qubits: int, lineno: int) -> tuple:
    if not toks:
        raise ParseError(lineno, "gate line has no targets")
    targets = tuple(_parse_int(t, lineno) for t in toks)
    for t in targets:
        if not 0 <= t < n_qubits:
            raise ParseError(
                lineno, f"target {t} out of range for {n_qubits} qubits"
            )
    if len(set(targets)) != len(targets):
        raise ParseError(lineno, f"duplicate targets {list(targets)}")
    return targets


def parse_circuit(text: str) -> Circuit:
    """Parse circuit text; raises ParseError with a line number on any
    malformed input (never crashes on arbitrary bytes)."""
    n_qubits = None
    ops: list[GateApp] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if n_qubits is None:
            if toks[0] != "qubits" or len(toks) != 2:
                raise ParseError(lineno, "expected 'qubits N' header")
            n_qubits = _parse_int(toks[1], lineno)
            if n_qubits < 1:
                raise ParseError(lineno, "qubit count must be >= 1")
            continue

        head = toks[0]
        if head == "oracle":
            if len(toks) < 4:
                raise ParseError(
                    lineno, "oracle line needs a name, inputs and an ancilla"
                )
            targets = _parse_targets(toks[2:], n_qubits, lineno)
            ops.append(GateApp(ORACLE, targets, name=toks[1]))
            continue
        if head == "unitary":
            if ":" not in toks:
                raise ParseError(lineno, "unitary line needs ':' separator")
            sep = toks.index(":")
            if sep < 3:
                raise ParseError(
                    lineno, "unitary line needs controls count and targets"
                )
            n_controls = _parse_int(toks[1], lineno)
            targets = _parse_targets(toks[2:sep], n_qubits, lineno)
            if not 0 <= n_controls < len(targets):
                raise ParseError(lineno, f"bad control count {n_controls}")
            vals = [_parse_float(t, lineno) for t in toks[sep + 1:]]
            dim = 2 ** (len(targets) - n_controls)
            if len(vals) != 2 * dim * dim:
                raise ParseError(
                    lineno,
                    f"expected {2 * dim * dim} matrix entries, got {len(vals)}",
                )
            re = np.array(vals[0::2]).reshape(dim, dim)
            im = np.array(vals[1::2]).reshape(dim, dim)
            ops.append(
                GateApp(
                    UNITARY, targets, matrix=re + 1j * im,
                    n_controls=n_controls,
                )
            )
            continue
        if head not in GATE_ARITY:
            raise ParseError(lineno, f"unknown gate {head!r}")
        param = None
        rest = toks[1:]
        if rest and rest[0] == "(":
            if len(rest) < 3 or rest[2] != ")":
                raise ParseError(lineno, "malformed angle '( x )'")
            param = _parse_float(rest[1], lineno)
            rest = rest[3:]
        if (head in PARAMETRIC) != (param is not None):
            raise ParseError(
                lineno,
                f"gate {head!r} {'requires' if head in PARAMETRIC else 'takes no'} angle",
            )
        targets = _parse_targets(rest, n_qubits, lineno)
        arity = GATE_ARITY[head]
        if arity is not None and len(targets) != arity:
            raise ParseError(
                lineno,
                f"gate {head!r} expects {arity} targets, got {len(targets)}",
            )
        if head == "mcx" and len(targets) < 2:
            raise ParseError(lineno, "mcx requires at least 2 targets")
        ops.append(GateApp(NAMED, targets, name=head, param=param))

    if n_qubits is None:
        raise ParseError(1, "missing 'qubits N' header")
    return Circuit(n_qubits, ops)


def serialize_circuit(circuit: Circuit) -> str:
    """Canonical one-gate-per-line text; parse(serialize(c)) == c."""
    lines = [f"qubits {circuit.n_qubits}"]
    for op in circuit.ops:
        targets = " ".join(str(t) for t in op.targets)
        if op.kind == ORACLE:
            lines.append(f"oracle {op.name} {targets}")
        elif op.kind == UNITARY:
            entries = " ".join(
                f"{float(v.real)!r} {float(v.imag)!r}"
                for v in op.matrix.flatten()
            )
            lines.append(f"unitary {op.n_controls} {targets} : {entries}")
        elif op.param is not None:
            lines.append(f"{op.name} ( {op.param!r} ) {targets}")
        else:
            lines.append(f"{op.name} {targets}")
    return "\n".join(lines) + "\n"
