"""Quantum Turing machines and the step-to-circuit compiler.

A machine's one-step evolution on a bounded cyclic tape window is a
finite matrix; unitarity of that matrix is the well-formedness criterion.
The compiler factors the (padded) step operator into two-level unitaries
and emits a circuit of X / multi-controlled gates that reproduces it.
"""

import numpy as np

from qckit import (
    check_well_formed,
    circuit_unitary,
    compile_qtm_step,
    parse_qtm,
    run_qtm,
    serialize_circuit,
    simulate,
    step_operator,
)
from qckit.compiler import encode_qtm_state, pad_to_power_of_two
from qckit.qtm import initial_qtm_state

COIN = """\
states q0 ; initial q0 ; final q0
alphabet 0 1
q0 0 -> q0 0 R 0.7071067811865476 0
q0 0 -> q0 1 R 0.7071067811865476 0
q0 1 -> q0 0 R 0.7071067811865476 0
q0 1 -> q0 1 R -0.7071067811865476 0
"""

BROKEN = """\
states q0 ; initial q0 ; final q0
alphabet 0 1
q0 0 -> q0 0 R 1 0
q0 0 -> q0 1 R 1 0
q0 1 -> q0 1 R 1 0
"""

coin = parse_qtm(COIN)
for t in (2, 3, 4):
    ok, _ = check_well_formed(coin, t)
    print(f"coin machine well-formed on window T={t}:", ok)

broken = parse_qtm(BROKEN)
ok, violations = check_well_formed(broken, 2)
print("doubled-branch machine well-formed:", ok)
print("  first violation:", violations[0])

# Run the coin machine: each step rewrites the scanned bit into an equal
# superposition and moves right, spreading amplitude over configurations.
st = run_qtm(coin, "0", 2, 2)
print("nonzero configurations after 2 steps:",
      int(np.sum(np.abs(st.amps) > 1e-12)), "norm:", round(st.norm(), 12))

# Compile the one-step operator into a circuit and verify equivalence.
circuit, report = compile_qtm_step(coin, 2)
print("compiled to", report.n_qubits, "qubits,",
      report.gate_counts, "deviation", report.max_deviation)

m = pad_to_power_of_two(step_operator(coin, 2))
print("operator max-norm gap:",
      np.max(np.abs(circuit_unitary(circuit) - m)))

# One-step state evolution agrees between the two machine models.
after = run_qtm(coin, "1", 1, 2)
evolved = simulate(circuit, encode_qtm_state(initial_qtm_state(coin, "1", 2)))
gap = np.max(np.abs(evolved.amps[: after.space.size] - after.amps))
print("one-step QTM vs circuit gap:", gap)

print("\ncompiled circuit (first lines):")
print("\n".join(serialize_circuit(circuit).splitlines()[:6]))
