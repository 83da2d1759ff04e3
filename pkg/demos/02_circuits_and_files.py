"""The circuit IR and its text file format.

Circuits are plain text: a `qubits N` header and one gate per line.
Parsing and serialization round-trip exactly, and small circuits can be
expanded to their full unitary matrix for checking algebraic identities.
"""

import numpy as np

from qckit import circuit_unitary, parse_circuit, serialize_circuit, simulate

BELL = """\
# prepare a Bell pair
qubits 2
h 0
cx 0 1
"""

circuit = parse_circuit(BELL)
print("parsed", len(circuit.ops), "gates on", circuit.n_qubits, "qubits")

final = simulate(circuit)
print("final state:", np.round(final.amps, 4))

# The canonical serialization drops comments but round-trips the IR.
text = serialize_circuit(circuit)
print("canonical form:")
print(text)
assert parse_circuit(text) == circuit

# H twice is the identity; check on the full circuit matrix.
hh = parse_circuit("qubits 1\nh 0\nh 0\n")
print("max |HH - I| =", np.max(np.abs(circuit_unitary(hh) - np.eye(2))))

# Parametric gates carry their angle inline.
phased = parse_circuit("qubits 2\ncphase ( 3.141592653589793 ) 0 1\n")
print("cphase(pi) as matrix diagonal:",
      np.round(np.diag(circuit_unitary(phased)), 4))

# Errors are positioned: line number plus reason.
try:
    parse_circuit("qubits 1\nfoo 0\n")
except Exception as e:
    print("parse error:", e)
