"""States, gates, measurement, and entanglement diagnostics.

Walks through the simulation substrate: building basis states, applying
gate matrices to chosen qubits, sampling measurements, and using the
Schmidt rank to tell product states from entangled ones.
"""

import numpy as np

from qckit import (
    apply_unitary,
    measure_all,
    measure_qubit,
    new_zero_state,
    schmidt_rank,
    standard_gate_matrix,
)

# Qubit 0 is the most significant bit of the basis index, so for 2 qubits
# the amplitude order is |00>, |01>, |10>, |11>.
state = new_zero_state(2)
print("|00> amplitudes:", state.amps)

# A Hadamard on qubit 0 splits the amplitude between |00> and |10>.
h = standard_gate_matrix("h")
state = apply_unitary(state, h, [0])
print("after H on qubit 0:", np.round(state.amps, 4))

# CNOT with qubit 0 controlling qubit 1 produces the Bell pair.
cx = standard_gate_matrix("cx")
bell = apply_unitary(state, cx, [0, 1])
print("Bell pair:", np.round(bell.amps, 4))

# Schmidt rank across the cut {qubit 0} | {qubit 1}: rank 1 means product,
# rank 2 means maximally entangled for two qubits.
print("Schmidt rank of |00>:", schmidt_rank(new_zero_state(2), [0]))
print("Schmidt rank of Bell:", schmidt_rank(bell, [0]))

# Measurement sampling is reproducible given a seed.
for seed in (1, 2, 3):
    rec = measure_all(bell, rng_seed=seed)
    print(f"seed {seed}: outcome {rec.outcome} (p={rec.probability:.2f})")

# Measuring one qubit of the Bell pair collapses the other to match.
bit, post = measure_qubit(bell, 0, rng_seed=11)
print(f"measured qubit 0 -> {bit}; post-state:", np.round(post.amps, 4))

# Born statistics: frequencies of 10000 seeded draws track |amp|^2.
counts = {}
for seed in range(10000):
    outcome = measure_all(bell, seed).outcome
    counts[outcome] = counts.get(outcome, 0) + 1
print("10000 draws:", dict(sorted(counts.items())))
