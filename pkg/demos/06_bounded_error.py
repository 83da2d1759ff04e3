"""Bounded-error decision with majority amplification.

A circuit that accepts with probability 2/3 is decided by majority vote
over independent seeded runs; the error of the vote shrinks with the run
count, matching the exact binomial tail.
"""

import numpy as np

from qckit import decide_bounded_error
from qckit.algorithms import majority_error_probability
from qckit.circuit import Circuit, GateApp, UNITARY

# One-qubit circuit preparing sqrt(1/3)|0> + sqrt(2/3)|1>.
p = 2 / 3
u = np.array(
    [[np.sqrt(1 - p), -np.sqrt(p)], [np.sqrt(p), np.sqrt(1 - p)]],
    dtype=complex,
)
circuit = Circuit(1, [GateApp(UNITARY, (0,), matrix=u)])

# Analytic majority error, strictly decreasing in the run count.
print("runs  exact majority error")
for runs in (1, 5, 15, 25, 35, 45):
    print(f"{runs:4d}  {majority_error_probability(p, runs):.6f}")

# Empirical check: 2000 majority votes at 45 runs each.
wrong = sum(
    1
    for seed in range(2000)
    if not decide_bounded_error(circuit, 0, runs=45, rng_seed=seed).accept
)
print(f"\nempirical error over 2000 trials: {wrong / 2000:.4f} "
      f"(exact {majority_error_probability(p, 45):.4f})")
