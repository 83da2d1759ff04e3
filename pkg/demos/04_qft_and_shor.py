"""The quantum Fourier transform and toy-scale factoring.

The QFT circuit realizes F[j,k] = exp(2*pi*i*j*k/2^n)/sqrt(2^n) out of
Hadamards and controlled phases. Phase estimation over the modular
multiplication map turns it into order finding, and order finding plus
classical post-processing factors small odd composites.
"""

import numpy as np

from qckit import (
    circuit_unitary,
    order_finding,
    qft_circuit,
    shor_factor,
    simulate,
)
from qckit.state import basis_state

# The 2-qubit QFT of basis state |01> is (1/2)(1, i, -1, -i).
out = simulate(qft_circuit(2), basis_state(2, 1))
print("QFT_2 |01>:", np.round(out.amps, 4))

# The circuit matrix matches the closed form for any small n.
n = 4
f = circuit_unitary(qft_circuit(n))
j, k = np.meshgrid(np.arange(2 ** n), np.arange(2 ** n), indexing="ij")
closed = np.exp(2j * np.pi * j * k / 2 ** n) / np.sqrt(2 ** n)
print(f"QFT_{n} max deviation from closed form:", np.max(np.abs(f - closed)))

# Order finding: the multiplicative order of 7 mod 15 is 4 (7, 4, 13, 1).
# Phase estimation sometimes fails on a bad measurement draw; that is an
# expected outcome, so we look at the hit rate over seeds.
hits = [order_finding(7, 15, precision_qubits=8, rng_seed=s)
        for s in range(20)]
print("order(7 mod 15) over 20 seeds:", hits)

# Factoring 15 and 21 end to end.
for n in (15, 21):
    result = shor_factor(n, rng_seed=1)
    print(f"{n} = {result.factor} x {n // result.factor} "
          f"(order {result.order_r}, {result.attempts} attempt(s))")
