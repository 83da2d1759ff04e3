"""The black-box query model and the Deutsch-Jozsa separation.

An oracle is a Boolean indicator I(x) held as a truth table. Quantum
access goes through the XOR gate |x,b> -> |x, b XOR I(x)>; classical
access is a table lookup. Deutsch-Jozsa decides constant-vs-balanced with
a single quantum query, while the best deterministic classical strategy
needs 2^(n-1)+1 queries.
"""

import itertools

import numpy as np

from qckit import (
    Oracle,
    QueryCounter,
    classical_query,
    deutsch_jozsa,
    min_deterministic_queries_dj,
    oracle_gate,
)

# The identity indicator on one bit makes the oracle gate a CNOT.
ident = Oracle(1, (0, 1), name="id")
print("oracle gate for I(x)=x:")
print(oracle_gate(ident).real.astype(int))

# The gate is always self-inverse: applying it twice is the identity.
u = oracle_gate(Oracle(2, (0, 1, 1, 0)))
print("involution deviation:", np.max(np.abs(u @ u - np.eye(8))))

# Classical queries are counted separately from quantum ones.
counter = QueryCounter()
for x in ("00", "01", "10", "11"):
    classical_query(Oracle(2, (0, 1, 1, 0)), x, counter)
print("classical queries used:", counter.classical_queries)

# Deutsch-Jozsa over all 70 balanced 3-bit oracles plus the 2 constants:
# always the right verdict, always exactly one quantum query.
verdicts = {"constant": 0, "balanced": 0}
for ones in itertools.combinations(range(8), 4):
    table = [0] * 8
    for i in ones:
        table[i] = 1
    v = deutsch_jozsa(Oracle(3, tuple(table), name="f"))
    assert v.quantum_queries == 1
    verdicts[v.verdict] += 1
for table in ((0,) * 8, (1,) * 8):
    v = deutsch_jozsa(Oracle(3, table, name="f"))
    verdicts[v.verdict] += 1
print("verdicts over the n=3 promise set:", verdicts)

# Contrast with the classical baseline found by exhaustive search over
# adaptive deterministic decision trees.
for n in (1, 2, 3):
    print(f"n={n}: quantum 1 query vs classical "
          f"{min_deterministic_queries_dj(n)} queries")
