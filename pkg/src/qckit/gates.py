"""Standard gate matrices.

Multi-qubit gates follow the global big-endian convention: the first target
qubit is the most significant bit of the gate's sub-index, so for `cx` the
control is the first target and the flipped qubit the second.
"""

from __future__ import annotations

import numpy as np

from qckit.errors import DimensionError

SQRT2_INV = 1.0 / np.sqrt(2.0)

_FIXED = {
    "i": np.eye(2, dtype=np.complex128),
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "h": np.array([[1, 1], [1, -1]], dtype=np.complex128) * SQRT2_INV,
    "s": np.array([[1, 0], [0, 1j]], dtype=np.complex128),
    "t": np.array(
        [[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=np.complex128
    ),
    "cx": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        dtype=np.complex128,
    ),
    "swap": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
        dtype=np.complex128,
    ),
}

# arity None means variable (mcx: any number of controls plus one target)
GATE_ARITY: dict[str, int | None] = {
    "i": 1, "x": 1, "y": 1, "z": 1, "h": 1, "s": 1, "t": 1,
    "phase": 1, "cphase": 2, "cx": 2, "swap": 2, "ccx": 3, "mcx": None,
}

PARAMETRIC = {"phase", "cphase"}


def controlled(core: np.ndarray, n_controls: int) -> np.ndarray:
    """Embed a 2x2 core as a multi-controlled gate on n_controls+1 qubits.

    The core acts on the last qubit when all control qubits are 1; identity
    otherwise. With big-endian ordering this is identity except for the
    bottom-right 2x2 block.
    """
    dim = 2 ** (n_controls + 1)
    m = np.eye(dim, dtype=np.complex128)
    m[dim - 2:, dim - 2:] = core
    return m


def standard_gate_matrix(
    name: str, param: float | None = None, arity: int | None = None
) -> np.ndarray:
    """Matrix for a named gate; `arity` is required only for `mcx`."""
    if name not in GATE_ARITY:
        raise DimensionError(f"unknown gate {name!r}")
    if name in PARAMETRIC:
        if param is None:
            raise DimensionError(f"gate {name!r} requires an angle parameter")
    elif param is not None:
        raise DimensionError(f"gate {name!r} takes no parameter")

    if name in _FIXED:
        return _FIXED[name].copy()
    if name == "phase":
        return np.array(
            [[1, 0], [0, np.exp(1j * param)]], dtype=np.complex128
        )
    if name == "cphase":
        return np.diag(
            [1, 1, 1, np.exp(1j * param)]
        ).astype(np.complex128)
    if name == "ccx":
        return controlled(_FIXED["x"], 2)
    # mcx: variable arity
    if arity is None or arity < 1:
        raise DimensionError("mcx requires an explicit arity >= 1")
    return controlled(_FIXED["x"], arity - 1)
