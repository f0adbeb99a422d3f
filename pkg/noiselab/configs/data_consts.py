"""
Author: noiselab contributors
Date: 2026-09-02 10:31:19
LastEditTime: 2026-10-08 21:14:03
LastEditors: noiselab contributors
Description: Some constants for operators, circuits and experiments
FilePath: /noiselab/noiselab/configs/data_consts.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import numpy as np

# letter code = x_bit | (z_bit << 1); dense Pauli index order follows these codes
PAULI_LETTERS = ["I", "X", "Z", "Y"]
LETTER_CODES = {"I": 0, "X": 1, "Z": 2, "Y": 3}
LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}

SINGLE_PAULIS = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[1, 0], [0, -1]],
        [[0, -1j], [1j, 0]],
    ],
    dtype=complex,
)

# +1 if the two letters commute, -1 otherwise (code order)
LETTER_COMMUTATION = np.array(
    [
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
    ],
    dtype=float,
)

GATE_ARITY = {
    "H": 1,
    "S": 1,
    "T": 1,
    "X": 1,
    "Y": 1,
    "Z": 1,
    "RX": 1,
    "RY": 1,
    "RZ": 1,
    "CNOT": 2,
    "CZ": 2,
    "SWAP": 2,
}
PARAMETRIC_GATES = ["RX", "RY", "RZ"]
CLIFFORD_GATES = ["H", "S", "X", "Y", "Z", "CNOT", "CZ", "SWAP"]
DIAGONAL_GATES = ["S", "T", "Z", "RZ", "CZ"]

KERNEL_KINDS = ["uniform", "exp_decay", "window"]
NOISE_KINDS = [
    "depolarizing",
    "correlated_depolarizing",
    "dephasing",
    "bit_flip",
    "amplitude_damping",
    "identity",
]
NOISE_ORDERS = ["gates-first", "noise-first"]
ERROR_RATE_STRATEGIES = ["basis-states", "random-pure", "refine"]
COR2Q_FAMILIES = ["mixture", "product", "synchronized", "sparse"]

PRESET_NAMES = [
    "bell-detrimental",
    "ghz-sync",
    "haar-weight",
    "rate-compare",
    "rate-scaling",
    "cor2q-search",
    "maxent-ent",
    "emergent-ghz",
    "dnoise-check",
    "smoothing-compare",
]

RESULT_SCHEMA_VERSION = 1
