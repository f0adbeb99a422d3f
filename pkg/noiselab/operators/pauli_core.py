"""
Author: noiselab contributors
Date: 2026-09-03 14:02:27
LastEditTime: 2026-10-10 11:26:48
LastEditors: noiselab contributors
Description: Pauli strings: weights, dense matrices, products and Clifford conjugation
FilePath: /noiselab/noiselab/operators/pauli_core.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from noiselab.configs import config as conf
from noiselab.configs.data_consts import (
    CLIFFORD_GATES,
    LETTER_BITS,
    LETTER_COMMUTATION,
    PAULI_LETTERS,
    SINGLE_PAULIS,
)
from noiselab.exceptions import CapExceeded, LengthMismatch, NotClifford

# _TO_PAULI[a, 2i+j] = sigma_a[j, i] so that contracting gives Tr(sigma_a A)
_TO_PAULI = SINGLE_PAULIS.transpose(0, 2, 1).reshape(4, 4)
# _FROM_PAULI[2i+j, a] = sigma_a[i, j]
_FROM_PAULI = SINGLE_PAULIS.reshape(4, 4).T.copy()
_PHASES = (1, 1j, -1, -1j)


@dataclass(frozen=True)
class PauliString:
    """A length-n word over {I, X, Y, Z} stored as two packed bit words.

    Qubit 0 is the leftmost tensor factor and sits on the most significant bit
    of ``x`` and ``z``.
    """

    n: int
    x: int
    z: int

    def __post_init__(self):
        if not 1 <= self.n <= conf.CAPS.max_qubits:
            raise CapExceeded("n", self.n, conf.CAPS.max_qubits)
        full = 1 << self.n
        if not (0 <= self.x < full and 0 <= self.z < full):
            raise ValueError(f"bit words do not fit in {self.n} qubits")

    @classmethod
    def identity(cls, n):
        return cls(n, 0, 0)

    @classmethod
    def from_label(cls, label):
        label = label.strip().upper()
        if not label:
            raise ValueError("empty Pauli label")
        x = z = 0
        for letter in label:
            if letter not in LETTER_BITS:
                raise ValueError(f"invalid Pauli letter {letter!r} in {label!r}")
            xb, zb = LETTER_BITS[letter]
            x = (x << 1) | xb
            z = (z << 1) | zb
        return cls(len(label), x, z)

    @classmethod
    def from_index(cls, index, n):
        """Inverse of :meth:`index`."""
        x = z = 0
        for k in range(n):
            code = (int(index) >> (2 * (n - 1 - k))) & 3
            x = (x << 1) | (code & 1)
            z = (z << 1) | (code >> 1)
        return cls(n, x, z)

    @classmethod
    def single(cls, n, qubit, letter):
        xb, zb = LETTER_BITS[letter]
        pos = n - 1 - qubit
        return cls(n, xb << pos, zb << pos)

    def code(self, k):
        pos = self.n - 1 - k
        return ((self.x >> pos) & 1) | (((self.z >> pos) & 1) << 1)

    def letter(self, k):
        return PAULI_LETTERS[self.code(k)]

    @property
    def label(self):
        return "".join(self.letter(k) for k in range(self.n))

    def index(self):
        """Position of the string in the dense 4^n ordering."""
        idx = 0
        for k in range(self.n):
            idx = (idx << 2) | self.code(k)
        return idx

    def support(self):
        return tuple(k for k in range(self.n) if self.code(k))

    def __lt__(self, other):
        if not isinstance(other, PauliString):
            return NotImplemented
        return (self.n, self.index()) < (other.n, other.index())

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class SignedPauli:
    """Pauli string times i**power."""

    pauli: PauliString
    power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "power", self.power % 4)

    @property
    def phase(self):
        return _PHASES[self.power]

    @property
    def n(self):
        return self.pauli.n

    def __str__(self):
        return ("+", "+i", "-", "-i")[self.power] + self.pauli.label


def weight(p):
    return bin(p.x | p.z).count("1")


def coarse(p):
    """0/1 fault word of ``p`` as a string, '1' where the letter is not I."""
    mask = p.x | p.z
    return format(mask, f"0{p.n}b")


def commutes(a, b):
    if a.n != b.n:
        raise LengthMismatch(f"Pauli strings of length {a.n} and {b.n}")
    return (bin(a.x & b.z).count("1") + bin(a.z & b.x).count("1")) % 2 == 0


def pauli_matrix(p):
    """Dense 2^n x 2^n matrix of the Pauli string (Kronecker product in qubit order)."""
    if p.n > conf.CAPS.dense_qubits:
        raise CapExceeded("n", p.n, conf.CAPS.dense_qubits)
    return reduce(np.kron, [SINGLE_PAULIS[p.code(k)] for k in range(p.n)])


def _g(x1, z1, x2, z2):
    # exponent of i picked up by one letter of the product
    if x1 == 0 and z1 == 0:
        return 0
    if x1 == 1 and z1 == 1:
        return z2 - x2
    if x1 == 1:
        return z2 * (2 * x2 - 1)
    return x2 * (1 - 2 * z2)


def multiply(a, b):
    """Product a*b with its exact phase."""
    if a.n != b.n:
        raise LengthMismatch(f"Pauli strings of length {a.n} and {b.n}")
    power = 0
    for k in range(a.n):
        pos = a.n - 1 - k
        power += _g(
            (a.x >> pos) & 1, (a.z >> pos) & 1, (b.x >> pos) & 1, (b.z >> pos) & 1
        )
    return SignedPauli(PauliString(a.n, a.x ^ b.x, a.z ^ b.z), power)


def _iter_gates(circuit):
    if hasattr(circuit, "cycles"):
        for cycle in circuit.cycles:
            yield from cycle
    elif hasattr(circuit, "kind"):
        yield circuit
    else:
        yield from circuit


class _Frame:
    """Mutable (x, z, sign) triple updated gate by gate."""

    def __init__(self, p):
        self.n = p.n
        self.x = p.x
        self.z = p.z
        self.r = 0

    def bits(self, q):
        pos = self.n - 1 - q
        return (self.x >> pos) & 1, (self.z >> pos) & 1

    def set_bits(self, q, xb, zb):
        pos = self.n - 1 - q
        self.x = (self.x & ~(1 << pos)) | (xb << pos)
        self.z = (self.z & ~(1 << pos)) | (zb << pos)

    def h(self, a):
        xa, za = self.bits(a)
        self.r ^= xa & za
        self.set_bits(a, za, xa)

    def s(self, a):
        xa, za = self.bits(a)
        self.r ^= xa & za
        self.set_bits(a, xa, za ^ xa)

    def cnot(self, c, t):
        xc, zc = self.bits(c)
        xt, zt = self.bits(t)
        self.r ^= xc & zt & (xt ^ zc ^ 1)
        self.set_bits(t, xt ^ xc, zt)
        self.set_bits(c, xc, zc ^ zt)

    def apply(self, gate):
        kind, qubits = gate.kind, tuple(gate.qubits)
        if kind not in CLIFFORD_GATES:
            raise NotClifford(f"gate {kind} on {qubits} is not Clifford")
        if kind == "H":
            self.h(qubits[0])
        elif kind == "S":
            self.s(qubits[0])
        elif kind in ("X", "Y", "Z"):
            xa, za = self.bits(qubits[0])
            self.r ^= {"X": za, "Y": xa ^ za, "Z": xa}[kind]
        elif kind == "CNOT":
            self.cnot(*qubits)
        elif kind == "CZ":
            a, b = qubits
            self.h(b)
            self.cnot(a, b)
            self.h(b)
        elif kind == "SWAP":
            a, b = qubits
            bits_a, bits_b = self.bits(a), self.bits(b)
            self.set_bits(a, *bits_b)
            self.set_bits(b, *bits_a)


def clifford_conjugate(p, circuit):
    """U p U^dagger for the Clifford unitary U of ``circuit``.

    ``circuit`` may be a Circuit, a single gate or an iterable of gates; gates
    are applied in circuit order.

    Raises
    ------
    NotClifford
        on T or rotation gates
    """
    frame = _Frame(p)
    for gate in _iter_gates(circuit):
        frame.apply(gate)
    return SignedPauli(PauliString(p.n, frame.x, frame.z), 2 * frame.r)


def is_clifford(circuit):
    return all(g.kind in CLIFFORD_GATES for g in _iter_gates(circuit))


# ---------------------------------------------------------------------------
# dense Pauli-basis transforms
# ---------------------------------------------------------------------------


def _apply_per_qubit(tensor, mat, n, offset=0):
    """Contract a 4x4 matrix with each of the n four-valued axes."""
    for k in range(n):
        tensor = np.tensordot(mat, tensor, axes=([1], [offset + k]))
        tensor = np.moveaxis(tensor, 0, offset + k)
    return tensor


def num_qubits(dim):
    n = int(dim).bit_length() - 1
    if 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def pauli_coefficients(matrix):
    """Tr(P_I A) for every Pauli string I, in dense index order.

    Accepts a single d x d matrix or a stack of shape (m, d, d).
    """
    arr = np.asarray(matrix, dtype=complex)
    batched = arr.ndim == 3
    if not batched:
        arr = arr[None]
    m, d = arr.shape[0], arr.shape[1]
    n = num_qubits(d)
    t = arr.reshape([m] + [2] * (2 * n))
    perm = [0] + [1 + ax for k in range(n) for ax in (k, n + k)]
    t = t.transpose(perm).reshape([m] + [4] * n)
    t = _apply_per_qubit(t, _TO_PAULI, n, offset=1).reshape(m, -1)
    return t if batched else t[0]


def from_pauli_coefficients(coeffs, n):
    """Inverse of :func:`pauli_coefficients` for a single operator."""
    d = 1 << n
    t = np.asarray(coeffs, dtype=complex).reshape([4] * n)
    t = _apply_per_qubit(t, _FROM_PAULI, n)
    t = t.reshape([2] * (2 * n))
    inverse = [2 * k for k in range(n)] + [2 * k + 1 for k in range(n)]
    return t.transpose(inverse).reshape(d, d) / d


def pauli_fidelities(masses, n):
    """Eigenvalues of the Pauli channel with the given dense masses.

    lambda_J = sum_I m_I * (+1 if P_I commutes with P_J else -1)
    """
    t = np.asarray(masses, dtype=float).reshape([4] * n)
    return _apply_per_qubit(t, LETTER_COMMUTATION, n).reshape(-1)


def masses_from_fidelities(fidelities, n):
    t = np.asarray(fidelities, dtype=float).reshape([4] * n)
    return _apply_per_qubit(t, LETTER_COMMUTATION / 4.0, n).reshape(-1)


@lru_cache(maxsize=32)
def _dense_weights(n):
    w = np.zeros(1, dtype=np.int64)
    step = np.array([0, 1, 1, 1], dtype=np.int64)
    for _ in range(n):
        w = (w[:, None] + step[None, :]).reshape(-1)
    w.setflags(write=False)
    return w


def dense_weights(n):
    """Weight of every Pauli string in dense index order."""
    return _dense_weights(n)


def index_codes(indices, n):
    """Letter codes (m x n) of the given dense indices."""
    idx = np.asarray(indices, dtype=np.int64)
    shifts = 2 * (n - 1 - np.arange(n, dtype=np.int64))
    return (idx[:, None] >> shifts[None, :]) & 3


def coarse_codes(indices, n):
    """Coarse fault words of dense indices packed as integers (qubit 0 = MSB)."""
    faults = (index_codes(indices, n) != 0).astype(np.int64)
    weights = 1 << (n - 1 - np.arange(n, dtype=np.int64))
    return faults @ weights
