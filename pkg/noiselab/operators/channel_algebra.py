"""
Author: noiselab contributors
Date: 2026-09-04 10:40:03
LastEditTime: 2026-10-12 20:11:37
LastEditors: noiselab contributors
Description: Density matrices, unitaries and quantum channels
FilePath: /noiselab/noiselab/operators/channel_algebra.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import threading
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from loguru import logger
from scipy import optimize

from noiselab.configs import config as conf
from noiselab.configs.data_consts import ERROR_RATE_STRATEGIES
from noiselab.exceptions import (
    BadProbability,
    BadWeights,
    CapExceeded,
    DimensionMismatch,
)
from noiselab.operators.pauli_core import (
    PauliString,
    clifford_conjugate,
    from_pauli_coefficients,
    is_clifford,
    masses_from_fidelities,
    num_qubits,
    pauli_coefficients,
    pauli_fidelities,
    pauli_matrix,
)
from noiselab.utils.utils import (
    make_rng,
    matrix_from_json,
    matrix_to_json,
    random_pure_state,
)


def _check_dense(n, what="n"):
    if n > conf.CAPS.dense_qubits:
        raise CapExceeded(what, n, conf.CAPS.dense_qubits)


def _check_superop(n):
    if n > conf.CAPS.superop_qubits:
        raise CapExceeded("n (superoperator)", n, conf.CAPS.superop_qubits)


def _frozen(matrix):
    arr = np.array(matrix, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass
class ValidationReport:
    passed: bool
    messages: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {"passed": self.passed, "messages": list(self.messages), **self.metrics}


class DensityMatrix:
    """Immutable n-qubit density matrix.

    Parameters
    ----------
    matrix : array_like
        2^n x 2^n complex matrix
    validate : bool, optional
        check hermiticity, unit trace and positivity, by default True
    """

    def __init__(self, matrix, validate=True):
        arr = np.array(matrix, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got {arr.shape}")
        self.n = num_qubits(arr.shape[0])
        _check_dense(self.n)
        if validate:
            self._validate(arr)
        arr.setflags(write=False)
        self._matrix = arr

    @staticmethod
    def _validate(arr):
        tol = conf.TOLERANCES.state
        if np.max(np.abs(arr - arr.conj().T)) > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(arr) - 1) > tol:
            raise ValueError(f"density matrix trace is {np.trace(arr).real}, not 1")
        if np.linalg.eigvalsh((arr + arr.conj().T) / 2).min() < -tol:
            raise ValueError("density matrix has a negative eigenvalue")

    @property
    def matrix(self):
        return self._matrix

    @property
    def dim(self):
        return 1 << self.n

    @classmethod
    def from_statevector(cls, psi):
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()), validate=False)

    @classmethod
    def basis_state(cls, n, bits=0):
        """|b><b| with ``bits`` given as an int or a '0'/'1' string (qubit 0 first)."""
        index = int(bits, 2) if isinstance(bits, str) else int(bits)
        psi = np.zeros(1 << n, dtype=complex)
        psi[index] = 1
        return cls.from_statevector(psi)

    @classmethod
    def maximally_mixed(cls, n):
        d = 1 << n
        return cls(np.eye(d) / d, validate=False)

    def purity(self):
        return float(np.real(np.trace(self._matrix @ self._matrix)))

    def is_pure(self, tol=1e-9):
        return abs(self.purity() - 1) <= tol

    def fidelity_with_pure(self, psi):
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        return float(np.real(psi.conj() @ self._matrix @ psi))

    def to_json(self):
        return {"n": self.n, "matrix": matrix_to_json(self._matrix)}

    @classmethod
    def from_json(cls, payload):
        rho = cls(matrix_from_json(payload["matrix"]))
        if rho.n != payload["n"]:
            raise DimensionMismatch("'n' does not match the matrix size")
        return rho


class UnitaryOp:
    """Unitary on n qubits, either given densely or built lazily from gates.

    When ``gates`` is known (an ordered sequence of gate objects), Clifford
    conjugation of Pauli mixtures can skip the dense matrix entirely.
    """

    def __init__(self, matrix=None, n=None, gates=None, builder=None, validate=True):
        if matrix is None and builder is None:
            raise ValueError("UnitaryOp needs a matrix or a builder")
        self._lock = threading.Lock()
        self._matrix = None
        self._builder = builder
        self.gates = tuple(gates) if gates is not None else None
        if matrix is not None:
            arr = np.array(matrix, dtype=complex)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise DimensionMismatch(f"unitary must be square, got {arr.shape}")
            self.n = num_qubits(arr.shape[0])
            _check_dense(self.n)
            if validate:
                err = np.max(np.abs(arr.conj().T @ arr - np.eye(arr.shape[0])))
                if err > conf.TOLERANCES.unitary:
                    raise ValueError(f"matrix is not unitary (deviation {err:.2e})")
            self._matrix = _frozen(arr)
        else:
            self.n = int(n)

    @classmethod
    def identity(cls, n):
        return cls(np.eye(1 << n), validate=False, gates=())

    @property
    def matrix(self):
        if self._matrix is None:
            _check_dense(self.n)
            with self._lock:
                if self._matrix is None:
                    self._matrix = _frozen(self._builder())
        return self._matrix

    @property
    def is_clifford(self):
        return self.gates is not None and is_clifford(self.gates)

    def adjoint(self):
        gates = None
        if self.is_clifford:
            gates = []
            for g in reversed(self.gates):
                # S^dagger = S^3, every other supported gate is an involution
                gates.extend([g, g, g] if g.kind == "S" else [g])
        if self._matrix is not None:
            return UnitaryOp(self._matrix.conj().T, gates=gates, validate=False)
        return UnitaryOp(n=self.n, gates=gates, builder=lambda: self.matrix.conj().T)

    def __matmul__(self, other):
        """self @ other: apply ``other`` first, then ``self``."""
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n} qubits")
        gates = None
        if self.gates is not None and other.gates is not None:
            gates = other.gates + self.gates
        return UnitaryOp(
            n=self.n, gates=gates, builder=lambda: self.matrix @ other.matrix
        )


def embed_operator(op, qubits, n, target=None):
    """Apply a k-qubit operator to the given qubits of a 2^n x m block.

    With ``target`` omitted the identity is used, so the return value is the
    full 2^n x 2^n operator.
    """
    qubits = list(qubits)
    k = len(qubits)
    op = np.asarray(op, dtype=complex)
    if op.shape != (1 << k, 1 << k):
        raise DimensionMismatch(f"{op.shape} operator on {k} qubits")
    if target is None:
        target = np.eye(1 << n, dtype=complex)
    t = np.asarray(target, dtype=complex).reshape([2] * n + [-1])
    g = op.reshape([2] * (2 * k))
    t = np.tensordot(g, t, axes=(list(range(k, 2 * k)), qubits))
    t = np.moveaxis(t, list(range(k)), qubits)
    return t.reshape(1 << n, -1)


class QuantumChannel:
    """CPTP map on n qubits.

    A channel is defined by exactly one primary description: a Kraus list, a
    Pauli mixture (dense ndarray over 4^n masses or sparse ``{index: mass}``
    dict) or a superoperator. The other descriptions are derived on first use
    and cached.
    """

    def __init__(self, n, kraus=None, pauli_mixture=None, superop=None, label=None):
        given = sum(x is not None for x in (kraus, pauli_mixture, superop))
        if given != 1:
            raise ValueError("give exactly one of kraus, pauli_mixture, superop")
        self.n = int(n)
        self.label = label
        self._lock = threading.Lock()
        self._kraus = None
        self._superop = None
        self.pauli_mixture = None
        if kraus is not None:
            ops = [np.asarray(a, dtype=complex) for a in kraus]
            d = 1 << self.n
            for a in ops:
                if a.shape != (d, d):
                    raise DimensionMismatch(f"Kraus operator {a.shape} on {self.n} qubits")
            self._kraus = tuple(_frozen(a) for a in ops)
        elif pauli_mixture is not None:
            self.pauli_mixture = _normalize_mixture(pauli_mixture, self.n)
        else:
            d2 = 1 << (2 * self.n)
            if np.shape(superop) != (d2, d2):
                raise DimensionMismatch(f"superoperator shape {np.shape(superop)}")
            self._superop = _frozen(superop)

    def __repr__(self):
        kind = "pauli" if self.pauli_mixture is not None else "kraus"
        return f"QuantumChannel(n={self.n}, {kind}, label={self.label!r})"

    @property
    def dim(self):
        return 1 << self.n

    @property
    def is_pauli(self):
        return self.pauli_mixture is not None

    @property
    def kraus(self):
        if self._kraus is None:
            with self._lock:
                if self._kraus is None:
                    self._kraus = tuple(_frozen(a) for a in self._derive_kraus())
        return self._kraus

    def _derive_kraus(self):
        _check_dense(self.n)
        if self.pauli_mixture is not None:
            items = _mixture_items(self.pauli_mixture)
            items = [(i, m) for i, m in items if m > conf.TOLERANCES.kraus_drop**2]
            if len(items) > conf.CAPS.kraus_count:
                raise CapExceeded("Kraus count", len(items), conf.CAPS.kraus_count)
            return [
                np.sqrt(m) * pauli_matrix(PauliString.from_index(i, self.n))
                for i, m in items
            ]
        return kraus_from_choi(choi_from_superop(self._superop))

    @property
    def superop(self):
        """Row-major vectorized superoperator: vec(E(rho)) = S @ vec(rho)."""
        if self._superop is None:
            _check_superop(self.n)
            kraus = self.kraus
            with self._lock:
                if self._superop is None:
                    self._superop = _frozen(superop_from_kraus(kraus))
        return self._superop

    def has_superop(self):
        return self._superop is not None

    def dense_masses(self):
        """Dense Pauli masses of a Pauli-mixture channel."""
        if self.pauli_mixture is None:
            raise ValueError("channel is not a Pauli mixture")
        return _mixture_dense(self.pauli_mixture, self.n)

    def without_pauli_mixture(self):
        """Same channel described only by Kraus operators (dense reference path)."""
        return QuantumChannel(self.n, kraus=self.kraus, label=self.label)

    def to_json(self):
        return {"n": self.n, "kraus": [matrix_to_json(a) for a in self.kraus]}

    @classmethod
    def from_json(cls, payload):
        return cls(
            payload["n"], kraus=[matrix_from_json(a) for a in payload["kraus"]]
        )


# ---------------------------------------------------------------------------
# representation helpers
# ---------------------------------------------------------------------------


def _normalize_mixture(mixture, n):
    if isinstance(mixture, dict):
        out = {}
        for key, mass in mixture.items():
            if isinstance(key, PauliString):
                key = key.index()
            elif isinstance(key, str):
                key = PauliString.from_label(key).index()
            mass = float(mass)
            if mass < -conf.TOLERANCES.mass:
                raise BadProbability(f"negative Pauli mass {mass}")
            if mass > 0:
                out[int(key)] = out.get(int(key), 0.0) + mass
        return out
    arr = np.array(mixture, dtype=float).reshape(-1)
    if arr.size != 1 << (2 * n):
        raise DimensionMismatch(f"dense Pauli mixture of size {arr.size} for n={n}")
    if arr.min() < -conf.TOLERANCES.mass:
        raise BadProbability(f"negative Pauli mass {arr.min()}")
    arr = np.clip(arr, 0.0, None)
    arr.setflags(write=False)
    return arr


def _mixture_items(mixture):
    if isinstance(mixture, dict):
        return sorted(mixture.items())
    nz = np.flatnonzero(mixture)
    return [(int(i), float(mixture[i])) for i in nz]


def _mixture_dense(mixture, n):
    if isinstance(mixture, dict):
        _check_dense(n)
        arr = np.zeros(1 << (2 * n))
        for i, m in mixture.items():
            arr[i] += m
        return arr
    return np.asarray(mixture, dtype=float)


def superop_from_kraus(kraus):
    stack = np.asarray(kraus, dtype=complex)
    m, d = stack.shape[0], stack.shape[1]
    flat = stack.reshape(m, d * d)
    s = (flat.T @ flat.conj()).reshape(d, d, d, d)
    # s[i, k, j, l] = sum_m A[i, k] conj(A[j, l]) -> S[(i, j), (k, l)]
    return s.transpose(0, 2, 1, 3).reshape(d * d, d * d)


def choi_from_kraus(kraus):
    """Unnormalized Choi matrix C[(k,i),(l,j)] = E(|k><l|)[i,j]."""
    stack = np.asarray(kraus, dtype=complex)
    m, d = stack.shape[0], stack.shape[1]
    vecs = stack.transpose(0, 2, 1).reshape(m, d * d)
    return vecs.T @ vecs.conj()


def choi_from_superop(superop):
    d = int(round(np.sqrt(superop.shape[0])))
    return np.asarray(superop).reshape(d, d, d, d).transpose(2, 0, 3, 1).reshape(d * d, d * d)


def kraus_from_choi(choi):
    """Canonical (orthogonal) Kraus set from the Choi eigendecomposition."""
    d = int(round(np.sqrt(choi.shape[0])))
    herm = (choi + choi.conj().T) / 2
    vals, vecs = np.linalg.eigh(herm)
    kraus = []
    for lam, v in zip(vals[::-1], vecs[:, ::-1].T):
        if lam <= conf.TOLERANCES.kraus_drop:
            continue
        kraus.append(np.sqrt(lam) * v.reshape(d, d).T)
    if not kraus:
        raise ValueError("Choi matrix has no positive eigenvalue")
    return kraus


def canonicalize(kraus, n):
    """Drop negligible operators; re-orthogonalize when there are more than 4^n."""
    drop = conf.TOLERANCES.kraus_drop
    kept = [a for a in kraus if np.linalg.norm(a) >= drop]
    if len(kept) > 1 << (2 * n):
        logger.debug(f"re-orthogonalizing {len(kept)} Kraus operators on {n} qubits")
        kept = kraus_from_choi(choi_from_kraus(kept))
    return kept


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def _same_n(*objs):
    ns = {o.n for o in objs}
    if len(ns) != 1:
        raise DimensionMismatch(f"qubit counts differ: {sorted(ns)}")


def apply(e, rho):
    """E(rho)."""
    _same_n(e, rho)
    m = rho.matrix
    if e.pauli_mixture is not None:
        coeffs = pauli_coefficients(m)
        fidelities = pauli_fidelities(e.dense_masses(), e.n)
        out = from_pauli_coefficients(coeffs * fidelities, e.n)
    elif e.has_superop():
        out = (e.superop @ m.reshape(-1)).reshape(m.shape)
    else:
        stack = np.asarray(e.kraus)
        out = np.einsum("kij,jl,kml->im", stack, m, stack.conj(), optimize=True)
    return DensityMatrix((out + out.conj().T) / 2, validate=False)


def compose(second, first):
    """Channel rho -> second(first(rho))."""
    _same_n(second, first)
    n = first.n
    if second.pauli_mixture is not None and first.pauli_mixture is not None:
        mixture = _compose_mixtures(second.pauli_mixture, first.pauli_mixture, n)
        if mixture is not None:
            return QuantumChannel(n, pauli_mixture=mixture)
    count = len(second.kraus) * len(first.kraus)
    if count <= conf.CAPS.kraus_count:
        kraus = [b @ a for b in second.kraus for a in first.kraus]
        return QuantumChannel(n, kraus=canonicalize(kraus, n))
    logger.debug(f"Kraus count {count} above cap, composing superoperators")
    superop = second.superop @ first.superop
    return QuantumChannel(n, kraus=kraus_from_choi(choi_from_superop(superop)))


def _compose_mixtures(a, b, n):
    if isinstance(a, dict) and isinstance(b, dict):
        if len(a) * len(b) <= conf.CAPS.sparse_support:
            out = {}
            for ia, ma in a.items():
                pa = PauliString.from_index(ia, n)
                for ib, mb in b.items():
                    pb = PauliString.from_index(ib, n)
                    key = PauliString(n, pa.x ^ pb.x, pa.z ^ pb.z).index()
                    out[key] = out.get(key, 0.0) + ma * mb
            return out
    if n > conf.CAPS.dense_qubits:
        return None
    fa = pauli_fidelities(_mixture_dense(a, n), n)
    fb = pauli_fidelities(_mixture_dense(b, n), n)
    return np.clip(masses_from_fidelities(fa * fb, n), 0.0, None)


def conjugate_by_unitary(e, u):
    """Channel rho -> U E(U^dagger rho U) U^dagger."""
    _same_n(e, u)
    n = e.n
    if e.pauli_mixture is not None and u.is_clifford:
        pushed = {}
        for idx, mass in _mixture_items(e.pauli_mixture):
            image = clifford_conjugate(PauliString.from_index(idx, n), u.gates).pauli
            key = image.index()
            pushed[key] = pushed.get(key, 0.0) + mass
        if isinstance(e.pauli_mixture, np.ndarray):
            pushed = _mixture_dense(pushed, n)
        return QuantumChannel(n, pauli_mixture=pushed)
    um = u.matrix
    return QuantumChannel(n, kraus=[um @ a @ um.conj().T for a in e.kraus])


def mix(channels, weights):
    """Convex mixture sum_i w_i E_i."""
    if len(channels) != len(weights) or not channels:
        raise BadWeights("need one weight per channel and at least one channel")
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or abs(w.sum() - 1) > conf.TOLERANCES.weights:
        raise BadWeights(f"weights must be nonnegative and sum to 1, got sum {w.sum()!r}")
    _same_n(*channels)
    n = channels[0].n
    pairs = [(c, float(x)) for c, x in zip(channels, w) if x > 0]
    if all(c.pauli_mixture is not None for c, _ in pairs):
        if all(isinstance(c.pauli_mixture, dict) for c, _ in pairs):
            out = {}
            for c, x in pairs:
                for i, m in c.pauli_mixture.items():
                    out[i] = out.get(i, 0.0) + x * m
            return QuantumChannel(n, pauli_mixture=out)
        if n <= conf.CAPS.dense_qubits:
            dense = sum(x * _mixture_dense(c.pauli_mixture, n) for c, x in pairs)
            return QuantumChannel(n, pauli_mixture=dense)
    kraus = [np.sqrt(x) * a for c, x in pairs for a in c.kraus]
    return QuantumChannel(n, kraus=canonicalize(kraus, n))


def validate_cptp(e):
    """Trace-preservation residuals and minimum Choi eigenvalue of a channel.

    ``trace_residual`` is the spectral norm of sum A^dagger A - I and
    ``trace_residual_fro`` its Frobenius norm; the check uses the larger.
    """
    tol = conf.TOLERANCES.cptp
    d = e.dim
    if e.pauli_mixture is not None:
        items = _mixture_items(e.pauli_mixture)
        total = sum(m for _, m in items)
        spectral = abs(total - 1)
        fro = spectral * np.sqrt(d)
        # the Choi spectrum of a Pauli channel is d * masses, zeros included
        full = len(items) == 1 << (2 * e.n)
        min_eig = d * min(m for _, m in items) if full else 0.0
    else:
        _check_superop(e.n)
        stack = np.asarray(e.kraus)
        gram = np.einsum("kji,kjl->il", stack.conj(), stack)
        diff = gram - np.eye(d)
        spectral = float(np.linalg.norm(diff, 2))
        fro = float(np.linalg.norm(diff))
        choi = choi_from_kraus(stack)
        min_eig = float(np.linalg.eigvalsh((choi + choi.conj().T) / 2).min())
    messages = []
    if max(spectral, fro) > tol:
        messages.append(f"trace preservation violated: residual {spectral:.3g}")
    if min_eig < -tol:
        messages.append(f"not completely positive: min Choi eigenvalue {min_eig:.3g}")
    return ValidationReport(
        passed=not messages,
        messages=messages,
        metrics={
            "trace_residual": float(spectral),
            "trace_residual_fro": float(fro),
            "min_choi_eigenvalue": float(min_eig),
        },
    )


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def _check_p(p, name="p"):
    if not (0.0 <= float(p) <= 1.0) or not np.isfinite(p):
        raise BadProbability(f"{name}={p} is not a probability")


def _support(n, support):
    if support is None:
        return set(range(n))
    support = set(int(q) for q in support)
    if any(q < 0 or q >= n for q in support):
        raise ValueError(f"support {sorted(support)} not within {n} qubits")
    return support


def _product_pauli_channel(n, per_qubit, support, label):
    _check_dense(n)
    ident = np.array([1.0, 0.0, 0.0, 0.0])
    vecs = [per_qubit if k in support else ident for k in range(n)]
    return QuantumChannel(n, pauli_mixture=reduce(np.kron, vecs), label=label)


def identity_channel(n):
    return QuantumChannel(n, pauli_mixture={0: 1.0}, label="identity")


def depolarizing(n, p, support=None):
    """Independent single-qubit depolarizing (1-p) rho + p tau on ``support``."""
    _check_p(p)
    per_qubit = np.array([1 - 3 * p / 4, p / 4, p / 4, p / 4])
    return _product_pauli_channel(n, per_qubit, _support(n, support), f"dep({p})")


def correlated_depolarizing(n, p):
    """rho -> (1-p) rho + p I/2^n."""
    _check_p(p)
    _check_dense(n)
    masses = np.full(1 << (2 * n), p / (1 << (2 * n)))
    masses[0] += 1 - p
    return QuantumChannel(n, pauli_mixture=masses, label=f"cdep({p})")


def dephasing(n, q, support=None):
    """Z-dephasing with Kraus {sqrt(1-q) I, sqrt(q) Z} per supported qubit."""
    _check_p(q, "q")
    per_qubit = np.array([1 - q, 0.0, q, 0.0])
    return _product_pauli_channel(n, per_qubit, _support(n, support), f"dephase({q})")


def bit_flip(n, q, support=None):
    _check_p(q, "q")
    per_qubit = np.array([1 - q, q, 0.0, 0.0])
    return _product_pauli_channel(n, per_qubit, _support(n, support), f"flip({q})")


def pauli_channel(n, masses):
    """Pauli mixture from ``{label or PauliString: mass}``."""
    channel = QuantumChannel(n, pauli_mixture=dict(masses))
    total = sum(channel.pauli_mixture.values())
    if abs(total - 1) > conf.TOLERANCES.mass:
        raise BadProbability(f"Pauli masses sum to {total}")
    return channel


def pauli_unitary_channel(label):
    """Ad_P for a Pauli string label, e.g. 'X' or 'XZ'."""
    p = PauliString.from_label(label)
    return QuantumChannel(p.n, pauli_mixture={p.index(): 1.0}, label=f"Ad_{label}")


def unitary_channel(u):
    matrix = u.matrix if isinstance(u, UnitaryOp) else np.asarray(u, dtype=complex)
    return QuantumChannel(num_qubits(matrix.shape[0]), kraus=[matrix])


def amplitude_damping(n, gamma, support=None):
    _check_p(gamma, "gamma")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]])
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]])
    single = QuantumChannel(1, kraus=[k0, k1], label=f"ad({gamma})")
    channel = identity_channel(n)
    for q in sorted(_support(n, support)):
        channel = compose(embed_channel(single, [q], n), channel)
    return channel


def tensor_channels(a, b):
    """a (x) b with ``a`` on the leading qubits."""
    n = a.n + b.n
    if a.pauli_mixture is not None and b.pauli_mixture is not None and n <= conf.CAPS.dense_qubits:
        return QuantumChannel(
            n, pauli_mixture=np.kron(a.dense_masses(), b.dense_masses())
        )
    return QuantumChannel(n, kraus=[np.kron(x, y) for x in a.kraus for y in b.kraus])


def embed_channel(e, qubits, n):
    """Extend a k-qubit channel to n qubits, acting on ``qubits``."""
    qubits = [int(q) for q in qubits]
    if len(qubits) != e.n:
        raise DimensionMismatch(f"{e.n}-qubit channel on qubits {qubits}")
    if len(set(qubits)) != len(qubits) or any(q < 0 or q >= n for q in qubits):
        raise ValueError(f"qubits {qubits} are not distinct indices below {n}")
    if e.pauli_mixture is not None:
        out = {}
        for idx, mass in _mixture_items(e.pauli_mixture):
            local = PauliString.from_index(idx, e.n)
            x = z = 0
            for k, q in enumerate(qubits):
                code = local.code(k)
                x |= (code & 1) << (n - 1 - q)
                z |= (code >> 1) << (n - 1 - q)
            key = PauliString(n, x, z).index()
            out[key] = out.get(key, 0.0) + mass
        return QuantumChannel(n, pauli_mixture=out, label=e.label)
    _check_dense(n)
    return QuantumChannel(
        n, kraus=[embed_operator(a, qubits, n) for a in e.kraus], label=e.label
    )


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


def trace_distance(rho, sigma):
    _same_n(rho, sigma)
    diff = rho.matrix - sigma.matrix
    eig = np.linalg.eigvalsh((diff + diff.conj().T) / 2)
    return float(min(1.0, 0.5 * np.abs(eig).sum()))


def superop_distance(a, b):
    """Frobenius norm of the superoperator difference."""
    _same_n(a, b)
    return float(np.linalg.norm(a.superop - b.superop))


def _pure_distance(e, psi):
    rho = DensityMatrix.from_statevector(psi)
    return trace_distance(rho, apply(e, rho))


def channel_error_rate(e, strategy="basis-states", samples=32, seed=0, budget=200):
    """Certified lower bound on sup_rho D(rho, E(rho)).

    Parameters
    ----------
    e : QuantumChannel
        the channel
    strategy : str
        "basis-states" (computational basis), "random-pure" (basis states plus
        ``samples`` Haar-random pure states) or "refine" (random-pure followed
        by a local search over pure states); each strategy evaluates a superset
        of the states of the previous one
    samples : int, optional
        number of random pure states, by default 32
    seed : int, optional
        master seed for the random states, by default 0
    budget : int, optional
        iteration budget of the local search, by default 200

    Returns
    -------
    float
        the largest trace distance found
    """
    if strategy not in ERROR_RATE_STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}, expected {ERROR_RATE_STRATEGIES}")
    _check_dense(e.n)
    d = e.dim
    best, best_psi = 0.0, np.eye(d)[0].astype(complex)
    for b in range(d):
        psi = np.zeros(d, dtype=complex)
        psi[b] = 1
        value = _pure_distance(e, psi)
        if value > best:
            best, best_psi = value, psi
    if strategy == "basis-states":
        return best
    rng = make_rng(seed, "error-rate")
    for _ in range(samples):
        psi = random_pure_state(d, rng)
        value = _pure_distance(e, psi)
        if value > best:
            best, best_psi = value, psi
    if strategy == "random-pure":
        return best

    def objective(params):
        psi = params[:d] + 1j * params[d:]
        norm = np.linalg.norm(psi)
        if norm < 1e-12:
            return 0.0
        return -_pure_distance(e, psi / norm)

    start = np.concatenate([best_psi.real, best_psi.imag])
    result = optimize.minimize(
        objective, start, method="Nelder-Mead", options={"maxiter": budget, "xatol": 1e-10, "fatol": 1e-12}
    )
    return max(best, float(-result.fun))
