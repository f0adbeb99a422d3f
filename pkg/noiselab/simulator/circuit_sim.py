"""
Author: noiselab contributors
Date: 2026-09-06 15:22:10
LastEditTime: 2026-10-13 10:05:44
LastEditors: noiselab contributors
Description: Circuit representation, ideal and noisy density-matrix simulation
FilePath: /noiselab/noiselab/simulator/circuit_sim.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from noiselab.configs import config as conf
from noiselab.configs.data_consts import GATE_ARITY, NOISE_ORDERS, PARAMETRIC_GATES
from noiselab.exceptions import BadRange, CapExceeded, DimensionMismatch, MissingSuperop
from noiselab.operators.channel_algebra import (
    DensityMatrix,
    QuantumChannel,
    UnitaryOp,
    ValidationReport,
    apply,
    choi_from_superop,
    embed_channel,
    embed_operator,
    kraus_from_choi,
)
from noiselab.utils.utils import make_rng

_SQ2 = 1 / math.sqrt(2)
FIXED_GATES = {
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    theta: float = None

    def __post_init__(self):
        object.__setattr__(self, "kind", self.kind.upper())
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in GATE_ARITY:
            raise ValueError(f"unknown gate {self.kind!r}")
        if len(self.qubits) != GATE_ARITY[self.kind]:
            raise ValueError(f"{self.kind} acts on {GATE_ARITY[self.kind]} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} qubits must be distinct, got {self.qubits}")
        if self.kind in PARAMETRIC_GATES:
            if self.theta is None or not math.isfinite(self.theta):
                raise ValueError(f"{self.kind} needs a finite angle")

    def matrix(self):
        if self.kind in FIXED_GATES:
            return FIXED_GATES[self.kind]
        c, s = math.cos(self.theta / 2), math.sin(self.theta / 2)
        if self.kind == "RX":
            return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
        if self.kind == "RY":
            return np.array([[c, -s], [s, c]], dtype=complex)
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]], dtype=complex)

    def to_json(self):
        out = {"gate": self.kind, "qubits": list(self.qubits)}
        if self.theta is not None:
            out["theta"] = self.theta
        return out

    @classmethod
    def from_json(cls, payload):
        return cls(payload["gate"], tuple(payload["qubits"]), payload.get("theta"))


@dataclass(frozen=True)
class Circuit:
    """Cycles of gates; within a cycle the gates act on disjoint qubits."""

    n: int
    cycles: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "cycles", tuple(tuple(cycle) for cycle in self.cycles)
        )

    @property
    def T(self):
        return len(self.cycles)

    def gates(self):
        return [g for cycle in self.cycles for g in cycle]

    def segment(self, s, t):
        """Sub-circuit of cycles s+1 .. t."""
        return Circuit(self.n, self.cycles[s:t])

    def to_json(self):
        return {
            "n": self.n,
            "cycles": [[g.to_json() for g in cycle] for cycle in self.cycles],
        }

    @classmethod
    def from_json(cls, payload):
        return cls(
            int(payload["n"]),
            tuple(tuple(Gate.from_json(g) for g in cycle) for cycle in payload["cycles"]),
        )


def bell():
    return Circuit(2, ((Gate("H", (0,)),), (Gate("CNOT", (0, 1)),)))


def ghz(n):
    """H on qubit 0 followed by a CNOT ladder; T = n cycles."""
    cycles = [(Gate("H", (0,)),)]
    cycles += [(Gate("CNOT", (k, k + 1)),) for k in range(n - 1)]
    return Circuit(n, tuple(cycles))


def product_rx(n, theta):
    return Circuit(n, (tuple(Gate("RX", (k,), theta) for k in range(n)),))


def empty_circuit(n, T):
    return Circuit(n, tuple(() for _ in range(T)))


def random_clifford_circuit(n, depth, seed, unit_index=0):
    """Random circuit over {H, S, CNOT}; each cycle is a random matching plus
    single-qubit gates on the unmatched qubits."""
    rng = make_rng(seed, "clifford-circuit", unit_index)
    cycles = []
    for _ in range(depth):
        order = [int(q) for q in rng.permutation(n)]
        pairs = int(rng.integers(0, n // 2 + 1))
        cycle = [Gate("CNOT", (order[2 * k], order[2 * k + 1])) for k in range(pairs)]
        for q in order[2 * pairs:]:
            kind = ("H", "S", "I")[int(rng.integers(0, 3))]
            if kind != "I":
                cycle.append(Gate(kind, (q,)))
        cycles.append(tuple(cycle))
    return Circuit(n, tuple(cycles))


def validate(c):
    """Check index bounds and per-cycle disjointness; never raises."""
    messages = []
    for t, cycle in enumerate(c.cycles, start=1):
        used = set()
        for g in cycle:
            for q in g.qubits:
                if q < 0 or q >= c.n:
                    messages.append(f"cycle {t}: {g.kind}{g.qubits} index {q} out of range for n={c.n}")
                elif q in used:
                    messages.append(f"cycle {t}: qubit {q} reused by {g.kind}{g.qubits}")
                used.add(q)
    return ValidationReport(passed=not messages, messages=messages)


def _require_valid(c):
    report = validate(c)
    if not report.passed:
        raise ValueError("; ".join(report.messages))


def _cycle_matrix(c, index):
    # index is 0-based position in c.cycles
    out = np.eye(1 << c.n, dtype=complex)
    for g in c.cycles[index]:
        out = embed_operator(g.matrix(), g.qubits, c.n, target=out)
    return out


def cycle_unitary(c, t):
    """Unitary of cycle t (1-based)."""
    if not 1 <= t <= c.T:
        raise BadRange(f"cycle index {t} not in 1..{c.T}")
    if c.n > conf.CAPS.dense_qubits:
        raise CapExceeded("n", c.n, conf.CAPS.dense_qubits)
    _require_valid(c)
    return UnitaryOp(_cycle_matrix(c, t - 1), gates=c.cycles[t - 1], validate=False)


def segment_unitary(c, s, t):
    """U_{s,t}: product of the cycle unitaries s+1 .. t (identity when s = t).

    The dense matrix is built on first use, so Clifford segments can be used
    on the Pauli fast path beyond the dense cap.
    """
    if not 0 <= s <= t <= c.T:
        raise BadRange(f"segment ({s}, {t}) not within 0 <= s <= t <= {c.T}")
    _require_valid(c)
    sub = c.segment(s, t)

    def build():
        out = np.eye(1 << c.n, dtype=complex)
        for g in sub.gates():
            out = embed_operator(g.matrix(), g.qubits, c.n, target=out)
        return out

    return UnitaryOp(n=c.n, gates=sub.gates(), builder=build)


@dataclass(frozen=True)
class GateNoise:
    """A channel confined to the qubits of one gate."""

    gate: Gate
    channel: QuantumChannel

    def extend(self, n):
        return embed_channel(self.channel, self.gate.qubits, n)


@dataclass
class NoiseSchedule:
    """Storage noise per cycle plus gate noise fragments per cycle.

    ``storage[t-1]`` (or None) acts on all n qubits after cycle t;
    ``gate_noise[t-1]`` lists the GateNoise fragments of cycle t.
    """

    n: int
    storage: list = field(default_factory=list)
    gate_noise: list = field(default_factory=list)
    order: str = "gates-first"

    def __post_init__(self):
        if self.order not in NOISE_ORDERS:
            raise ValueError(f"noise order must be one of {NOISE_ORDERS}")
        for e in self.storage:
            if e is not None and e.n != self.n:
                raise DimensionMismatch(f"storage channel on {e.n} qubits, circuit has {self.n}")
        for fragments in self.gate_noise:
            for frag in fragments:
                if frag.channel.n != len(frag.gate.qubits):
                    raise DimensionMismatch("gate noise does not match the gate's qubits")

    @classmethod
    def noiseless(cls, c):
        return cls(c.n, [None] * c.T, [[] for _ in range(c.T)])

    @classmethod
    def uniform(cls, c, storage=None, gate_channels=None, order="gates-first"):
        """Same storage channel every cycle, gate noise keyed by gate kind."""
        gate_channels = gate_channels or {}
        fragments = [
            [GateNoise(g, gate_channels[g.kind]) for g in cycle if g.kind in gate_channels]
            for cycle in c.cycles
        ]
        return cls(c.n, [storage] * c.T, fragments, order)

    def storage_at(self, t):
        return self.storage[t - 1] if t - 1 < len(self.storage) else None

    def gate_noise_at(self, t):
        return self.gate_noise[t - 1] if t - 1 < len(self.gate_noise) else []


@dataclass
class Trajectory:
    states: list
    superop: np.ndarray = None

    @property
    def final(self):
        return self.states[-1]


def _check_sim(c, rho0):
    if rho0.n != c.n:
        raise DimensionMismatch(f"state on {rho0.n} qubits, circuit on {c.n}")
    if c.n > conf.CAPS.dense_qubits:
        raise CapExceeded("n", c.n, conf.CAPS.dense_qubits)
    need = 16 * (1 << (2 * c.n)) * (c.T + 1)
    if need > conf.CAPS.trajectory_bytes:
        raise CapExceeded("trajectory bytes", need, conf.CAPS.trajectory_bytes)
    _require_valid(c)


def _conjugate(matrix, u):
    return u @ matrix @ u.conj().T


def simulate_ideal(c, rho0):
    """rho_t = U_{0,t} rho0 U_{0,t}^dagger for t = 0..T."""
    _check_sim(c, rho0)
    states = [rho0]
    current = rho0.matrix
    for index in range(c.T):
        current = _conjugate(current, _cycle_matrix(c, index))
        states.append(DensityMatrix(current, validate=False))
    return Trajectory(states)


def _unitary_superop(u):
    return np.kron(u, u.conj())


def simulate_noisy(c, rho0, ns):
    """Per cycle: gates, gate noise, storage noise (or noise first, see ``ns.order``).

    The overall noisy superoperator is accumulated when n is within the
    superoperator cap.
    """
    _check_sim(c, rho0)
    if ns.n != c.n:
        raise DimensionMismatch(f"schedule on {ns.n} qubits, circuit on {c.n}")
    track = c.n <= conf.CAPS.superop_qubits
    if not track:
        logger.debug(f"n={c.n} above superoperator cap, overall channel not tracked")
    total = np.eye(1 << (2 * c.n), dtype=complex) if track else None
    states = [rho0]
    current = rho0
    for t in range(1, c.T + 1):
        u = _cycle_matrix(c, t - 1)
        noise = [frag.extend(c.n) for frag in ns.gate_noise_at(t)]
        if ns.storage_at(t) is not None:
            noise.append(ns.storage_at(t))
        steps = [("u", u)] + [("e", e) for e in noise]
        if ns.order == "noise-first":
            steps = steps[1:] + steps[:1]
        for kind, op in steps:
            if kind == "u":
                current = DensityMatrix(_conjugate(current.matrix, op), validate=False)
                if track:
                    total = _unitary_superop(op) @ total
            else:
                current = apply(op, current)
                if track:
                    total = op.superop @ total
        states.append(current)
    return Trajectory(states, total)


def overall_error_channel(traj, c):
    """E_overall = S_noisy o Ad_{U_{0,T}}^{-1}."""
    if traj.superop is None:
        raise MissingSuperop("trajectory carries no overall superoperator")
    u = segment_unitary(c, 0, c.T).matrix
    superop = traj.superop @ _unitary_superop(u.conj().T)
    return QuantumChannel(c.n, kraus=kraus_from_choi(choi_from_superop(superop)))


def readout_distribution(rho):
    """Terminal computational-basis measurement probabilities (qubit 0 = MSB)."""
    probs = np.clip(np.real(np.diag(rho.matrix)), 0.0, None)
    return probs / probs.sum()
