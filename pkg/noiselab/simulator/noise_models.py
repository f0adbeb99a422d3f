"""
Author: noiselab contributors
Date: 2026-09-08 09:41:55
LastEditTime: 2026-10-13 17:52:20
LastEditors: noiselab contributors
Description: Smoothing kernels, detrimental noise, reverse smoothing, noise envelopes
    and conditioned random-unitary channels
FilePath: /noiselab/noiselab/simulator/noise_models.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from noiselab.analyzer.syndrome_stats import channel_alpha, pauli_mass, weight_profile
from noiselab.configs import config as conf
from noiselab.configs.data_consts import KERNEL_KINDS
from noiselab.exceptions import (
    BadRange,
    CalibrationFailed,
    CapExceeded,
    DimensionMismatch,
    LengthMismatch,
)
from noiselab.operators.channel_algebra import (
    QuantumChannel,
    UnitaryOp,
    conjugate_by_unitary,
    mix,
    validate_cptp,
)
from noiselab.operators.pauli_core import is_clifford
from noiselab.simulator.circuit_sim import GateNoise, NoiseSchedule, segment_unitary
from noiselab.utils.utils import gaussian_hermitian, make_rng, ordered_map


@dataclass(frozen=True)
class KernelSpec:
    """Smoothing kernel K on [0, 1].

    uniform: K = 1; exp_decay: K(x) = exp(-x / tau); window: K(x) = 1 for
    x <= w (inclusive) and 0 beyond.
    """

    kind: str = "uniform"
    tau: float = None
    w: float = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"kernel kind must be one of {KERNEL_KINDS}, got {self.kind!r}")
        if self.kind == "exp_decay" and not (self.tau is not None and self.tau > 0):
            raise ValueError("exp_decay kernel needs tau > 0")
        if self.kind == "window" and not (self.w is not None and 0 < self.w <= 1):
            raise ValueError("window kernel needs 0 < w <= 1")

    def __call__(self, x):
        if self.kind == "uniform":
            return 1.0
        if self.kind == "exp_decay":
            return math.exp(-x / self.tau)
        return 1.0 if x <= self.w + 1e-12 else 0.0

    def to_json(self):
        out = {"kind": self.kind}
        if self.tau is not None:
            out["tau"] = self.tau
        if self.w is not None:
            out["w"] = self.w
        return out

    @classmethod
    def from_json(cls, payload):
        unknown = set(payload) - {"kind", "tau", "w"}
        if unknown:
            raise ValueError(f"unknown kernel keys {sorted(unknown)}")
        return cls(payload.get("kind", "uniform"), payload.get("tau"), payload.get("w"))


def _normalize(raw):
    total = sum(raw)
    if total <= 0:
        raise BadRange("kernel vanishes on every admissible cycle")
    return [r / total for r in raw]


def kernel_weights(k, t, T):
    """w_s proportional to K((t - s)/T) for s = 1..t."""
    if not 1 <= t <= T:
        raise BadRange(f"cycle {t} not in 1..{T}")
    return _normalize([k((t - s) / T) for s in range(1, t + 1)])


def reverse_weights(k, t, T):
    """w'_s proportional to K((s - t)/T) for s = t+1..T."""
    if not 1 <= t < T:
        raise BadRange(f"reverse smoothing needs 1 <= t < T, got t={t}, T={T}")
    return _normalize([k((s - t) / T) for s in range(t + 1, T + 1)])


@dataclass
class DetrimentalSchedule:
    circuit: object
    base: list
    kernel: KernelSpec
    derived: list = field(default_factory=list)

    def channel(self, t):
        return self.derived[t - 1]

    def as_noise_schedule(self, order="gates-first"):
        return NoiseSchedule(self.circuit.n, list(self.derived), [[] for _ in self.derived], order)

    def summaries(self):
        """Per-cycle syndrome summary (alpha and weight profile)."""
        rows = []
        for t, e in enumerate(self.derived, start=1):
            wp = weight_profile(pauli_mass(e))
            rows.append({"t": t, "alpha": wp.alpha, "f": list(wp.f)})
        return rows


def _check_base(c, base):
    if len(base) != c.T:
        raise LengthMismatch(f"{len(base)} base channels for {c.T} cycles")
    for e in base:
        if e.n != c.n:
            raise DimensionMismatch(f"base channel on {e.n} qubits, circuit on {c.n}")


def detrimental_channel(c, base, k, t, fast_path=True):
    """E'_t = sum_{s <= t} w_s U_{s,t} E_s U_{s,t}^dagger."""
    weights = kernel_weights(k, t, c.T)
    terms = []
    for s, w in zip(range(1, t + 1), weights):
        if w == 0:
            continue
        e = base[s - 1] if fast_path else base[s - 1].without_pauli_mixture()
        u = segment_unitary(c, s, t)
        if not fast_path:
            u = UnitaryOp(u.matrix, validate=False)
        terms.append((conjugate_by_unitary(e, u) if s < t else e, w))
    channels, ws = zip(*terms)
    total = sum(ws)
    return mix(list(channels), [w / total for w in ws])


def detrimental_transform(c, base, k, fast_path=True, threads=1):
    """Derive the detrimental channels E'_1 .. E'_T.

    Clifford circuits with Pauli-mixture base noise stay on the exact sparse
    Pauli path; anything else goes through dense Kraus operators, which needs
    n within the superoperator cap.
    """
    _check_base(c, base)
    sparse = fast_path and all(e.is_pauli for e in base) and is_clifford(c)
    if not sparse and c.n > conf.CAPS.superop_qubits:
        raise CapExceeded("n (dense detrimental path)", c.n, conf.CAPS.superop_qubits)
    logger.debug(f"detrimental transform n={c.n} T={c.T} kernel={k.kind} sparse={sparse}")
    derived = ordered_map(
        lambda t: detrimental_channel(c, base, k, t, fast_path=fast_path),
        range(1, c.T + 1),
        threads,
    )
    return DetrimentalSchedule(c, list(base), k, derived)


def reverse_smoothing(base, k, t):
    """E''_t = sum_{s > t} w'_s E_s, without conjugation."""
    T = len(base)
    weights = reverse_weights(k, t, T)
    pairs = [(base[s - 1], w) for s, w in zip(range(t + 1, T + 1), weights) if w > 0]
    channels, ws = zip(*pairs)
    total = sum(ws)
    return mix(list(channels), [w / total for w in ws])


def reverse_schedule(base, k):
    """E''_1 .. E''_T; the last cycle has no future and keeps E_T."""
    T = len(base)
    return [reverse_smoothing(base, k, t) for t in range(1, T)] + [base[-1]]


@dataclass
class NoiseEnvelope:
    """Noise envelope D_rho = {U E0 U^-1 : U rho0 U^dagger = rho}."""

    rho0: object
    base: QuantumChannel

    def generator(self, rho, u, check_state=True):
        if u.n != self.base.n:
            raise DimensionMismatch(f"unitary on {u.n} qubits, base channel on {self.base.n}")
        if check_state and rho is not None:
            m = u.matrix
            prepared = m @ self.rho0.matrix @ m.conj().T
            if np.max(np.abs(prepared - rho.matrix)) > 1e-8:
                raise ValueError("the unitary does not prepare the given state from rho0")
        return conjugate_by_unitary(self.base, u)


def memory_example_envelope(rho0, e0):
    if not validate_cptp(e0).passed:
        raise ValueError("base channel is not CPTP")
    if rho0.n != e0.n:
        raise DimensionMismatch(f"state on {rho0.n} qubits, channel on {e0.n}")
    return NoiseEnvelope(rho0, e0)


@dataclass(frozen=True)
class HaarCalibration:
    channel: QuantumChannel
    theta: float
    alpha: float


def calibrate_haar_channel(n, target_alpha, seed, env_qubits=0, unit_index=0):
    """Near-identity random unitary channel with expected qubit errors ~ target.

    U = exp(i theta H) with H from the traceless Gaussian Hermitian ensemble on
    n + env_qubits qubits; the environment starts in |0...0> and is traced out.
    theta is bisected until alpha is within the calibration tolerance (2%).
    """
    if n + env_qubits > conf.CAPS.haar_qubits:
        raise CapExceeded("n + env_qubits", n + env_qubits, conf.CAPS.haar_qubits)
    if not 0 < target_alpha < 0.75 * n:
        raise BadRange(f"target alpha {target_alpha} not in (0, {0.75 * n})")
    rng = make_rng(seed, "haar", unit_index)
    m = n + env_qubits
    h = gaussian_hermitian(1 << m, rng)
    vals, vecs = np.linalg.eigh(h)
    d, de = 1 << n, 1 << env_qubits

    def kraus_at(theta):
        u = (vecs * np.exp(1j * theta * vals)[None, :]) @ vecs.conj().T
        # Kraus_k = (I (x) <k|) U (I (x) |0>)
        blocks = u.reshape(d, de, d, de)[:, :, :, 0]
        return [blocks[:, k, :] for k in range(de)]

    def alpha_at(theta):
        return channel_alpha(QuantumChannel(n, kraus=kraus_at(theta)))

    tol = conf.TOLERANCES.calibration
    lo, hi = 0.0, 1e-3
    a_hi = alpha_at(hi)
    while a_hi < target_alpha:
        lo, hi = hi, hi * 2
        if hi > 4 * math.pi:
            raise CalibrationFailed(f"could not bracket alpha={target_alpha} for n={n}")
        a_hi = alpha_at(hi)
    theta, a = hi, a_hi
    for _ in range(200):
        if abs(a - target_alpha) <= tol * target_alpha:
            break
        theta = (lo + hi) / 2
        a = alpha_at(theta)
        if a < target_alpha:
            lo = theta
        else:
            hi = theta
    else:
        raise CalibrationFailed(f"bisection did not reach alpha={target_alpha}")
    logger.debug(f"haar channel n={n} theta={theta:.4g} alpha={a:.4g}")
    channel = QuantumChannel(n, kraus=kraus_at(theta), label="haar")
    return HaarCalibration(channel, float(theta), float(a))


def conditioned_haar_channel(n, target_alpha, seed, env_qubits=0, unit_index=0):
    return calibrate_haar_channel(n, target_alpha, seed, env_qubits, unit_index).channel


def gate_noise(g, e):
    """Schedule fragment applying ``e`` on the qubits of gate ``g``."""
    if e.n != len(g.qubits):
        raise DimensionMismatch(f"{e.n}-qubit channel for {g.kind} on {len(g.qubits)} qubits")
    return GateNoise(g, e)


def standard_schedule(c, channel):
    """T copies of the same fresh noise channel."""
    return [channel] * c.T
