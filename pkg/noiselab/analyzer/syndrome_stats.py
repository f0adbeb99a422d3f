"""
Author: noiselab contributors
Date: 2026-09-10 14:18:36
LastEditTime: 2026-10-14 09:30:12
LastEditors: noiselab contributors
Description: Pauli-mass syndrome distributions, weight profiles, fault correlations
    and synchronization / decay / independence checkers
FilePath: /noiselab/noiselab/analyzer/syndrome_stats.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import pandas as pd
from loguru import logger

from noiselab.configs import config as conf
from noiselab.exceptions import (
    BadIndex,
    CapExceeded,
    DegenerateMarginal,
    EmptySet,
)
from noiselab.operators.pauli_core import (
    PauliString,
    coarse_codes,
    dense_weights,
    index_codes,
    pauli_coefficients,
)
from noiselab.utils.utils import make_rng

_KRAUS_CHUNK = 64


@dataclass(frozen=True)
class SyndromeDistribution:
    """Mass over Pauli strings, indexed by dense Pauli index.

    ``representation`` is "dense" (indices cover all 4^n strings), "sparse" or
    "sampled" (masses are empirical frequencies of ``sample_size`` draws).
    """

    n: int
    indices: np.ndarray
    masses: np.ndarray
    representation: str = "dense"
    sample_size: int = None

    @property
    def total_mass(self):
        return float(self.masses.sum())

    def mass(self, pauli):
        if isinstance(pauli, str):
            pauli = PauliString.from_label(pauli)
        hit = np.flatnonzero(self.indices == pauli.index())
        return float(self.masses[hit].sum())

    def weights(self):
        if self.representation == "dense":
            return dense_weights(self.n)
        return (index_codes(self.indices, self.n) != 0).sum(axis=1)

    def as_dict(self, threshold=0.0):
        keep = np.flatnonzero(self.masses > threshold)
        return {
            PauliString.from_index(int(self.indices[i]), self.n).label: float(self.masses[i])
            for i in keep
        }


@dataclass(frozen=True)
class CoarseDistribution:
    """Distribution of 0/1 fault words; patterns are packed ints (qubit 0 = MSB)."""

    n: int
    patterns: np.ndarray
    probs: np.ndarray
    sample_size: int = None

    @classmethod
    def from_dict(cls, table, sample_size=None):
        words = list(table)
        n = len(words[0])
        patterns = np.array([int(w, 2) for w in words], dtype=np.int64)
        probs = np.array([float(table[w]) for w in words])
        return cls.from_patterns(n, patterns, probs, sample_size)

    @classmethod
    def from_patterns(cls, n, patterns, probs, sample_size=None):
        uniq, inverse = np.unique(patterns, return_inverse=True)
        merged = np.bincount(inverse, weights=probs, minlength=len(uniq))
        return cls(n, uniq.astype(np.int64), merged, sample_size)

    @classmethod
    def product(cls, ps):
        """Independent Bernoulli faults with marginals ``ps`` (full enumeration)."""
        n = len(ps)
        if n > conf.CAPS.enumeration_qubits:
            raise CapExceeded("n (enumeration)", n, conf.CAPS.enumeration_qubits)
        probs = np.ones(1)
        for p in ps:
            probs = np.kron(probs, [1 - p, p])
        return cls(n, np.arange(1 << n, dtype=np.int64), probs)

    @classmethod
    def synchronized(cls, n, q):
        """All ones with probability q, all zeros otherwise."""
        return cls.from_patterns(n, np.array([0, (1 << n) - 1]), np.array([1 - q, q]))

    @classmethod
    def mixture(cls, components):
        """Convex combination from ``[(weight, CoarseDistribution), ...]``."""
        n = components[0][1].n
        patterns = np.concatenate([cd.patterns for _, cd in components])
        probs = np.concatenate([w * cd.probs for w, cd in components])
        return cls.from_patterns(n, patterns, probs)

    def bits(self):
        shifts = self.n - 1 - np.arange(self.n, dtype=np.int64)
        return ((self.patterns[:, None] >> shifts[None, :]) & 1).astype(float)

    def as_dict(self):
        return {format(int(p), f"0{self.n}b"): float(q) for p, q in zip(self.patterns, self.probs)}

    @property
    def standard_error(self):
        """1/sqrt(m) band of a sampled distribution, None when exact."""
        return None if self.sample_size is None else 1 / math.sqrt(self.sample_size)


@dataclass(frozen=True)
class WeightProfile:
    n: int
    f: np.ndarray
    alpha: float

    def tails(self):
        """f(>= s) for s = 0..n."""
        return np.cumsum(self.f[::-1])[::-1]

    def normalized_nonidentity(self):
        """f(s) / (1 - f(0)) for s >= 1 (f~(0) = 0)."""
        rest = 1 - self.f[0]
        out = np.zeros_like(self.f)
        if rest > 0:
            out[1:] = self.f[1:] / rest
        return out

    def to_frame(self):
        return pd.DataFrame({"s": np.arange(self.n + 1), "f": self.f})


class Correlation(NamedTuple):
    value: float
    covariance: float
    degenerate: bool
    mean_pairwise: float = float("nan")


def _dense_from_kraus(e):
    n = e.n
    if n > conf.CAPS.pauli_dense_qubits:
        raise CapExceeded("n (dense Pauli mass)", n, conf.CAPS.pauli_dense_qubits)
    kraus = np.asarray(e.kraus)
    masses = np.zeros(1 << (2 * n))
    for start in range(0, len(kraus), _KRAUS_CHUNK):
        coeffs = pauli_coefficients(kraus[start:start + _KRAUS_CHUNK])
        masses += (np.abs(coeffs) ** 2).sum(axis=0)
    return masses / (1 << (2 * n))


def pauli_mass(e):
    """Syndrome distribution mass(I) = sum_k |Tr(P_I A_k)|^2 / 4^n."""
    n = e.n
    mixture = e.pauli_mixture
    if isinstance(mixture, dict):
        keys = np.array(sorted(mixture), dtype=np.int64)
        return SyndromeDistribution(
            n, keys, np.array([mixture[int(k)] for k in keys]), "sparse"
        )
    if mixture is not None:
        masses = np.asarray(mixture, dtype=float)
    else:
        masses = _dense_from_kraus(e)
    return SyndromeDistribution(n, np.arange(1 << (2 * n), dtype=np.int64), masses, "dense")


def weight_profile(d):
    f = np.bincount(d.weights(), weights=d.masses, minlength=d.n + 1)
    alpha = float(np.dot(np.arange(d.n + 1), f))
    return WeightProfile(d.n, f, alpha)


def channel_alpha(e):
    """Expected number of qubit errors of a channel."""
    return weight_profile(pauli_mass(e)).alpha


def _check_qubit(n, k):
    if not 0 <= int(k) < n:
        raise BadIndex(f"qubit {k} out of range for n={n}")


def qubit_error_amount(d, k):
    _check_qubit(d.n, k)
    codes = (d.indices >> (2 * (d.n - 1 - int(k)))) & 3
    return float(d.masses[codes != 0].sum())


def coarse_distribution(d):
    return CoarseDistribution.from_patterns(
        d.n, coarse_codes(d.indices, d.n), d.masses, d.sample_size
    )


def fault_probability(cd, i):
    _check_qubit(cd.n, i)
    hit = (cd.patterns >> (cd.n - 1 - int(i))) & 1
    return float(cd.probs[hit == 1].sum())


def block_fault_rate(cd, X):
    """r_X: mean fault probability over the qubits of X."""
    X = list(X)
    if not X:
        raise EmptySet("empty qubit block")
    return float(np.mean([fault_probability(cd, i) for i in X]))


def _pearson(a, b, w):
    pa, pb = float(w @ a), float(w @ b)
    cov = float(w @ (a * b)) - pa * pb
    va, vb = pa * (1 - pa), pb * (1 - pb)
    tol = conf.TOLERANCES.degenerate
    if va <= tol or vb <= tol:
        return float("nan"), cov, True
    return cov / math.sqrt(va * vb), cov, False


def correlation_matrix(cd):
    """Pearson correlations and covariances of all fault-indicator pairs.

    Degenerate pairs (a marginal equal to 0 or 1) and the diagonal are NaN.
    """
    bits = cd.bits()
    w = cd.probs
    p = bits.T @ w
    joint = bits.T @ (bits * w[:, None])
    cov = joint - np.outer(p, p)
    var = p * (1 - p)
    ok = var > conf.TOLERANCES.degenerate
    with np.errstate(divide="ignore", invalid="ignore"):
        corr = cov / np.sqrt(np.outer(var, var))
    corr[~np.outer(ok, ok)] = np.nan
    np.fill_diagonal(corr, np.nan)
    return corr, cov


def correlation_frame(cd):
    corr, _ = correlation_matrix(cd)
    return pd.DataFrame(corr, index=range(cd.n), columns=range(cd.n))


def _check_pair(cd, i, j):
    if i == j:
        raise ValueError("pair correlation needs two different qubits")
    _check_qubit(cd.n, i)
    _check_qubit(cd.n, j)


def pair_correlation(cd, i, j, strict=False):
    """Pearson correlation of the fault indicators of qubits i and j.

    With a marginal at 0 or 1 the value is NaN and only the covariance is
    meaningful; ``strict=True`` raises DegenerateMarginal instead.
    """
    _check_pair(cd, i, j)
    bits = cd.bits()
    value, cov, degenerate = _pearson(bits[:, i], bits[:, j], cd.probs)
    if degenerate:
        if strict:
            raise DegenerateMarginal(f"qubit pair ({i}, {j}) has a degenerate marginal")
        logger.warning(f"degenerate marginal for pair ({i}, {j}), covariance only")
    return Correlation(value, cov, degenerate)


def block_correlation(cd, X, Y, strict=False):
    """Correlation of the "any fault in X" and "any fault in Y" indicators.

    The mean pairwise correlation over X x Y is reported alongside.
    """
    X, Y = sorted(set(X)), sorted(set(Y))
    if not X or not Y:
        raise EmptySet("blocks must be nonempty")
    if set(X) & set(Y):
        raise ValueError("blocks must be disjoint")
    for q in X + Y:
        _check_qubit(cd.n, q)
    bits = cd.bits()
    a = bits[:, X].max(axis=1)
    b = bits[:, Y].max(axis=1)
    value, cov, degenerate = _pearson(a, b, cd.probs)
    if degenerate and strict:
        raise DegenerateMarginal(f"blocks {X} / {Y} have a degenerate marginal")
    corr, _ = correlation_matrix(cd)
    block = corr[np.ix_(X, Y)]
    mean_pairwise = float(np.nanmean(block)) if np.isfinite(block).any() else float("nan")
    return Correlation(value, cov, degenerate, mean_pairwise)


@dataclass
class SyncClassification:
    alpha: float
    tails: np.ndarray
    synchronized: bool
    very_strong: bool
    threshold_weight: int
    very_strong_weight: int
    witness_weight: int = None

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "tails": list(self.tails),
            "synchronized": self.synchronized,
            "very_strong": self.very_strong,
            "threshold_weight": self.threshold_weight,
            "very_strong_weight": self.very_strong_weight,
            "witness_weight": self.witness_weight,
        }


def synchronization_report(wp, delta):
    """Classify error synchronization of a weight profile.

    Weight s carries a substantial share when f(>=s) * s >= c * alpha
    (c = tolerances.substantial). Synchronized: some s >= max(10 alpha,
    n/2) carries a substantial share. Very strong: s* = ceil((3/4 - delta) n)
    carries one.
    """
    if not 0 < delta < 0.75:
        raise ValueError(f"delta={delta} not in (0, 3/4)")
    tol = conf.TOLERANCES
    n, alpha = wp.n, wp.alpha
    tails = wp.tails()
    start = max(
        math.ceil(tol.sync_factor * alpha - 1e-9),
        math.ceil(tol.sync_min_fraction * n - 1e-9),
        1,
    )
    s_star = max(math.ceil((0.75 - delta) * n - 1e-9), 1)
    if alpha <= 0:
        return SyncClassification(alpha, tails, False, False, start, s_star)
    bar = tol.substantial * alpha
    witness = next((s for s in range(start, n + 1) if tails[s] * s >= bar), None)
    very_strong = bool(tails[s_star] * s_star >= bar)
    return SyncClassification(
        alpha, tails, witness is not None, very_strong, start, s_star, witness
    )


@dataclass
class DecayReport:
    passed: bool
    trivial: bool
    start_weight: int
    envelope_slope: float
    fitted_slope: float
    violations: list = field(default_factory=list)

    def to_dict(self):
        return dict(self.__dict__)


def _kl_bernoulli(u, a):
    out = 0.0
    if u > 0:
        out += u * math.log(u / a)
    if u < 1:
        out += (1 - u) * math.log((1 - u) / (1 - a))
    return out


def tail_decay_check(wp, margin):
    """Exponential-decay check of the tail f(>= s) above alpha + margin * n.

    The envelope is the line log f(>=s) <= b (s - alpha) with
    b = -KL(a + margin || a) / margin and a = alpha / n, which every product
    of independent faults with the same alpha satisfies (Chernoff bound).
    Also reports the least-squares slope of log f(>=s) over the region.
    """
    if margin <= 0:
        raise ValueError("margin must be positive")
    n, alpha = wp.n, wp.alpha
    tails = wp.tails()
    start = max(math.ceil(alpha + margin * n - 1e-12), 1)
    region = [s for s in range(start, n + 1) if tails[s] > 1e-300]
    a = alpha / n
    if not region or a <= 0 or a >= 1:
        return DecayReport(True, True, start, float("nan"), float("nan"))
    u = min(a + margin, 1.0)
    slope = -_kl_bernoulli(u, a) / margin
    violations = []
    for s in region:
        bound = math.exp(slope * (s - alpha))
        if tails[s] > bound * (1 + 1e-9) + 1e-15:
            violations.append({"s": s, "tail": float(tails[s]), "bound": bound})
    fitted = float("nan")
    if len(region) >= 2:
        fitted = float(np.polyfit(region, np.log(tails[region]), 1)[0])
    return DecayReport(not violations, False, start, slope, fitted, violations)


@dataclass
class IndependenceReport:
    fraction: float
    passed: bool
    pairs: int
    independent_pairs: int

    def to_dict(self):
        return dict(self.__dict__)


def pairwise_independence_check(cd, tau):
    """Share of qubit pairs with |correlation| <= tau; passes iff >= 1 - tau.

    Pairs with a constant fault indicator count as independent.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    corr, _ = correlation_matrix(cd)
    iu = np.triu_indices(cd.n, k=1)
    values = corr[iu]
    pairs = len(values)
    if pairs == 0:
        return IndependenceReport(1.0, True, 0, 0)
    independent = int(np.sum(~(np.abs(values) > tau)))
    fraction = independent / pairs
    return IndependenceReport(fraction, fraction >= 1 - tau, pairs, independent)


def sample_syndromes(d, m, seed):
    """m i.i.d. coarse fault words drawn from the syndrome distribution."""
    if int(m) < 1:
        raise ValueError(f"sample count must be positive, got {m}")
    rng = make_rng(seed, "syndrome-sample")
    probs = np.clip(d.masses, 0.0, None)
    probs = probs / probs.sum()
    draws = rng.choice(len(probs), size=int(m), p=probs)
    codes = coarse_codes(d.indices[draws], d.n)
    return CoarseDistribution.from_patterns(d.n, codes, np.full(len(codes), 1.0 / m), int(m))
