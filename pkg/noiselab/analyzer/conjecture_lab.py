"""
Author: noiselab contributors
Date: 2026-09-21 11:37:09
LastEditTime: 2026-10-15 10:12:58
LastEditors: noiselab contributors
Description: Experiments probing error synchronization, correlated faults,
    entanglement-vs-correlation scans, noise rates and smoothing approximations
FilePath: /noiselab/noiselab/analyzer/conjecture_lab.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import math
import sys
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from loguru import logger
from scipy import linalg, optimize, stats
from tqdm import tqdm

from noiselab.analyzer.entanglement import (
    reduced_state,
    sep_distance_estimate,
    von_neumann_entropy,
)
from noiselab.analyzer.syndrome_stats import (
    CoarseDistribution,
    block_correlation,
    coarse_distribution,
    correlation_matrix,
    fault_probability,
    pauli_mass,
    synchronization_report,
    tail_decay_check,
    weight_profile,
)
from noiselab.configs import config as conf
from noiselab.configs.data_consts import COR2Q_FAMILIES
from noiselab.exceptions import (
    BadRange,
    CapExceeded,
    DimensionMismatch,
    NoConvergence,
    PreconditionViolated,
)
from noiselab.operators.channel_algebra import (
    DensityMatrix,
    UnitaryOp,
    channel_error_rate,
    compose,
    conjugate_by_unitary,
    correlated_depolarizing,
    depolarizing,
    identity_channel,
    superop_distance,
    trace_distance,
)
from noiselab.operators.pauli_core import is_clifford
from noiselab.simulator.circuit_sim import (
    NoiseSchedule,
    empty_circuit,
    ghz,
    overall_error_channel,
    random_clifford_circuit,
    segment_unitary,
    simulate_ideal,
    simulate_noisy,
)
from noiselab.simulator.noise_models import (
    calibrate_haar_channel,
    detrimental_channel,
    detrimental_transform,
    reverse_schedule,
    standard_schedule,
)
from noiselab.utils.utils import make_rng, ordered_map

ETA_HAT_FLAG = "eta_hat = min_i p_i"


def _progress(iterable, **kwargs):
    return tqdm(iterable, disable=not sys.stderr.isatty(), leave=False, **kwargs)


# ---------------------------------------------------------------------------
# random-unitary synchronization
# ---------------------------------------------------------------------------


@dataclass
class SyncExperimentReport:
    n: int
    target_alpha: float
    trials: int
    mean_weight_fraction: float
    mean_tv_to_binomial: float
    mean_profile: list
    alphas: list
    thetas: list
    degenerate: bool = False
    vanishing: bool = False

    def to_dict(self):
        return dict(self.__dict__)


def run_random_unitary_sync(n, target_alpha, trials, seed, env_qubits=0, threads=1):
    """Weight statistics of conditioned random-unitary noise.

    For every trial the non-identity profile f(s) / (1 - f(0)) is compared with
    Binomial(n, 3/4), the weight law of a uniformly random Pauli string.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n > conf.CAPS.haar_qubits:
        raise CapExceeded("n", n, conf.CAPS.haar_qubits)
    binom = stats.binom.pmf(np.arange(n + 1), n, 0.75)
    s = np.arange(n + 1)
    vanishing_tol = conf.TOLERANCES.vanishing_noise

    def trial(index):
        calibration = calibrate_haar_channel(n, target_alpha, seed, env_qubits, unit_index=index)
        wp = weight_profile(pauli_mass(calibration.channel))
        tilde = wp.normalized_nonidentity()
        return {
            "alpha": wp.alpha,
            "theta": calibration.theta,
            "profile": tilde,
            "fraction": float(s @ tilde) / n,
            "tv": 0.5 * float(np.abs(tilde - binom).sum()),
            "vanishing": 1 - wp.f[0] < vanishing_tol,
        }

    rows = ordered_map(trial, range(trials), threads)
    vanishing = any(r["vanishing"] for r in rows)
    if vanishing:
        logger.warning("vanishing-noise regime: 1 - f(0) below tolerance in some trial")
    if n == 1:
        logger.info("n=1: the non-identity profile sits on s=1, fraction is trivially 1")
    return SyncExperimentReport(
        n=n,
        target_alpha=target_alpha,
        trials=trials,
        mean_weight_fraction=float(np.mean([r["fraction"] for r in rows])),
        mean_tv_to_binomial=float(np.mean([r["tv"] for r in rows])),
        mean_profile=list(np.mean([r["profile"] for r in rows], axis=0)),
        alphas=[r["alpha"] for r in rows],
        thetas=[r["theta"] for r in rows],
        degenerate=n == 1,
        vanishing=vanishing,
    )


# ---------------------------------------------------------------------------
# correlated-fault propositions
# ---------------------------------------------------------------------------


@dataclass
class PropositionReport:
    hypotheses: bool
    conclusion: bool
    witness: dict = field(default_factory=dict)
    counterexample: dict = None
    flags: list = field(default_factory=list)

    def to_dict(self):
        return dict(self.__dict__)


def _fault_counts(cd):
    return cd.bits().sum(axis=1)


def _tail_above(cd, threshold, samples=None, seed=0):
    """P(sum x_i > threshold) and its standard error (0 when exact)."""
    counts = _fault_counts(cd)
    if samples is None:
        tail = float(cd.probs[counts > threshold].sum())
        if cd.sample_size is None:
            return tail, 0.0
        return tail, math.sqrt(max(tail * (1 - tail), 0.0) / cd.sample_size)
    rng = make_rng(seed, "tail-sample")
    draws = rng.choice(len(cd.probs), size=int(samples), p=cd.probs / cd.probs.sum())
    tail = float(np.mean(counts[draws] > threshold))
    return tail, math.sqrt(max(tail * (1 - tail), 1.0 / samples) / samples)


def verify_cor2q(cd, eta, s, samples=None, seed=0):
    """Check: all p_i >= eta and all pair correlations >= s (with eta < 1/20,
    s > 4 eta) imply P(sum x_i > s n / 2) > s eta / 4.

    The tail is exact on exact distributions; ``samples`` switches to a
    seeded Monte Carlo estimate with its standard error.
    """
    n = cd.n
    ps = np.array([fault_probability(cd, i) for i in range(n)])
    corr, _ = correlation_matrix(cd)
    iu = np.triu_indices(n, k=1)
    pair_values = corr[iu]
    parameters_ok = eta < 1 / 20 and s > 4 * eta
    marginals_ok = bool(np.all(ps >= eta))
    correlations_ok = bool(len(pair_values) > 0 and np.all(np.nan_to_num(pair_values, nan=-np.inf) >= s))
    hypotheses = parameters_ok and marginals_ok and correlations_ok
    tail, stderr = _tail_above(cd, s * n / 2, samples, seed)
    bound = s * eta / 4
    conclusion = tail > bound
    witness = {
        "min_p": float(ps.min()),
        "min_correlation": float(np.nanmin(pair_values)) if np.isfinite(pair_values).any() else None,
        "tail": tail,
        "tail_stderr": stderr,
        "bound": bound,
        "parameters_ok": parameters_ok,
    }
    counterexample = None
    if hypotheses and not conclusion:
        counterexample = {"n": n, "distribution": cd.as_dict()}
        logger.warning(f"counterexample found: tail {tail} <= {bound}")
    return PropositionReport(hypotheses, bool(conclusion), witness, counterexample)


def _sample_family(family, rng, eta):
    n = int(rng.integers(4, 13 if family == "sparse" else 11))
    if family == "product":
        return CoarseDistribution.product(rng.uniform(0.0, 0.3, n))
    if family == "synchronized":
        return CoarseDistribution.synchronized(n, rng.uniform(eta, 0.5))
    if family == "mixture":
        q = rng.uniform(0.0, 0.5)
        product = CoarseDistribution.product(rng.uniform(0.0, 0.15, n))
        return CoarseDistribution.mixture(
            [(q, CoarseDistribution.synchronized(n, 1.0)), (1 - q, product)]
        )
    k = int(rng.integers(2, 9))
    patterns = rng.integers(0, 1 << n, size=k)
    return CoarseDistribution.from_patterns(n, patterns, rng.dirichlet(np.ones(k)))


@dataclass
class SearchReport:
    family: str
    samples: int
    draws: int
    satisfying: int
    passed: int
    counterexamples: list = field(default_factory=list)

    def to_dict(self):
        return dict(self.__dict__)


def search_cor2q(family, samples, seed, eta=0.04, s=0.2, max_draws=None):
    """Falsification search: draw distributions of one family until ``samples``
    of them satisfy the hypotheses, and check the conclusion on each.

    Raises NoConvergence when ``max_draws`` (default 50 * samples) draws do
    not produce enough hypothesis-satisfying distributions.
    """
    if family not in COR2Q_FAMILIES:
        raise ValueError(f"family must be one of {COR2Q_FAMILIES}, got {family!r}")
    samples = int(samples)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    max_draws = 50 * samples if max_draws is None else int(max_draws)
    draws = satisfying = passed = 0
    counterexamples = []
    with _progress(None, total=samples, desc=f"cor2q/{family}") as bar:
        while satisfying < samples:
            if draws >= max_draws:
                raise NoConvergence(
                    f"cor2q search {family}: only {satisfying}/{samples} distributions "
                    f"satisfy the hypotheses after {draws} draws"
                )
            index = draws
            draws += 1
            cd = _sample_family(family, make_rng(seed, f"cor2q-{family}", index), eta)
            report = verify_cor2q(cd, eta, s)
            if not report.hypotheses:
                continue
            satisfying += 1
            bar.update(1)
            if report.conclusion:
                passed += 1
            else:
                counterexamples.append({"trial": index, **report.counterexample})
    logger.info(
        f"cor2q search {family}: {satisfying} satisfying in {draws} draws, "
        f"{len(counterexamples)} counterexamples"
    )
    return SearchReport(family, samples, draws, satisfying, passed, counterexamples)


def verify_corpart(cd, partitions, s, seed):
    """Random balanced partitions: E[cor_{X,Y}] >= s should force
    P(sum x_i > s n / 2) > s eta_hat / 4 with eta_hat = min_i p_i.

    Degenerate partitions (a constant block indicator) count as correlation 0.
    """
    if partitions < 1:
        raise ValueError("partitions must be >= 1")
    n = cd.n
    if n < 2:
        raise ValueError("need at least two qubits to partition")
    values = []
    for k in range(partitions):
        order = make_rng(seed, "corpart", k).permutation(n)
        X, Y = sorted(order[: n // 2].tolist()), sorted(order[n // 2:].tolist())
        value = block_correlation(cd, X, Y).value
        values.append(0.0 if math.isnan(value) else value)
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(partitions)) if partitions > 1 else 0.0
    eta_hat = float(min(fault_probability(cd, i) for i in range(n)))
    tail, _ = _tail_above(cd, s * n / 2)
    bound = s * eta_hat / 4
    hypotheses = mean >= s
    conclusion = tail > bound
    counterexample = None
    if hypotheses and not conclusion:
        counterexample = {"n": n, "distribution": cd.as_dict()}
    witness = {
        "mean_correlation": mean,
        "stderr": stderr,
        "eta_hat": eta_hat,
        "tail": tail,
        "bound": bound,
    }
    return PropositionReport(hypotheses, bool(conclusion), witness, counterexample, [ETA_HAT_FLAG])


# ---------------------------------------------------------------------------
# entanglement versus correlation scans
# ---------------------------------------------------------------------------


def _default_state(c, rho0):
    return DensityMatrix.basis_state(c.n, 0) if rho0 is None else rho0


def _fresh_channel(c, base, kernel, t):
    if kernel is None:
        return base[t - 1]
    return detrimental_channel(c, base, kernel, t)


def _schedule_channels(c, base, kernel):
    if kernel is None:
        return list(base)
    return detrimental_transform(c, base, kernel).derived


def overall_channel(c, channels, rho0=None):
    """Overall error of a run with per-cycle storage noise ``channels``.

    Clifford circuits with Pauli noise compose the conjugated mixtures
    U_{t,T} E_t U_{t,T}^dagger exactly; otherwise the noisy superoperator is
    simulated and the ideal evolution divided out.
    """
    if not channels:
        return identity_channel(c.n)
    if all(e.is_pauli for e in channels) and is_clifford(c):
        total = None
        for t, e in enumerate(channels, start=1):
            moved = conjugate_by_unitary(e, segment_unitary(c, t, c.T)) if t < c.T else e
            total = moved if total is None else compose(moved, total)
        return total
    schedule = NoiseSchedule(c.n, list(channels), [[] for _ in channels])
    return overall_error_channel(simulate_noisy(c, _default_state(c, rho0), schedule), c)


def _designated_channel(c, base, kernel, channel, t, rho0):
    if channel == "fresh":
        return _fresh_channel(c, base, kernel, c.T if t is None else t)
    if channel == "overall":
        return overall_channel(c, _schedule_channels(c, base, kernel), rho0)
    raise ValueError(f"channel must be 'fresh' or 'overall', got {channel!r}")


@dataclass
class ConjAReport:
    channel: str
    pair_rows: list = field(default_factory=list)
    block_rows: list = field(default_factory=list)
    excluded: list = field(default_factory=list)
    entanglement_measure: str = "entropy"

    def to_dict(self):
        return dict(self.__dict__)

    def to_frames(self):
        return pd.DataFrame(self.pair_rows), pd.DataFrame(self.block_rows)


def _ratio(cor, r_a, r_b, ent):
    scale = min(r_a, r_b) ** 2 * ent
    return cor / scale if scale > 0 else float("nan")


def conjecture_a_scan(c, base, kernel=None, rho0=None, channel="fresh", t=None,
                      pairs=None, blocks=None, mixed_fallback=False, seed=0):
    """Pair (and block) table of entanglement of the intended state versus
    fault correlation of the designated noise channel.

    Rows need S(rho_i) > 0 and nondegenerate fault marginals. A mixed intended
    state raises PreconditionViolated unless ``mixed_fallback`` is set, in
    which case the separable-distance upper bound replaces the entropy.
    """
    rho0 = _default_state(c, rho0)
    rho = simulate_ideal(c, rho0).final
    pure = rho.is_pure()
    if not pure and not mixed_fallback:
        raise PreconditionViolated("intended final state is mixed; use mixed_fallback")
    e = _designated_channel(c, base, kernel, channel, t, rho0)
    cd = coarse_distribution(pauli_mass(e))
    corr, _ = correlation_matrix(cd)
    r = [fault_probability(cd, i) for i in range(c.n)]
    tiny = 1e-9
    report = ConjAReport(channel, entanglement_measure="entropy" if pure else "sep_distance")

    def entanglement(X, Y):
        if pure:
            return von_neumann_entropy(reduced_state(rho, X))
        return sep_distance_estimate(rho, list(X), list(Y), seed=seed).upper

    if pairs is None:
        pairs = [(i, j) for i in range(c.n) for j in range(i + 1, c.n)]
    for i, j in pairs:
        ent = entanglement([i], [j])
        cor = corr[i, j]
        if ent <= tiny or math.isnan(cor):
            report.excluded.append({"i": i, "j": j, "entanglement": ent, "degenerate": math.isnan(cor)})
            continue
        report.pair_rows.append({
            "i": i, "j": j, "entanglement": ent, "r_i": r[i], "r_j": r[j],
            "cor": float(cor), "ratio": _ratio(cor, r[i], r[j], ent),
        })
    for X, Y in blocks or []:
        X, Y = sorted(X), sorted(Y)
        ent = entanglement(X, Y)
        block = block_correlation(cd, X, Y)
        if ent <= tiny or block.degenerate:
            report.excluded.append({"X": X, "Y": Y, "entanglement": ent, "degenerate": block.degenerate})
            continue
        r_x = float(np.mean([r[q] for q in X]))
        r_y = float(np.mean([r[q] for q in Y]))
        scaled = ent / min(len(X), len(Y))
        report.block_rows.append({
            "X": X, "Y": Y, "entanglement": ent, "r_X": r_x, "r_Y": r_y,
            "cor": block.value, "mean_pairwise": block.mean_pairwise,
            "ratio": _ratio(block.value, r_x, r_y, scaled),
        })
    return report


def conjecture_b_metric(c, base, kernel=None, rho0=None, delta=0.1, partitions=8, seed=0, margin=0.1):
    """Partition entanglement of the intended state next to the
    synchronization of the overall noise and the tail of the fresh noise."""
    rho0 = _default_state(c, rho0)
    rho = simulate_ideal(c, rho0).final
    entropies = []
    for k in range(partitions):
        order = make_rng(seed, "conj-b-partition", k).permutation(c.n)
        entropies.append(von_neumann_entropy(reduced_state(rho, order[: max(1, c.n // 2)].tolist())))
    channels = _schedule_channels(c, base, kernel)
    overall = weight_profile(pauli_mass(overall_channel(c, channels, rho0)))
    fresh = weight_profile(pauli_mass(channels[-1]))
    return {
        "partition_entanglement": float(np.mean(entropies)),
        "overall_alpha": overall.alpha,
        "overall_sync": synchronization_report(overall, delta).to_dict(),
        "overall_decay": tail_decay_check(overall, margin).to_dict(),
        "fresh_alpha": fresh.alpha,
        "fresh_decay": tail_decay_check(fresh, margin).to_dict(),
    }


# ---------------------------------------------------------------------------
# noise rates
# ---------------------------------------------------------------------------


def rate_comparison(n_values, p, strategies=("basis-states",), samples=32, seed=0):
    """Independent versus correlated depolarizing noise of equal alpha."""
    if isinstance(n_values, int):
        n_values = [n_values]
    rows = []
    for n in n_values:
        if n > conf.CAPS.rate_qubits:
            raise CapExceeded("n (rate comparison)", n, conf.CAPS.rate_qubits)
        independent = depolarizing(n, p)
        correlated = correlated_depolarizing(n, p)
        a_ind = weight_profile(pauli_mass(independent)).alpha
        a_cor = weight_profile(pauli_mass(correlated)).alpha
        if abs(a_ind - a_cor) > 1e-10:
            raise PreconditionViolated(f"alpha differs: {a_ind} vs {a_cor}")
        for strategy in strategies:
            r_ind = channel_error_rate(independent, strategy, samples, seed)
            r_cor = channel_error_rate(correlated, strategy, samples, seed)
            rows.append({
                "n": n, "p": p, "strategy": strategy, "alpha": a_ind,
                "rate_independent": r_ind, "rate_correlated": r_cor,
                "ratio": r_ind / r_cor if r_cor > 0 else float("nan"),
            })
    return {"rows": rows}


def rate_scaling_experiment(family, kernel, p, n_range):
    """alpha of the last detrimental channel E'_T across circuit sizes."""
    rows = []
    for n in n_range:
        if family == "ghz":
            c = ghz(n)
        elif family == "empty":
            c = empty_circuit(n, n)
        else:
            raise ValueError(f"unknown circuit family {family!r}")
        base = standard_schedule(c, depolarizing(n, p))
        derived = detrimental_transform(c, base, kernel).derived
        rows.append({
            "n": n,
            "alpha": weight_profile(pauli_mass(derived[-1])).alpha,
            "base_alpha": weight_profile(pauli_mass(base[-1])).alpha,
        })
    ns = [r["n"] for r in rows]
    alphas = [r["alpha"] for r in rows]
    slope = float(np.polyfit(ns, alphas, 1)[0]) if len(rows) >= 2 else float("nan")
    return {"family": family, "rows": rows, "slope": slope}


# ---------------------------------------------------------------------------
# noncommutativity, D-noise, invariance, smoothing
# ---------------------------------------------------------------------------


def noncommutativity(c, t):
    """mu(t) = 2^(-n/2) ||U_{t,T} U_{0,t} - U_{0,t} U_{t,T}||_F (0 at t = T)."""
    if not 1 <= t <= c.T:
        raise BadRange(f"t={t} not in 1..{c.T}")
    if t == c.T:
        return 0.0
    future = segment_unitary(c, t, c.T).matrix
    past = segment_unitary(c, 0, t).matrix
    return float(np.linalg.norm(future @ past - past @ future) / 2 ** (c.n / 2))


def noncommutativity_profile(c, base=None):
    rows = []
    for t in range(1, c.T + 1):
        row = {"t": t, "mu": noncommutativity(c, t)}
        if base is not None:
            row["alpha"] = weight_profile(pauli_mass(base[t - 1])).alpha
        rows.append(row)
    return rows


def _commutant_blocks(rho):
    vals, vecs = np.linalg.eigh(rho.matrix)
    tol = conf.TOLERANCES.eigen_cluster
    blocks, start = [], 0
    for k in range(1, len(vals) + 1):
        if k == len(vals) or vals[k] - vals[k - 1] > tol:
            blocks.append(vecs[:, start:k])
            start = k
    return blocks


def _hermitian_from(params, blocks, d):
    h = np.zeros((d, d), dtype=complex)
    pos = 0
    for v in blocks:
        m = v.shape[1]
        local = np.diag(params[pos:pos + m]).astype(complex)
        pos += m
        for a in range(m):
            for b in range(a + 1, m):
                local[a, b] = params[pos] + 1j * params[pos + 1]
                local[b, a] = np.conj(local[a, b])
                pos += 2
        h += v @ local @ v.conj().T
    h -= np.trace(h) / d * np.eye(d)
    norm = np.linalg.norm(h)
    return h / norm if norm > 1e-12 else None


@dataclass
class DNoiseResult:
    value: float
    exhausted: bool
    restarts: int

    def to_dict(self):
        return dict(self.__dict__)


def dnoise_score(e, rho, budget=100, seed=0, restarts=4):
    """min ||S_V S_E - S_E S_V||_F over V = exp(iH), [H, rho] = 0,
    H traceless with ||H||_F = 1. Zero means E commutes with a nontrivial
    unitary stabilizing rho."""
    if e.n != rho.n:
        raise DimensionMismatch(f"channel on {e.n} qubits, state on {rho.n}")
    if e.n > conf.CAPS.dnoise_qubits:
        raise CapExceeded("n (D-noise score)", e.n, conf.CAPS.dnoise_qubits)
    d = rho.dim
    blocks = _commutant_blocks(rho)
    size = sum(v.shape[1] ** 2 for v in blocks)
    s_e = e.superop

    def residual(params):
        h = _hermitian_from(params, blocks, d)
        if h is None:
            return 1e3
        v = linalg.expm(1j * h)
        s_v = np.kron(v, v.conj())
        return float(np.linalg.norm(s_v @ s_e - s_e @ s_v))

    best, exhausted = math.inf, False
    for k in range(restarts):
        x0 = make_rng(seed, "dnoise", k).standard_normal(size)
        res = optimize.minimize(residual, x0, method="L-BFGS-B", options={"maxiter": budget})
        exhausted = exhausted or res.nit >= budget
        best = min(best, float(res.fun))
    return DNoiseResult(best, exhausted, restarts)


def invariance_check(env, rho0, U, W=None, samples=4, seed=0):
    """generator(W rho, W U) against W generator(rho, U) W^dagger."""
    n = env.base.n
    if rho0.n != n or U.n != n:
        raise DimensionMismatch("state, unitary and envelope must share n")
    if W is not None:
        if W.n != n:
            raise DimensionMismatch(f"W on {W.n} qubits, envelope on {n}")
        ws = [W]
    else:
        ws = []
        for k in range(samples):
            circuit = random_clifford_circuit(n, 4, seed, unit_index=k)
            ws.append(segment_unitary(circuit, 0, circuit.T))
    u = U.matrix
    rho = DensityMatrix(u @ rho0.matrix @ u.conj().T, validate=False)
    distances = []
    for w in ws:
        wm = w.matrix
        moved = DensityMatrix(wm @ rho.matrix @ wm.conj().T, validate=False)
        lhs = env.generator(moved, UnitaryOp(wm @ u, validate=False))
        rhs = conjugate_by_unitary(env.generator(rho, U), w)
        distances.append(superop_distance(lhs, rhs))
    worst = max(distances)
    return {
        "distances": distances,
        "max_distance": worst,
        "passed": worst <= conf.TOLERANCES.invariance,
    }


def smoothing_comparison(c, base, kernel, rho0=None):
    """Trace distances between runs under E' (detrimental) and E'' (reverse
    smoothing) schedules."""
    rho0 = _default_state(c, rho0)
    forward = detrimental_transform(c, base, kernel).derived
    backward = reverse_schedule(base, kernel)
    empty = [[] for _ in range(c.T)]
    a = simulate_noisy(c, rho0, NoiseSchedule(c.n, forward, empty))
    b = simulate_noisy(c, rho0, NoiseSchedule(c.n, backward, empty))
    per_cycle = [trace_distance(x, y) for x, y in zip(a.states, b.states)]
    return {"per_cycle": per_cycle, "final": per_cycle[-1]}
