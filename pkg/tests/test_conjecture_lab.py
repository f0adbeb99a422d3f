"""
Author: noiselab contributors
Date: 2026-09-24 17:46:02
LastEditTime: 2026-10-15 14:27:36
LastEditors: noiselab contributors
Description: Test for synchronization experiments, correlated-fault propositions,
    correlation scans, noise rates, noncommutativity and smoothing comparisons
FilePath: /noiselab/tests/test_conjecture_lab.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import itertools
import math

import numpy as np
import pytest
from scipy import stats

from noiselab.analyzer import conjecture_lab
from noiselab.analyzer.conjecture_lab import (
    ETA_HAT_FLAG,
    PropositionReport,
    conjecture_a_scan,
    conjecture_b_metric,
    dnoise_score,
    invariance_check,
    noncommutativity,
    noncommutativity_profile,
    overall_channel,
    rate_comparison,
    rate_scaling_experiment,
    run_random_unitary_sync,
    search_cor2q,
    smoothing_comparison,
    verify_cor2q,
    verify_corpart,
)
from noiselab.analyzer.syndrome_stats import CoarseDistribution
from noiselab.exceptions import BadRange, DimensionMismatch, NoConvergence, PreconditionViolated
from noiselab.operators.channel_algebra import (
    DensityMatrix,
    UnitaryOp,
    depolarizing,
    dephasing,
    identity_channel,
    pauli_unitary_channel,
    superop_distance,
)
from noiselab.simulator.circuit_sim import (
    Circuit,
    Gate,
    NoiseSchedule,
    bell,
    ghz,
    overall_error_channel,
    product_rx,
    segment_unitary,
    simulate_noisy,
)
from noiselab.simulator.noise_models import (
    KernelSpec,
    memory_example_envelope,
    standard_schedule,
)


@pytest.mark.slow
def test_random_unitary_weight_fraction():
    report = run_random_unitary_sync(6, 0.3, 20, seed=1)
    assert 0.70 <= report.mean_weight_fraction <= 0.80
    assert report.mean_tv_to_binomial <= 0.05
    assert all(abs(a - 0.3) <= 0.02 * 0.3 for a in report.alphas)
    assert not report.degenerate


def test_random_unitary_single_qubit_is_degenerate():
    report = run_random_unitary_sync(1, 0.1, 2, seed=3)
    assert report.degenerate
    assert report.mean_weight_fraction == pytest.approx(1.0)
    assert report.mean_profile[0] == 0


def test_random_unitary_is_thread_independent():
    one = run_random_unitary_sync(2, 0.1, 3, seed=9, threads=1)
    many = run_random_unitary_sync(2, 0.1, 3, seed=9, threads=3)
    assert one.to_dict() == many.to_dict()


def test_cor2q_synchronized_two_point():
    report = verify_cor2q(CoarseDistribution.synchronized(10, 0.05), eta=0.04, s=0.2)
    assert report.hypotheses
    assert report.conclusion
    assert report.witness["tail"] == pytest.approx(0.05)
    assert report.witness["bound"] == pytest.approx(0.002)
    assert report.counterexample is None


def test_cor2q_product_fails_hypotheses():
    report = verify_cor2q(CoarseDistribution.product([0.05] * 10), eta=0.04, s=0.2)
    assert not report.hypotheses


def test_cor2q_mixture_tail_matches_enumeration():
    n, q = 10, 0.05
    cd = CoarseDistribution.mixture(
        [(0.9, CoarseDistribution.product([q] * n)), (0.1, CoarseDistribution.synchronized(n, 1.0))]
    )
    report = verify_cor2q(cd, eta=0.04, s=0.2)
    expected = 0.1 + 0.9 * stats.binom.sf(1, n, q)
    assert report.witness["tail"] == pytest.approx(expected)
    assert report.conclusion == (expected > 0.002)


def test_cor2q_sampled_tail_has_error_band():
    cd = CoarseDistribution.synchronized(10, 0.05)
    report = verify_cor2q(cd, eta=0.04, s=0.2, samples=20_000, seed=2)
    assert abs(report.witness["tail"] - 0.05) <= 4 * report.witness["tail_stderr"]


def test_search_cor2q_families():
    # independent faults never reach the correlation hypothesis
    with pytest.raises(NoConvergence):
        search_cor2q("product", 5, seed=1, max_draws=40)
    sync = search_cor2q("synchronized", 20, seed=1)
    assert sync.satisfying == 20
    assert sync.draws == 20
    assert sync.passed == 20
    assert sync.counterexamples == []
    with pytest.raises(ValueError):
        search_cor2q("gaussian", 1, seed=1)


def test_search_cor2q_counts_satisfying_draws(monkeypatch):
    calls = itertools.count()

    def every_other(cd, eta, s):
        return PropositionReport(next(calls) % 2 == 0, True, {})

    monkeypatch.setattr(conjecture_lab, "verify_cor2q", every_other)
    report = search_cor2q("mixture", 10, seed=1)
    assert report.satisfying == report.passed == 10
    assert report.draws == 19
    with pytest.raises(NoConvergence):
        search_cor2q("mixture", 10, seed=1, max_draws=15)


def test_verify_corpart():
    sync = verify_corpart(CoarseDistribution.synchronized(6, 0.3), partitions=5, s=0.2, seed=4)
    assert sync.witness["mean_correlation"] == pytest.approx(1.0)
    assert sync.witness["tail"] == pytest.approx(0.3)
    assert sync.hypotheses and sync.conclusion
    assert ETA_HAT_FLAG in sync.flags
    product = verify_corpart(CoarseDistribution.product([0.2] * 6), partitions=5, s=0.2, seed=4)
    assert not product.hypotheses
    assert product.witness["mean_correlation"] == pytest.approx(0.0, abs=1e-12)


def test_overall_channel_fast_path_matches_simulation():
    c = bell()
    channels = standard_schedule(c, depolarizing(2, 0.1))
    fast = overall_channel(c, channels)
    traj = simulate_noisy(c, DensityMatrix.basis_state(2, 0), NoiseSchedule(2, channels, [[], []]))
    assert superop_distance(fast, overall_error_channel(traj, c)) < 1e-9
    # non-Clifford circuits go through the simulator
    rx = product_rx(2, 0.4)
    assert not overall_channel(rx, [depolarizing(2, 0.1)]).is_pauli


def test_conjecture_a_standard_noise_has_zero_correlation():
    c = bell()
    report = conjecture_a_scan(c, standard_schedule(c, depolarizing(2, 0.05)))
    assert len(report.pair_rows) == 1
    row = report.pair_rows[0]
    assert row["entanglement"] == pytest.approx(1.0)
    assert row["cor"] == pytest.approx(0.0, abs=1e-12)
    assert row["ratio"] == pytest.approx(0.0, abs=1e-10)


def test_conjecture_a_detrimental_noise_is_correlated():
    c = bell()
    base = standard_schedule(c, depolarizing(2, 0.05))
    report = conjecture_a_scan(c, base, kernel=KernelSpec("uniform"))
    row = report.pair_rows[0]
    assert row["cor"] > 0
    assert row["ratio"] > 0
    pairs, blocks = report.to_frames()
    assert list(pairs["cor"]) == [row["cor"]]
    assert blocks.empty
    overall = conjecture_a_scan(c, base, kernel=KernelSpec("uniform"), channel="overall")
    assert overall.channel == "overall"
    assert overall.pair_rows[0]["cor"] > 0
    with pytest.raises(ValueError):
        conjecture_a_scan(c, base, channel="future")


def test_conjecture_a_excludes_unentangled_pairs():
    c = Circuit(2, ((Gate("H", (0,)), Gate("H", (1,))),))
    report = conjecture_a_scan(c, [depolarizing(2, 0.1)], kernel=KernelSpec("uniform"))
    assert report.pair_rows == []
    assert report.excluded[0]["entanglement"] == pytest.approx(0.0, abs=1e-12)


def test_conjecture_a_block_rows():
    c = ghz(4)
    report = conjecture_a_scan(
        c, standard_schedule(c, depolarizing(4, 0.05)), kernel=KernelSpec("uniform"),
        pairs=[(0, 3)], blocks=[([0, 1], [2, 3])],
    )
    block = report.block_rows[0]
    assert block["entanglement"] == pytest.approx(1.0)
    assert block["cor"] > 0


def test_conjecture_a_mixed_state_needs_fallback():
    c = bell()
    rho0 = DensityMatrix(np.diag([0.9, 0.0, 0.0, 0.1]))
    base = standard_schedule(c, depolarizing(2, 0.05))
    with pytest.raises(PreconditionViolated):
        conjecture_a_scan(c, base, rho0=rho0)


@pytest.mark.slow
def test_conjecture_a_mixed_fallback_uses_sep_distance():
    c = bell()
    rho0 = DensityMatrix(np.diag([0.9, 0.0, 0.0, 0.1]))
    base = standard_schedule(c, depolarizing(2, 0.05))
    report = conjecture_a_scan(c, base, kernel=KernelSpec("uniform"), rho0=rho0, mixed_fallback=True)
    assert report.entanglement_measure == "sep_distance"
    # 0.9 Phi+ + 0.1 Psi- is at trace distance 0.4 from the separable states
    assert report.pair_rows[0]["entanglement"] >= 0.4 - 1e-6


def test_conjecture_b_metric_ghz():
    c = ghz(5)
    result = conjecture_b_metric(c, standard_schedule(c, depolarizing(5, 0.02)), partitions=4)
    assert result["partition_entanglement"] == pytest.approx(1.0)
    assert result["fresh_decay"]["passed"]
    assert result["overall_alpha"] > result["fresh_alpha"]
    product = product_rx(3, 0.0)
    flat = conjecture_b_metric(product, [depolarizing(3, 0.02)], kernel=KernelSpec("uniform"))
    assert flat["partition_entanglement"] == pytest.approx(0.0, abs=1e-9)


def _analytic_ratio(n, p):
    return (1 - (1 - p / 2) ** n) / (p * (1 - 2.0**-n))


def test_rate_comparison():
    rows = rate_comparison([1, 2, 3, 4, 5, 6], 0.01)["rows"]
    assert rows[2]["alpha"] == pytest.approx(0.0225)
    assert rows[0]["ratio"] == pytest.approx(1.0)
    ratios = [row["ratio"] for row in rows]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    for row in rows:
        assert row["ratio"] == pytest.approx(_analytic_ratio(row["n"], 0.01))


def test_rate_scaling_experiment():
    out = rate_scaling_experiment("ghz", KernelSpec("uniform"), 0.02, [2, 3, 4])
    assert [row["n"] for row in out["rows"]] == [2, 3, 4]
    assert math.isfinite(out["slope"])
    empty = rate_scaling_experiment("empty", KernelSpec("uniform"), 0.02, [2, 3])
    for row in empty["rows"]:
        assert row["alpha"] == pytest.approx(row["base_alpha"])
    memoryless = rate_scaling_experiment("ghz", KernelSpec("window", w=1e-6), 0.02, [2, 3])
    for row in memoryless["rows"]:
        assert row["alpha"] == pytest.approx(row["base_alpha"])
    with pytest.raises(ValueError):
        rate_scaling_experiment("ring", KernelSpec(), 0.02, [2])


def test_noncommutativity():
    c = Circuit(1, ((Gate("H", (0,)),), (Gate("Z", (0,)),)))
    assert noncommutativity(c, 1) == pytest.approx(math.sqrt(2), abs=1e-6)
    assert noncommutativity(c, 2) == 0.0
    with pytest.raises(BadRange):
        noncommutativity(c, 0)
    diagonal = Circuit(2, ((Gate("Z", (0,)), Gate("RZ", (1,), 0.3)), (Gate("CZ", (0, 1)),), (Gate("S", (1,)),)))
    assert [row["mu"] for row in noncommutativity_profile(diagonal)] == pytest.approx([0, 0, 0], abs=1e-12)
    rows = noncommutativity_profile(c, [depolarizing(1, 0.1)] * 2)
    assert rows[0]["alpha"] == pytest.approx(0.075)


def test_dnoise_score():
    zero = DensityMatrix.basis_state(1, 0)
    assert dnoise_score(depolarizing(1, 0.2), zero, budget=20).value == pytest.approx(0.0, abs=1e-8)
    assert dnoise_score(dephasing(1, 0.3), zero, budget=20).value == pytest.approx(0.0, abs=1e-8)
    assert dnoise_score(pauli_unitary_channel("X"), zero, budget=20).value > 0.1
    with pytest.raises(DimensionMismatch):
        dnoise_score(depolarizing(2, 0.1), zero)


def test_invariance_check():
    rho0 = DensityMatrix.basis_state(2, 0)
    env = memory_example_envelope(rho0, depolarizing(2, 0.1, support=[0]))
    u = segment_unitary(bell(), 0, 2)
    assert invariance_check(env, rho0, u, W=UnitaryOp.identity(2))["passed"]
    sampled = invariance_check(env, rho0, u, samples=3, seed=5)
    assert sampled["passed"]
    assert len(sampled["distances"]) == 3
    # W = U^-1 sends the intended state back to rho0
    undo = invariance_check(env, rho0, u, W=u.adjoint())
    assert undo["max_distance"] <= 1e-10
    with pytest.raises(DimensionMismatch):
        invariance_check(env, rho0, u, W=UnitaryOp.identity(1))


def test_smoothing_comparison():
    diagonal = Circuit(2, ((Gate("CZ", (0, 1)),), (Gate("S", (0,)),), (Gate("Z", (1,)),)))
    same = standard_schedule(diagonal, dephasing(2, 0.1))
    out = smoothing_comparison(diagonal, same, KernelSpec("uniform"))
    assert out["final"] <= 1e-10
    c = bell()
    quiet = smoothing_comparison(c, [identity_channel(2)] * 2, KernelSpec("exp_decay", tau=0.5))
    assert quiet["per_cycle"] == pytest.approx([0.0, 0.0, 0.0], abs=1e-12)
    noisy = smoothing_comparison(c, standard_schedule(c, depolarizing(2, 0.05)), KernelSpec("uniform"))
    assert len(noisy["per_cycle"]) == 3
