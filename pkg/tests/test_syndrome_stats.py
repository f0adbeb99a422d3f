"""
Author: noiselab contributors
Date: 2026-09-14 15:20:58
LastEditTime: 2026-10-14 19:05:43
LastEditors: noiselab contributors
Description: Test for syndrome masses, weight profiles, fault correlations and synchronization
FilePath: /noiselab/tests/test_syndrome_stats.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import math

import numpy as np
import pytest
from scipy import stats

from noiselab.analyzer.syndrome_stats import (
    CoarseDistribution,
    block_correlation,
    block_fault_rate,
    channel_alpha,
    coarse_distribution,
    correlation_frame,
    correlation_matrix,
    fault_probability,
    pair_correlation,
    pairwise_independence_check,
    pauli_mass,
    qubit_error_amount,
    sample_syndromes,
    synchronization_report,
    tail_decay_check,
    weight_profile,
)
from noiselab.exceptions import BadIndex, CapExceeded, DegenerateMarginal, EmptySet
from noiselab.configs import config as conf
from noiselab.operators.channel_algebra import (
    QuantumChannel,
    amplitude_damping,
    correlated_depolarizing,
    depolarizing,
    identity_channel,
    mix,
    unitary_channel,
)
from noiselab.simulator.circuit_sim import FIXED_GATES
from noiselab.utils.utils import haar_unitary, make_rng, random_kraus

CNOT = unitary_channel(FIXED_GATES["CNOT"])


@pytest.fixture(scope="module")
def ten_qubit_profiles():
    return {
        "independent": weight_profile(pauli_mass(depolarizing(10, 0.01))),
        "correlated": weight_profile(pauli_mass(correlated_depolarizing(10, 0.01))),
    }


def test_pauli_mass_of_identity_and_depolarizing():
    assert pauli_mass(identity_channel(2)).mass("II") == 1.0
    d = pauli_mass(depolarizing(1, 0.1))
    assert d.as_dict() == pytest.approx({"I": 0.925, "X": 0.025, "Z": 0.025, "Y": 0.025})


def test_pauli_mass_of_cnot_from_kraus():
    d = pauli_mass(CNOT)
    assert d.total_mass == pytest.approx(1.0)
    assert d.as_dict(threshold=1e-12) == pytest.approx({"II": 0.25, "IX": 0.25, "ZI": 0.25, "ZX": 0.25})


def test_pauli_mass_dense_cap():
    with conf.override_caps({"pauli_dense_qubits": 1}):
        with pytest.raises(CapExceeded):
            pauli_mass(CNOT)


def test_weight_profiles():
    wp = weight_profile(pauli_mass(identity_channel(3)))
    np.testing.assert_allclose(wp.f, [1, 0, 0, 0])
    assert wp.alpha == 0
    p = 0.2
    wp = weight_profile(pauli_mass(depolarizing(3, p)))
    np.testing.assert_allclose(wp.f, stats.binom.pmf(range(4), 3, 3 * p / 4), atol=1e-12)
    assert wp.alpha == pytest.approx(3 * p * 3 / 4)
    wp = weight_profile(pauli_mass(correlated_depolarizing(3, p)))
    expected = [(1 - p) + p / 64] + [p * math.comb(3, s) * 3**s / 64 for s in (1, 2, 3)]
    np.testing.assert_allclose(wp.f, expected, atol=1e-12)
    assert wp.alpha == pytest.approx(9 * p / 4)
    frame = wp.to_frame()
    assert list(frame.columns) == ["s", "f"]
    assert len(frame) == 4


def test_qubit_error_amount():
    d = pauli_mass(depolarizing(3, 0.2, support=[1]))
    assert [qubit_error_amount(d, k) for k in range(3)] == pytest.approx([0, 0.15, 0])
    cnot = pauli_mass(CNOT)
    assert qubit_error_amount(cnot, 0) == pytest.approx(0.5)
    assert qubit_error_amount(cnot, 1) == pytest.approx(0.5)
    with pytest.raises(BadIndex):
        qubit_error_amount(cnot, 2)


def test_coarse_distribution():
    assert coarse_distribution(pauli_mass(identity_channel(2))).as_dict() == {"00": 1.0}
    cd = coarse_distribution(pauli_mass(CNOT))
    assert cd.as_dict() == pytest.approx({"00": 0.25, "01": 0.25, "10": 0.25, "11": 0.25})
    q = 0.75 * 0.1
    cd = coarse_distribution(pauli_mass(depolarizing(2, 0.1)))
    expected = {"00": (1 - q) ** 2, "01": q * (1 - q), "10": q * (1 - q), "11": q * q}
    assert cd.as_dict() == pytest.approx(expected)


def test_fault_probabilities():
    assert fault_probability(CoarseDistribution.from_dict({"000": 1.0}), 1) == 0
    product = CoarseDistribution.product([0.075] * 3)
    assert [fault_probability(product, i) for i in range(3)] == pytest.approx([0.075] * 3)
    assert fault_probability(coarse_distribution(pauli_mass(CNOT)), 0) == pytest.approx(0.5)
    assert block_fault_rate(CoarseDistribution.product([0.1, 0.3]), [0, 1]) == pytest.approx(0.2)
    with pytest.raises(EmptySet):
        block_fault_rate(product, [])


def test_pair_correlation():
    product = CoarseDistribution.product([0.1, 0.2, 0.3])
    assert pair_correlation(product, 0, 2).value == pytest.approx(0.0, abs=1e-12)
    sync = CoarseDistribution.synchronized(3, 0.3)
    assert pair_correlation(sync, 0, 1).value == pytest.approx(1.0)
    with pytest.raises(ValueError):
        pair_correlation(sync, 1, 1)


def test_degenerate_marginal():
    cd = CoarseDistribution.from_dict({"10": 0.5, "00": 0.5})
    record = pair_correlation(cd, 0, 1)
    assert record.degenerate
    assert math.isnan(record.value)
    assert record.covariance == pytest.approx(0.0)
    with pytest.raises(DegenerateMarginal):
        pair_correlation(cd, 0, 1, strict=True)


def test_block_correlation():
    product = CoarseDistribution.product([0.1, 0.2, 0.3, 0.4])
    assert block_correlation(product, [0, 1], [2, 3]).value == pytest.approx(0.0, abs=1e-12)
    sync = CoarseDistribution.synchronized(4, 0.2)
    assert block_correlation(sync, [0, 3], [1, 2]).value == pytest.approx(1.0)
    mixed = CoarseDistribution.mixture([(0.3, sync), (0.7, product)])
    single = block_correlation(mixed, [1], [3])
    assert single.value == pytest.approx(pair_correlation(mixed, 1, 3).value)
    assert single.mean_pairwise == pytest.approx(single.value)
    with pytest.raises(ValueError):
        block_correlation(mixed, [0, 1], [1, 2])


def test_correlation_frame_layout():
    frame = correlation_frame(CoarseDistribution.synchronized(3, 0.4))
    assert frame.shape == (3, 3)
    assert frame.isna().values.diagonal().all()
    np.testing.assert_allclose(frame.values, frame.values.T, equal_nan=True)


def test_synchronization_report(ten_qubit_profiles):
    independent = synchronization_report(ten_qubit_profiles["independent"], 0.1)
    assert not independent.synchronized
    assert not independent.very_strong
    correlated = synchronization_report(ten_qubit_profiles["correlated"], 0.1)
    assert correlated.very_strong
    assert correlated.synchronized
    assert correlated.very_strong_weight == 7
    identity = synchronization_report(weight_profile(pauli_mass(identity_channel(4))), 0.1)
    assert identity.alpha == 0
    assert not identity.synchronized and not identity.very_strong
    with pytest.raises(ValueError):
        synchronization_report(ten_qubit_profiles["independent"], 0.8)


def test_tail_decay_check(ten_qubit_profiles):
    binomial = tail_decay_check(ten_qubit_profiles["independent"], 0.1)
    assert binomial.passed
    assert not binomial.trivial
    assert binomial.fitted_slope < 0
    flat = tail_decay_check(ten_qubit_profiles["correlated"], 0.1)
    assert not flat.passed
    assert 8 in [v["s"] for v in flat.violations]
    trivial = tail_decay_check(weight_profile(pauli_mass(identity_channel(3))), 0.1)
    assert trivial.passed and trivial.trivial


def test_pairwise_independence_check():
    product = CoarseDistribution.product([0.1] * 5)
    report = pairwise_independence_check(product, 0.05)
    assert report.fraction == 1.0 and report.passed
    assert report.pairs == 10
    sync = pairwise_independence_check(CoarseDistribution.synchronized(5, 0.1), 0.05)
    assert sync.fraction == 0.0 and not sync.passed
    mixed = CoarseDistribution.mixture(
        [(0.99, product), (0.01, CoarseDistribution.synchronized(5, 1.0))]
    )
    # every pair has correlation ~0.083 here
    report = pairwise_independence_check(mixed, 0.05)
    assert report.fraction == 0.0
    assert pairwise_independence_check(mixed, 0.1).fraction == 1.0


def test_sample_point_mass():
    cd = sample_syndromes(pauli_mass(identity_channel(3)), 100, seed=1)
    assert cd.as_dict() == pytest.approx({"000": 1.0})
    assert cd.sample_size == 100
    assert cd.standard_error == pytest.approx(0.1)


@pytest.mark.slow
def test_sampled_marginals_and_correlation():
    d = pauli_mass(depolarizing(3, 0.1))
    m = 100_000
    cd = sample_syndromes(d, m, seed=5)
    q = 0.075
    band = 4 * math.sqrt(q * (1 - q) / m)
    for i in range(3):
        assert abs(fault_probability(cd, i) - q) <= band
    assert abs(pair_correlation(cd, 0, 1).value) <= 4 / math.sqrt(m)
    again = sample_syndromes(d, m, seed=5)
    np.testing.assert_array_equal(again.patterns, cd.patterns)
    np.testing.assert_array_equal(again.probs, cd.probs)


def test_pauli_mass_is_normalized_for_random_channels():
    worst = 0.0
    for k in range(1000):
        n = 1 + k % 3
        e = QuantumChannel(n, kraus=random_kraus(1 << n, make_rng(k, "random-cptp"), count=1 + k % 4))
        worst = max(worst, abs(pauli_mass(e).total_mass - 1))
    assert worst <= 1e-9


def test_pauli_mass_ignores_kraus_remixing():
    for k in range(50):
        rng = make_rng(k, "remix")
        kraus = random_kraus(4, rng, count=3)
        w = haar_unitary(3, rng)
        remixed = [sum(w[i, j] * kraus[j] for j in range(3)) for i in range(3)]
        np.testing.assert_allclose(
            pauli_mass(QuantumChannel(2, kraus=remixed)).masses,
            pauli_mass(QuantumChannel(2, kraus=kraus)).masses,
            atol=1e-9,
        )


def test_independent_depolarizing_profile_and_correlations():
    d = pauli_mass(depolarizing(5, 0.1))
    wp = weight_profile(d)
    assert np.max(np.abs(wp.f - stats.binom.pmf(range(6), 5, 0.075))) <= 1e-9
    assert abs(wp.alpha - 0.375) <= 1e-10
    corr, _ = correlation_matrix(coarse_distribution(d))
    off_diagonal = corr[np.triu_indices(5, k=1)]
    assert np.all(np.abs(off_diagonal) <= 1e-9)


@pytest.mark.parametrize("w", [0.0, 0.3, 0.8])
def test_mixture_is_affine_in_mass_and_alpha(w):
    a = amplitude_damping(2, 0.4)
    b = correlated_depolarizing(2, 0.2)
    mixed = mix([a, b], [w, 1 - w])
    np.testing.assert_allclose(
        pauli_mass(mixed).masses,
        w * pauli_mass(a).masses + (1 - w) * pauli_mass(b).masses,
        atol=1e-12,
    )
    assert channel_alpha(mixed) == pytest.approx(w * channel_alpha(a) + (1 - w) * channel_alpha(b))
