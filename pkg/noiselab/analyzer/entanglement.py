"""
Author: noiselab contributors
Date: 2026-09-15 10:02:47
LastEditTime: 2026-10-14 16:40:03
LastEditors: noiselab contributors
Description: Entropies, partial traces, negativity, separable-distance bounds,
    max-entropy completion and emergent entanglement
FilePath: /noiselab/noiselab/analyzer/entanglement.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from loguru import logger
from scipy import linalg, optimize

from noiselab.configs import config as conf
from noiselab.exceptions import (
    BadIndex,
    CapExceeded,
    DimensionMismatch,
    EmptySet,
    NoConvergence,
)
from noiselab.operators.channel_algebra import DensityMatrix, trace_distance
from noiselab.operators.pauli_core import (
    dense_weights,
    from_pauli_coefficients,
    pauli_coefficients,
)
from noiselab.utils.utils import binary_entropy, make_rng, ordered_map

_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)


def _check_qubits(n, qubits):
    qubits = [int(q) for q in qubits]
    for q in qubits:
        if not 0 <= q < n:
            raise BadIndex(f"qubit {q} out of range for n={n}")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"repeated qubit in {qubits}")
    return qubits


def _reduce(matrix, n, keep):
    """Partial trace keeping ``keep`` in the given order."""
    keep = list(keep)
    rest = [q for q in range(n) if q not in keep]
    dk, dr = 1 << len(keep), 1 << len(rest)
    t = matrix.reshape([2] * (2 * n))
    order = keep + rest
    t = t.transpose(order + [n + q for q in order]).reshape(dk, dr, dk, dr)
    return np.trace(t, axis1=1, axis2=3)


def _entropy_of(matrix):
    vals = np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)
    vals = vals[vals > 1e-15]
    return float(max(0.0, -np.sum(vals * np.log2(vals))))


def von_neumann_entropy(rho):
    """Entropy in bits, 0 log 0 := 0."""
    return _entropy_of(rho.matrix)


def reduced_state(rho, Z):
    """rho|_Z with the qubits of Z in ascending order."""
    Z = sorted(set(_check_qubits(rho.n, Z)))
    if not Z:
        raise EmptySet("cannot reduce to an empty set of qubits")
    if len(Z) == rho.n:
        return rho
    return DensityMatrix(_reduce(rho.matrix, rho.n, Z), validate=False)


def partial_transpose(rho, B):
    B = set(_check_qubits(rho.n, B))
    n = rho.n
    axes = list(range(2 * n))
    for q in B:
        axes[q], axes[n + q] = n + q, q
    t = rho.matrix.reshape([2] * (2 * n)).transpose(axes)
    return t.reshape(rho.dim, rho.dim)


def _bipartition(n, A, B):
    A = _check_qubits(n, A)
    B = [q for q in range(n) if q not in A] if B is None else _check_qubits(n, B)
    if not A or not B:
        raise EmptySet("both sides of the bipartition must be nonempty")
    if set(A) & set(B):
        raise ValueError("bipartition sides overlap")
    return A, B


def negativity(rho, A, B=None):
    """Sum of |negative eigenvalues| of the partial transpose over B.

    B defaults to the complement of A; qubits outside A and B are traced out.
    """
    A, B = _bipartition(rho.n, A, B)
    keep = sorted(A + B)
    local = DensityMatrix(_reduce(rho.matrix, rho.n, keep), validate=False)
    pt = partial_transpose(local, [keep.index(q) for q in B])
    vals = np.linalg.eigvalsh((pt + pt.conj().T) / 2)
    return float(-vals[vals < 0].sum())


@dataclass
class SepDistance:
    lower: float
    upper: float
    exhausted: bool = False
    components: int = 0

    def to_dict(self):
        return dict(self.__dict__)


def _product_mixture(x, k, da, db):
    logits = x[:k]
    w = np.exp(logits - logits.max())
    w /= w.sum()
    vec = x[k:].reshape(k, 2, da + db)
    vec = vec[:, 0] + 1j * vec[:, 1]
    a, b = vec[:, :da], vec[:, da:]
    a = a / np.maximum(np.linalg.norm(a, axis=1, keepdims=True), 1e-300)
    b = b / np.maximum(np.linalg.norm(b, axis=1, keepdims=True), 1e-300)
    prod = np.einsum("ki,kj->kij", a, b).reshape(k, da * db)
    return np.einsum("k,ki,kj->ij", w, prod, prod.conj())


def sep_distance_estimate(rho, A, B=None, budget=200, seed=0, components=16, restarts=3, threads=1):
    """Bounds on the trace distance from rho_{A,B} to the separable states.

    lower: negativity / min(d_A, d_B), valid because the partial transpose
    inflates trace norms by at most min(d_A, d_B).
    upper: trace distance to the best mixture of ``components`` product pure
    states found (warm starts rho_A (x) rho_B and the dephased state, then
    ``restarts`` seeded L-BFGS searches of ``budget`` iterations each).
    """
    A, B = _bipartition(rho.n, A, B)
    if len(A) + len(B) > conf.CAPS.sep_qubits:
        raise CapExceeded("|A| + |B|", len(A) + len(B), conf.CAPS.sep_qubits)
    if not 1 <= components <= 16:
        raise ValueError("components must be in 1..16")
    da, db = 1 << len(A), 1 << len(B)
    target = _reduce(rho.matrix, rho.n, A + B)
    local = DensityMatrix(target, validate=False)
    lower = negativity(local, range(len(A)), range(len(A), len(A) + len(B))) / min(da, db)

    def distance(sigma):
        return trace_distance(local, DensityMatrix(sigma, validate=False))

    warm = [
        np.kron(_reduce(target, len(A) + len(B), range(len(A))),
                _reduce(target, len(A) + len(B), range(len(A), len(A) + len(B)))),
        np.diag(np.diag(target)),
    ]
    best = min(distance(s) for s in warm)
    if best <= 1e-12:
        return SepDistance(lower, best, False, 0)

    k = components

    def run(restart):
        rng = make_rng(seed, "sep-distance", restart)
        x0 = rng.standard_normal(k + 2 * k * (da + db))

        def objective(x):
            diff = target - _product_mixture(x, k, da, db)
            return float(np.real(np.vdot(diff, diff)))

        res = optimize.minimize(objective, x0, method="L-BFGS-B", options={"maxiter": budget})
        return distance(_product_mixture(res.x, k, da, db)), res.nit >= budget

    outcomes = ordered_map(run, range(restarts), threads)
    exhausted = False
    for value, hit_budget in outcomes:
        if value < best:
            best = value
        exhausted = exhausted or hit_budget
    return SepDistance(lower, best, exhausted, k)


@dataclass
class MaxEntSolution:
    rho_star: DensityMatrix
    entropy: float
    constraint_residual: float
    iterations: int
    support_dim: int

    def to_dict(self):
        return {
            "entropy": self.entropy,
            "constraint_residual": self.constraint_residual,
            "iterations": self.iterations,
            "support_dim": self.support_dim,
        }


def _marginal_residual(sigma, matrix, n):
    worst = 0.0
    for q in range(n):
        keep = [k for k in range(n) if k != q]
        diff = _reduce(sigma, n, keep) - _reduce(matrix, n, keep)
        worst = max(worst, float(np.abs(np.linalg.eigvalsh((diff + diff.conj().T) / 2)).sum()))
    return worst


def _support_basis(matrix, n, tol=1e-10):
    """Basis of the intersection of range(rho_B) (x) C^2 over (n-1)-subsets B."""
    d = 1 << n
    blocks = []
    for q in range(n):
        keep = [k for k in range(n) if k != q]
        vals, vecs = np.linalg.eigh(_reduce(matrix, n, keep))
        v = vecs[:, vals > tol]
        proj = v @ v.conj().T
        # embed proj on `keep` into the full space, identity on q
        full = np.kron(proj, np.eye(2)).reshape([2] * (2 * n))
        src = keep + [q]
        axes = [src.index(k) for k in range(n)]
        full = full.transpose(axes + [n + a for a in axes]).reshape(d, d)
        blocks.append(np.eye(d) - full)
    # absolute cutoff: full-rank marginals leave blocks of pure rounding noise
    _, s, vh = linalg.svd(np.vstack(blocks), full_matrices=False)
    return vh[s <= 1e-8].conj().T


def max_entropy_completion(rho, A=None, budget=2000):
    """Maximum-entropy state with the same (|A|-1)-qubit marginals as rho|_A.

    The support is first cut down to the subspace every marginal allows; the
    entropy is then maximized by minimizing the dual
    log Tr exp(sum_I l_I Q_I) - sum_I l_I <P_I> over the Pauli strings acting
    trivially on some qubit, and polished by alternating projections between
    the marginal constraints and the PSD cone.
    """
    if A is not None:
        rho = reduced_state(rho, A)
    n = rho.n
    if n > conf.CAPS.maxent_qubits:
        raise CapExceeded("n (max-entropy completion)", n, conf.CAPS.maxent_qubits)
    d = rho.dim
    if n == 1:
        mixed = DensityMatrix.maximally_mixed(1)
        return MaxEntSolution(mixed, 1.0, 0.0, 0, 2)
    matrix = rho.matrix
    basis = _support_basis(matrix, n)
    r = basis.shape[1]
    constrained = np.flatnonzero(dense_weights(n) < n)[1:]
    target = pauli_coefficients(matrix).real[constrained]
    iterations = 0

    if r == 1:
        sigma = np.outer(basis[:, 0], basis[:, 0].conj())
    else:
        full = np.zeros(d * d)

        def gibbs(lam):
            full[:] = 0
            full[constrained] = lam
            h = basis.conj().T @ (d * from_pauli_coefficients(full, n)) @ basis
            vals, vecs = np.linalg.eigh((h + h.conj().T) / 2)
            shift = vals.max()
            weights = np.exp(vals - shift)
            z = weights.sum()
            x = (vecs * (weights / z)[None, :]) @ vecs.conj().T
            return shift + math.log(z), basis @ x @ basis.conj().T

        def dual(lam):
            log_z, sigma = gibbs(lam)
            grad = pauli_coefficients(sigma).real[constrained] - target
            return log_z - float(lam @ target), grad

        res = optimize.minimize(
            dual, np.zeros(len(constrained)), jac=True, method="L-BFGS-B",
            options={"maxiter": budget, "gtol": 1e-12, "ftol": 1e-15},
        )
        iterations = int(res.nit)
        sigma = gibbs(res.x)[1]

    tol = conf.TOLERANCES.maxent_residual
    residual = _marginal_residual(sigma, matrix, n)
    polish = 0
    while residual > tol and polish < budget:
        coeffs = pauli_coefficients(sigma)
        coeffs[constrained] = target
        coeffs[0] = 1.0
        sigma = from_pauli_coefficients(coeffs, n)
        vals, vecs = np.linalg.eigh((sigma + sigma.conj().T) / 2)
        vals = np.clip(vals, 0, None)
        sigma = (vecs * (vals / vals.sum())[None, :]) @ vecs.conj().T
        residual = _marginal_residual(sigma, matrix, n)
        polish += 1
    if residual > tol:
        raise NoConvergence(f"max-entropy completion residual {residual:.3g} above {tol}")
    sigma = (sigma + sigma.conj().T) / 2
    logger.debug(f"max-entropy completion n={n} support={r} dual_iters={iterations} polish={polish}")
    rho_star = DensityMatrix(sigma / np.trace(sigma).real, validate=False)
    return MaxEntSolution(rho_star, von_neumann_entropy(rho_star), residual, iterations + polish, r)


def ent_measure(rho, A=None):
    """ENT(rho; A) = -S(rho|_A) + S(rho*) in bits."""
    local = rho if A is None else reduced_state(rho, A)
    solution = max_entropy_completion(local)
    return solution.entropy - von_neumann_entropy(local)


@dataclass
class EntReport:
    ent: float
    ent_tilde: float
    per_subset: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "ent": self.ent,
            "ent_tilde": self.ent_tilde,
            "per_subset": {",".join(map(str, k)): v for k, v in self.per_subset.items()},
        }


def ent_tilde(rho):
    """Sum of ENT(rho|_B; B) over every subset B with |B| >= 2."""
    n = rho.n
    if n > conf.CAPS.maxent_qubits:
        raise CapExceeded("n (ent_tilde)", n, conf.CAPS.maxent_qubits)
    per_subset = {}
    for size in range(2, n + 1):
        for subset in itertools.combinations(range(n), size):
            per_subset[subset] = ent_measure(rho, subset)
    total = float(sum(per_subset.values()))
    full = per_subset.get(tuple(range(n)), 0.0)
    return EntReport(full, total, per_subset)


def concurrence(matrix):
    """Wootters concurrence of a two-qubit density matrix."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (4, 4):
        raise DimensionMismatch("concurrence needs a two-qubit state")
    tilde = _YY @ m.conj() @ _YY
    vals = np.sqrt(np.abs(np.sort(np.linalg.eigvals(m @ tilde).real)))[::-1]
    return float(max(0.0, vals[0] - vals[1] - vals[2] - vals[3]))


def entanglement_of_formation(matrix):
    c = min(concurrence(matrix), 1.0)
    return binary_entropy((1 + math.sqrt(1 - c * c)) / 2)


def _basis_pair(theta, phi):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    b0 = np.array([c, np.exp(1j * phi) * s])
    b1 = np.array([-np.exp(-1j * phi) * s, c])
    return b0, b1


def _outcome_vectors(angles):
    vectors = np.ones((1, 1), dtype=complex)
    for theta, phi in angles.reshape(-1, 2):
        pair = np.stack(_basis_pair(theta, phi))
        vectors = np.einsum("oi,bj->obij", vectors, pair).reshape(vectors.shape[0] * 2, -1)
    return vectors


def _expected_ef(tensor, angles):
    total = 0.0
    for v in _outcome_vectors(angles):
        sigma = np.einsum("aibj,i,j->ab", tensor, v.conj(), v)
        p = float(np.trace(sigma).real)
        if p > 1e-14:
            total += p * entanglement_of_formation(sigma / p)
    return total


@dataclass
class EmergentResult:
    value: float
    angles: list
    restart: int
    exhausted: bool = False

    def to_dict(self):
        return dict(self.__dict__)


def _starting_angles(m, restart, seed, basis_starts=3):
    if restart < basis_starts:
        theta, phi = [(math.pi / 2, 0.0), (0.0, 0.0), (math.pi / 2, math.pi / 2)][restart]
        return np.tile([theta, phi], m)
    rng = make_rng(seed, "emergent", restart)
    return np.stack([rng.uniform(0, math.pi, m), rng.uniform(0, 2 * math.pi, m)], axis=1).reshape(-1)


def emergent_entanglement(rho, i, j, budget=20, seed=0, restarts=6, threads=1, basis_starts=3):
    """Best expected entanglement of formation of qubits (i, j) after
    measuring every other qubit in a product projective basis.

    The first ``basis_starts`` restarts (at most 3) start from the X, Z and Y
    bases, the rest from seeded random angles. Each runs coordinate descent
    for at most ``budget`` sweeps. The value is a lower bound to the optimum
    over projective product measurements.
    """
    n = rho.n
    if n > conf.CAPS.emergent_qubits:
        raise CapExceeded("n (emergent entanglement)", n, conf.CAPS.emergent_qubits)
    i, j = _check_qubits(n, [i, j])
    others = [q for q in range(n) if q not in (i, j)]
    if not others:
        return EmergentResult(entanglement_of_formation(_reduce(rho.matrix, n, [i, j])), [], 0)
    m = len(others)
    tensor = _reduce(rho.matrix, n, [i, j] + others).reshape(4, 1 << m, 4, 1 << m)
    bounds = [(0.0, math.pi), (0.0, 2 * math.pi)] * m

    def run(restart):
        x = _starting_angles(m, restart, seed, min(int(basis_starts), 3))
        value = _expected_ef(tensor, x)
        exhausted = True
        for _ in range(budget):
            before = value
            for k in range(2 * m):
                trial = x.copy()

                def objective(a):
                    trial[k] = a
                    return -_expected_ef(tensor, trial)

                res = optimize.minimize_scalar(objective, bounds=bounds[k], method="bounded",
                                               options={"xatol": 1e-9})
                if -res.fun > value:
                    x[k], value = res.x, -res.fun
            if value - before <= 1e-12:
                exhausted = False
                break
        return value, x, exhausted

    outcomes = ordered_map(run, range(max(1, restarts)), threads)
    best = max(range(len(outcomes)), key=lambda r: (outcomes[r][0], -r))
    value, x, exhausted = outcomes[best]
    return EmergentResult(float(value), [float(a) for a in x], best, exhausted)
