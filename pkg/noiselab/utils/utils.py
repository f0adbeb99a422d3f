"""
Author: noiselab contributors
Date: 2026-09-03 09:15:42
LastEditTime: 2026-10-12 18:03:30
LastEditors: noiselab contributors
Description: Seeding, random objects, json helpers and an ordered thread map
FilePath: /noiselab/noiselab/utils/utils.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import linalg

MASK64 = (1 << 64) - 1


def derive_seed(master_seed, unit_kind, unit_index=0):
    """Hash (master seed, unit kind, unit index) to a 64-bit seed.

    Every independent unit of work (trial, restart, partition ...) draws from
    its own generator so scheduling can never change a result.
    """
    if master_seed is None:
        raise ValueError("a seed is mandatory")
    payload = f"{int(master_seed) & MASK64}|{unit_kind}|{int(unit_index)}".encode()
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "little")


def make_rng(master_seed, unit_kind="root", unit_index=0):
    """Counter-based (Philox) generator for one unit of work."""
    seed = derive_seed(master_seed, unit_kind, unit_index)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def ordered_map(func, items, threads=1):
    """map() over items, optionally on a thread pool; results keep item order."""
    items = list(items)
    if threads is None or threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def ginibre(rows, cols, rng):
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2)


def haar_unitary(dim, rng):
    """Haar-random unitary via QR of a Ginibre matrix with phase correction."""
    q, r = linalg.qr(ginibre(dim, dim, rng))
    diag = np.diag(r)
    return q * (diag / np.abs(diag))[None, :]


def random_isometry(rows, cols, rng):
    q, r = linalg.qr(ginibre(rows, cols, rng), mode="economic")
    diag = np.diag(r)
    return q * (diag / np.abs(diag))[None, :]


def random_pure_state(dim, rng):
    psi = ginibre(dim, 1, rng)[:, 0]
    return psi / np.linalg.norm(psi)


def random_density(dim, rng, rank=None):
    """Random mixed state of the given rank (full rank by default)."""
    rank = dim if rank is None else rank
    g = ginibre(dim, rank, rng)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_kraus(dim, rng, count=3):
    """Kraus list of a random CPTP map: blocks of a random isometry."""
    v = random_isometry(dim * count, dim, rng)
    return [v[k * dim:(k + 1) * dim, :] for k in range(count)]


def gaussian_hermitian(dim, rng, traceless=True):
    """Sample of the Gaussian unitary ensemble, Frobenius-normalized."""
    a = ginibre(dim, dim, rng)
    h = (a + a.conj().T) / 2
    if traceless:
        h = h - np.trace(h) / dim * np.eye(dim)
    return h / np.linalg.norm(h)


def binary_entropy(p):
    if p <= 0 or p >= 1:
        return 0.0
    return float(-p * math.log2(p) - (1 - p) * math.log2(1 - p))


def to_jsonable(obj):
    """Convert numpy scalars/arrays, tuples and non-finite floats for json."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, complex):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return obj


def canonical_json(obj):
    """Byte-stable json text: sorted keys, fixed separators, finite numbers."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def sha256_file(path, chunk=1 << 16):
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(chunk), b""):
            digest.update(block)
    return digest.hexdigest()


def matrix_to_json(matrix):
    m = np.asarray(matrix, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def matrix_from_json(rows):
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise ValueError("matrices are encoded as rows of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]
