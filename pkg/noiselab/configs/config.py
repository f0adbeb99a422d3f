"""
Author: noiselab contributors
Date: 2026-09-02 10:20:11
LastEditTime: 2026-10-11 09:47:52
LastEditors: noiselab contributors
Description: Caps, tolerances and the optional user setting file
FilePath: /noiselab/noiselab/configs/config.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import json
import os
import threading
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace
from pathlib import Path

import yaml
from loguru import logger


@dataclass(frozen=True)
class Caps:
    """Size limits of the dense representations and optimizers."""

    max_qubits: int = 24
    dense_qubits: int = 12
    superop_qubits: int = 6
    pauli_dense_qubits: int = 8
    kraus_count: int = 4096
    sparse_support: int = 2**16
    trajectory_bytes: int = 2**30
    enumeration_qubits: int = 20
    maxent_qubits: int = 4
    sep_qubits: int = 4
    emergent_qubits: int = 5
    dnoise_qubits: int = 3
    haar_qubits: int = 8
    rate_qubits: int = 6


@dataclass(frozen=True)
class Tolerances:
    """All numerical tolerances in one place."""

    state: float = 1e-10
    unitary: float = 1e-10
    cptp: float = 1e-9
    weights: float = 1e-12
    kraus_drop: float = 1e-14
    mass: float = 1e-9
    degenerate: float = 1e-12
    eigen_cluster: float = 1e-9
    substantial: float = 0.01
    sync_factor: float = 10.0
    sync_min_fraction: float = 0.5
    calibration: float = 0.02
    maxent_residual: float = 1e-6
    invariance: float = 1e-10
    vanishing_noise: float = 1e-9


EXAMPLE_SETTING = (
    "caps:\n"
    "  dense_qubits: 12\n"
    "  superop_qubits: 6\n"
    "  kraus_count: 4096\n"
    "tolerances:\n"
    "  cptp: 1.0e-9\n"
    "  substantial: 0.01\n"
    "runner:\n"
    "  threads: 1\n"
    "  out_dir: 'results'\n"
)

CAPS_ENV_VAR = "NOISELAB_CAPS_JSON"


def read_setting(setting_path):
    """Read and check a noiselab YAML setting file

    Parameters
    ----------
    setting_path : str
        path of the yaml file, usually ~/noiselab_setting.yml

    Returns
    -------
    dict
        the setting with sections "caps", "tolerances" and "runner"; missing
        sections are filled with empty dicts

    Raises
    ------
    FileNotFoundError
        if the file does not exist
    ValueError
        if the file is empty, or a section holds unknown keys
    """
    if not os.path.exists(setting_path):
        raise FileNotFoundError(f"Configuration file not found: {setting_path}")

    with open(setting_path, "r", encoding="utf-8") as file:
        setting = yaml.safe_load(file)

    if setting is None or not isinstance(setting, dict):
        raise ValueError(
            f"Configuration file is empty or has invalid format.\n\nExample configuration:\n{EXAMPLE_SETTING}"
        )

    expected_structure = {
        "caps": [f.name for f in fields(Caps)],
        "tolerances": [f.name for f in fields(Tolerances)],
        "runner": ["threads", "out_dir", "log_level"],
    }
    try:
        for key in setting:
            if key not in expected_structure:
                raise KeyError(f"Unknown key in config: {key}")
        for key, subkeys in expected_structure.items():
            section = setting.setdefault(key, {}) or {}
            if not isinstance(section, dict):
                raise KeyError(f"Section '{key}' must be a mapping")
            for subkey in section:
                if subkey not in subkeys:
                    raise KeyError(f"Unknown subkey '{subkey}' in '{key}'")
            setting[key] = section
    except KeyError as e:
        raise ValueError(
            f"Incorrect configuration format: {e}\n\nExample configuration:\n{EXAMPLE_SETTING}"
        ) from e

    return setting


def caps_with_overrides(caps, overrides):
    """Return a copy of ``caps`` with the given fields replaced.

    Raises ValueError for unknown names or non-positive values.
    """
    known = {f.name for f in fields(Caps)}
    clean = {}
    for name, value in overrides.items():
        if name not in known:
            raise ValueError(f"Unknown cap '{name}', expected one of {sorted(known)}")
        if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
            raise ValueError(f"Cap '{name}' must be a positive integer, got {value!r}")
        clean[name] = value
    return replace(caps, **clean)


def caps_from_env(caps, environ=None):
    """Apply the JSON object held in NOISELAB_CAPS_JSON, if any."""
    environ = os.environ if environ is None else environ
    raw = environ.get(CAPS_ENV_VAR)
    if not raw:
        return caps
    try:
        overrides = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ValueError(f"{CAPS_ENV_VAR} is not valid JSON: {e}") from e
    if not isinstance(overrides, dict):
        raise ValueError(f"{CAPS_ENV_VAR} must hold a JSON object")
    logger.debug(f"caps overridden from {CAPS_ENV_VAR}: {overrides}")
    return caps_with_overrides(caps, overrides)


def load_settings(setting_path=None, environ=None):
    """Defaults < setting file < environment variable."""
    setting_path = setting_path or SETTING_FILE
    caps, tolerances, runner = Caps(), Tolerances(), {}
    try:
        setting = read_setting(setting_path)
        caps = caps_with_overrides(caps, setting["caps"])
        tolerances = replace(
            tolerances, **{k: float(v) for k, v in setting["tolerances"].items()}
        )
        runner = dict(setting["runner"])
    except FileNotFoundError:
        logger.debug(f"no setting file at {setting_path}, using defaults")
    caps = caps_from_env(caps, environ)
    return caps, tolerances, runner


_CAPS_LOCK = threading.RLock()


@contextmanager
def override_caps(overrides):
    """Temporarily replace module-level CAPS (used by the experiment runner).

    The swap holds a process-wide lock until the block exits, so concurrent
    overrides run one after another; nesting in one thread is allowed.
    """
    global CAPS
    with _CAPS_LOCK:
        saved = CAPS
        CAPS = caps_with_overrides(saved, overrides or {})
        try:
            yield CAPS
        finally:
            CAPS = saved


SETTING_FILE = os.path.join(Path.home(), "noiselab_setting.yml")
try:
    CAPS, TOLERANCES, RUNNER = load_settings()
except ValueError as e:
    logger.error(e)
    CAPS, TOLERANCES, RUNNER = Caps(), Tolerances(), {}
