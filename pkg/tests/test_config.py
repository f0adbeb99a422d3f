"""
Author: noiselab contributors
Date: 2026-09-03 09:12:45
LastEditTime: 2026-10-11 10:03:27
LastEditors: noiselab contributors
Description: Test for the setting file, caps overrides and the caps environment variable
FilePath: /noiselab/tests/test_config.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor

import pytest

from noiselab.configs import config as conf
from noiselab.configs.config import (
    CAPS_ENV_VAR,
    Caps,
    Tolerances,
    caps_from_env,
    caps_with_overrides,
    load_settings,
    override_caps,
    read_setting,
)


def test_read_setting(tmp_path):
    path = tmp_path / "noiselab_setting.yml"
    path.write_text("caps:\n  dense_qubits: 10\nrunner:\n  threads: 2\n", encoding="utf-8")
    setting = read_setting(str(path))
    assert setting["caps"] == {"dense_qubits": 10}
    assert setting["tolerances"] == {}
    assert setting["runner"]["threads"] == 2


@pytest.mark.parametrize(
    "content",
    ["", "storage:\n  bucket: x\n", "caps:\n  gpu_count: 2\n", "tolerances: [1, 2]\n"],
)
def test_read_setting_rejects_bad_files(tmp_path, content):
    path = tmp_path / "bad.yml"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ValueError):
        read_setting(str(path))


def test_read_setting_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_setting(str(tmp_path / "absent.yml"))


def test_caps_with_overrides():
    caps = caps_with_overrides(Caps(), {"dense_qubits": 8})
    assert caps.dense_qubits == 8
    assert caps.superop_qubits == Caps().superop_qubits
    for bad in ({"warp": 3}, {"dense_qubits": 0}, {"dense_qubits": 2.5}, {"dense_qubits": True}):
        with pytest.raises(ValueError):
            caps_with_overrides(Caps(), bad)


def test_caps_from_env():
    environ = {CAPS_ENV_VAR: json.dumps({"maxent_qubits": 3})}
    assert caps_from_env(Caps(), environ).maxent_qubits == 3
    assert caps_from_env(Caps(), {}) == Caps()
    with pytest.raises(ValueError):
        caps_from_env(Caps(), {CAPS_ENV_VAR: "{not json"})
    with pytest.raises(ValueError):
        caps_from_env(Caps(), {CAPS_ENV_VAR: "[1, 2]"})


def test_load_settings_layers(tmp_path):
    path = tmp_path / "noiselab_setting.yml"
    path.write_text("caps:\n  dense_qubits: 10\ntolerances:\n  cptp: 1.0e-8\n", encoding="utf-8")
    environ = {CAPS_ENV_VAR: json.dumps({"dense_qubits": 9})}
    caps, tolerances, runner = load_settings(str(path), environ)
    assert caps.dense_qubits == 9
    assert tolerances.cptp == 1e-8
    assert runner == {}
    caps, tolerances, _ = load_settings(str(tmp_path / "absent.yml"), {})
    assert caps == Caps()
    assert tolerances == Tolerances()


def test_override_caps_restores():
    before = conf.CAPS
    with override_caps({"superop_qubits": 2}) as caps:
        assert caps.superop_qubits == 2
        assert conf.CAPS.superop_qubits == 2
    assert conf.CAPS is before
    with pytest.raises(RuntimeError):
        with override_caps({"superop_qubits": 3}):
            raise RuntimeError("boom")
    assert conf.CAPS is before


def test_concurrent_overrides_do_not_leak():
    started = threading.Barrier(2)

    def run(value):
        started.wait()
        seen = []
        with override_caps({"superop_qubits": value}):
            for _ in range(20):
                seen.append(conf.CAPS.superop_qubits)
                time.sleep(0.001)
        return seen

    before = conf.CAPS
    with ThreadPoolExecutor(max_workers=2) as pool:
        results = list(pool.map(run, [2, 3]))
    assert results == [[2] * 20, [3] * 20]
    assert conf.CAPS is before
