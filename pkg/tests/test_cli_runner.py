"""
Author: noiselab contributors
Date: 2026-09-30 10:15:33
LastEditTime: 2026-10-16 12:02:48
LastEditors: noiselab contributors
Description: Test for experiment configs, preset runs, manifests and the noiselab command line
FilePath: /noiselab/tests/test_cli_runner.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import json

import pandas as pd
import pytest

from noiselab.analyzer import conjecture_lab
from noiselab.analyzer.conjecture_lab import PropositionReport
from noiselab.configs.data_consts import PRESET_NAMES
from noiselab.exceptions import ConfigParseError, ConfigValidationError, UnknownPreset
from noiselab.runner.cli_runner import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    PRESETS,
    apply_overrides,
    list_presets,
    load_config,
    main,
    run_preset,
    validate_config,
    verify_determinism,
)
from noiselab.utils.utils import sha256_file

# small settings so that every preset finishes quickly
SMOKE_OVERRIDES = {
    "bell-detrimental": {},
    "ghz-sync": {"n": 4},
    "haar-weight": {"n": 2, "trials": 2},
    "rate-compare": {"n": 3},
    "rate-scaling": {"n": 3},
    "cor2q-search": {"params": {"samples": 30}},
    "maxent-ent": {"n": 3},
    "emergent-ghz": {"n": 3, "params": {"budget": 3}},
    "dnoise-check": {"params": {"budget": 10}},
    "smoothing-compare": {},
}


def _read_results(out_dir):
    with open(out_dir / "results.json", encoding="utf-8") as f:
        return json.load(f)["results"]


def test_minimal_config_defaults():
    cfg = validate_config({"experiment": "bell-detrimental", "seed": 1})
    assert cfg.trials == 1
    assert cfg.threads == 1
    assert cfg.caps == {}
    assert cfg.output_dir == "results"


@pytest.mark.parametrize(
    "payload, field",
    [
        ({"experiment": "bell-detrimental", "seed": 1, "noise": {"type": "depolarizing", "p": -0.1}}, "noise.p"),
        ({"experiment": "bell-detrimental"}, "seed"),
        ({"experiment": "bell-detrimental", "seed": -3}, "seed"),
        ({"experiment": "bell-detrimental", "seed": 1, "n": 7}, "n"),
        ({"experiment": "bell-detrimental", "seed": 1, "colour": "red"}, "colour"),
        ({"experiment": "warp-drive", "seed": 1}, "experiment"),
        ({"experiment": "bell-detrimental", "seed": 1, "trials": 0}, "trials"),
        ({"experiment": "bell-detrimental", "seed": 1, "kernel": {"kind": "window"}}, "kernel"),
        ({"experiment": "bell-detrimental", "seed": 1, "caps": {"dense_qubits": -1}}, "caps"),
        ({"experiment": "bell-detrimental", "seed": 1, "noise": {"type": "leakage"}}, "noise.type"),
    ],
)
def test_validate_config_errors(payload, field):
    with pytest.raises(ConfigValidationError) as info:
        validate_config(payload)
    assert info.value.field == field


def test_n_above_cap_names_the_cap():
    with pytest.raises(ConfigValidationError, match="superop_qubits"):
        validate_config({"experiment": "bell-detrimental", "seed": 1, "n": 7})
    cfg = validate_config({"experiment": "bell-detrimental", "seed": 1, "n": 7, "caps": {"superop_qubits": 8}})
    assert cfg.n == 7


def test_load_config(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"experiment": "rate-compare", "seed": 5, "n": 3}), encoding="utf-8")
    assert load_config(str(path)).n == 3
    broken = tmp_path / "broken.json"
    broken.write_text("{experiment:", encoding="utf-8")
    with pytest.raises(ConfigParseError):
        load_config(str(broken))
    with pytest.raises(ConfigParseError):
        load_config(str(tmp_path / "absent.json"))


def test_apply_overrides():
    payload = apply_overrides(
        {"experiment": "ghz-sync", "noise": {"type": "depolarizing"}},
        ["noise.p=0.2", "params.delta=0.05", "circuit=bell", "n=4"],
    )
    assert payload["noise"] == {"type": "depolarizing", "p": 0.2}
    assert payload["params"] == {"delta": 0.05}
    assert payload["circuit"] == "bell"
    assert payload["n"] == 4
    with pytest.raises(ConfigValidationError):
        apply_overrides({}, ["no-equals-sign"])
    with pytest.raises(ConfigValidationError):
        apply_overrides({"n": 3}, ["n.x=1"])


def test_list_presets():
    assert list(list_presets()) == PRESET_NAMES
    assert set(PRESETS) == set(PRESET_NAMES)


def test_bell_detrimental_preset(tmp_path):
    manifest = run_preset("bell-detrimental", out_dir=str(tmp_path), seed=7)
    assert manifest.exit_code == EXIT_OK
    results = _read_results(tmp_path)
    assert results["cor_01"] > 0
    assert results["baseline_cor_01"] == pytest.approx(0.0, abs=1e-12)
    assert all(row["cptp"] for row in results["cycles"])
    profile = pd.read_csv(tmp_path / "tables" / "weight_profile.csv")
    assert list(profile.columns) == ["s", "f"]
    assert len(profile) == 3
    corr = pd.read_csv(tmp_path / "tables" / "pair_correlation.csv")
    assert corr.shape == (2, 2)
    assert corr.isna().values.diagonal().all()
    assert (tmp_path / "figures" / "weight_profile.svg").exists()
    for rel, digest in manifest.files.items():
        assert sha256_file(str(tmp_path / rel)) == digest
    assert "config.json" in manifest.files
    written = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
    assert written["files"] == manifest.files


@pytest.mark.slow
@pytest.mark.parametrize("name", PRESET_NAMES)
def test_every_preset_runs(tmp_path, name):
    manifest = run_preset(name, overrides=SMOKE_OVERRIDES[name], out_dir=str(tmp_path), seed=3)
    assert manifest.exit_code == EXIT_OK, manifest.error
    assert "results.json" in manifest.files


def test_failed_run_is_recorded(tmp_path):
    manifest = run_preset(
        "bell-detrimental", overrides={"caps": {"dense_qubits": 1}}, out_dir=str(tmp_path), seed=1
    )
    assert manifest.exit_code == EXIT_FAILED
    assert manifest.error.startswith("CapExceeded")
    assert "error" in _read_results(tmp_path)


def test_counterexample_fails_the_run(tmp_path, monkeypatch):
    def refuted(cd, eta, s):
        return PropositionReport(True, False, {}, {"n": cd.n})

    monkeypatch.setattr(conjecture_lab, "verify_cor2q", refuted)
    manifest = run_preset(
        "cor2q-search", overrides={"params": {"samples": 3}}, out_dir=str(tmp_path), seed=1
    )
    assert manifest.exit_code == EXIT_FAILED
    assert "3 counterexamples" in manifest.error
    results = _read_results(tmp_path)
    assert [c["trial"] for c in results["search"]["counterexamples"]] == [0, 1, 2]
    assert results["failures"]
    search = pd.read_csv(tmp_path / "tables" / "search.csv")
    assert search.loc[0, "counterexamples"] == 3
    assert search.loc[0, "samples"] == 3


def test_unknown_preset():
    with pytest.raises(UnknownPreset):
        run_preset("warp-drive", seed=1)


def test_verify_determinism():
    cfg = validate_config({"experiment": "haar-weight", "seed": 11, "n": 2, "trials": 3})
    report = verify_determinism(cfg, thread_counts=(1, 4))
    assert report.passed
    assert len(set(report.digests.values())) == 1


def test_main_exit_codes(tmp_path, capsys):
    assert main(["list-presets"]) == EXIT_OK
    assert "bell-detrimental" in capsys.readouterr().out
    assert main(["run", "warp-drive", "--seed", "1"]) == EXIT_USAGE
    assert main(["run", "bell-detrimental"]) == EXIT_USAGE
    assert main(["run", "bell-detrimental", "--seed", "1", "--set", "noise.p=-1"]) == EXIT_USAGE
    out = tmp_path / "run"
    assert main(["run", "rate-compare", "--seed", "2", "--set", "n=3", "--out", str(out)]) == EXIT_OK
    assert (out / "manifest.json").exists()
    assert main(["run", str(tmp_path / "absent.json")]) == EXIT_USAGE


def test_main_runs_config_file(tmp_path):
    path = tmp_path / "rates.json"
    path.write_text(json.dumps({"experiment": "rate-compare", "seed": 4, "n": 2}), encoding="utf-8")
    out = tmp_path / "out"
    assert main(["run", str(path), "--out", str(out), "--threads", "2"]) == EXIT_OK
    rows = _read_results(out)["rows"]
    assert [row["n"] for row in rows] == [1, 2]
    assert main(["verify-determinism", str(path), "--threads", "1", "2"]) == EXIT_OK
