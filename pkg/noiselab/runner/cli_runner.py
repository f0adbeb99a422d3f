"""
Author: noiselab contributors
Date: 2026-09-29 09:48:12
LastEditTime: 2026-10-16 11:25:37
LastEditors: noiselab contributors
Description: Experiment configs, the preset catalog, seeded runs and the noiselab command line
FilePath: /noiselab/noiselab/runner/cli_runner.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import argparse
import difflib
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field, fields, replace
from datetime import datetime, timezone
from hashlib import sha256

import numpy as np
import pandas as pd
from loguru import logger

from noiselab.analyzer import conjecture_lab as lab
from noiselab.analyzer.entanglement import (
    emergent_entanglement,
    ent_measure,
    ent_tilde,
    negativity,
)
from noiselab.analyzer.syndrome_stats import (
    CoarseDistribution,
    coarse_distribution,
    correlation_frame,
    pair_correlation,
    pauli_mass,
    synchronization_report,
    tail_decay_check,
    weight_profile,
)
from noiselab.configs import config as conf
from noiselab.configs.data_consts import NOISE_KINDS, PRESET_NAMES
from noiselab.exceptions import (
    ConfigParseError,
    ConfigValidationError,
    NoiseLabError,
    UnknownPreset,
)
from noiselab.operators.channel_algebra import (
    DensityMatrix,
    amplitude_damping,
    bit_flip,
    conjugate_by_unitary,
    correlated_depolarizing,
    dephasing,
    depolarizing,
    identity_channel,
    pauli_unitary_channel,
    validate_cptp,
)
from noiselab.runner.report import FigureSpec, RunManifest, emit_report, write_json
from noiselab.simulator.circuit_sim import (
    Circuit,
    bell,
    empty_circuit,
    ghz,
    product_rx,
    segment_unitary,
    simulate_ideal,
)
from noiselab.simulator.noise_models import KernelSpec, detrimental_transform, standard_schedule
from noiselab.utils.utils import canonical_json, sha256_file

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
CIRCUIT_FACTORIES = ["bell", "ghz", "empty", "product_rx"]


@dataclass
class ExperimentConfig:
    experiment: str
    seed: int
    n: int = None
    circuit: object = None
    noise: dict = None
    kernel: dict = None
    trials: int = 1
    caps: dict = field(default_factory=dict)
    output_dir: str = "results"
    threads: int = 1
    params: dict = field(default_factory=dict)

    def to_dict(self):
        return dict(self.__dict__)


# ---------------------------------------------------------------------------
# config ingestion
# ---------------------------------------------------------------------------


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _check_noise(noise):
    if not isinstance(noise, dict):
        raise ConfigValidationError("noise", "must be an object with 'type' and 'p'")
    unknown = set(noise) - {"type", "p"}
    if unknown:
        raise ConfigValidationError(f"noise.{sorted(unknown)[0]}", "unknown key")
    kind = noise.get("type", "depolarizing")
    if kind not in NOISE_KINDS:
        raise ConfigValidationError("noise.type", f"must be one of {NOISE_KINDS}")
    p = noise.get("p", 0.01)
    if isinstance(p, bool) or not isinstance(p, (int, float)) or not 0 <= p <= 1:
        raise ConfigValidationError("noise.p", f"must be a probability in [0, 1], got {p!r}")
    return {"type": kind, "p": float(p)}


def _check_circuit(circuit):
    if circuit is None or circuit in CIRCUIT_FACTORIES:
        return circuit
    if isinstance(circuit, dict):
        try:
            Circuit.from_json(circuit)
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigValidationError("circuit", f"invalid circuit: {e}") from e
        return circuit
    raise ConfigValidationError("circuit", f"must be one of {CIRCUIT_FACTORIES} or a circuit object")


def validate_config(payload):
    """Build an ExperimentConfig from a parsed json object."""
    if not isinstance(payload, dict):
        raise ConfigValidationError("<root>", "config must be a json object")
    known = {f.name for f in fields(ExperimentConfig)}
    for key in payload:
        if key not in known:
            raise ConfigValidationError(key, "unknown key")
    experiment = payload.get("experiment")
    if experiment is None:
        raise ConfigValidationError("experiment", "missing")
    if experiment not in PRESETS:
        raise ConfigValidationError("experiment", f"unknown preset {experiment!r}, expected one of {PRESET_NAMES}")
    seed = payload.get("seed")
    if not _is_int(seed) or seed < 0 or seed >= 2**64:
        raise ConfigValidationError("seed", "a 64-bit nonnegative integer seed is mandatory")
    trials = payload.get("trials", 1)
    if not _is_int(trials) or trials < 1:
        raise ConfigValidationError("trials", "must be an integer >= 1")
    threads = payload.get("threads", 1)
    if not _is_int(threads) or threads < 1:
        raise ConfigValidationError("threads", "must be an integer >= 1")
    caps = payload.get("caps") or {}
    try:
        effective = conf.caps_with_overrides(conf.CAPS, caps)
    except ValueError as e:
        raise ConfigValidationError("caps", str(e)) from e
    n = payload.get("n")
    preset = PRESETS[experiment]
    if n is not None:
        if not _is_int(n) or n < 1:
            raise ConfigValidationError("n", "must be a positive integer")
        cap = getattr(effective, preset.cap)
        if n > cap:
            raise ConfigValidationError("n", f"n={n} exceeds cap {preset.cap}={cap}")
    noise = _check_noise(payload["noise"]) if payload.get("noise") is not None else None
    kernel = payload.get("kernel")
    if kernel is not None:
        try:
            KernelSpec.from_json(kernel)
        except (TypeError, ValueError) as e:
            raise ConfigValidationError("kernel", str(e)) from e
    params = payload.get("params") or {}
    if not isinstance(params, dict):
        raise ConfigValidationError("params", "must be an object")
    output_dir = payload.get("output_dir", "results")
    if not isinstance(output_dir, str):
        raise ConfigValidationError("output_dir", "must be a string")
    return ExperimentConfig(
        experiment=experiment,
        seed=seed,
        n=n,
        circuit=_check_circuit(payload.get("circuit")),
        noise=noise,
        kernel=kernel,
        trials=trials,
        caps=dict(caps),
        output_dir=output_dir,
        threads=threads,
        params=dict(params),
    )


def load_config(path):
    """Read and validate an experiment config json file."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except FileNotFoundError as e:
        raise ConfigParseError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigParseError(f"{path} is not valid json: {e}") from e
    return validate_config(payload)


def _parse_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(payload, assignments):
    """Apply ``key=value`` strings; dotted keys address nested objects."""
    payload = json.loads(json.dumps(payload))
    for item in assignments or []:
        if "=" not in item:
            raise ConfigValidationError(item, "override must look like key=value")
        key, text = item.split("=", 1)
        parts = key.strip().split(".")
        node = payload
        for part in parts[:-1]:
            child = node.get(part)
            if child is None:
                child = node[part] = {}
            if not isinstance(child, dict):
                raise ConfigValidationError(key, f"'{part}' is not an object")
            node = child
        node[parts[-1]] = _parse_value(text)
    return payload


# ---------------------------------------------------------------------------
# experiment pieces
# ---------------------------------------------------------------------------


NOISE_FACTORIES = {
    "depolarizing": depolarizing,
    "correlated_depolarizing": correlated_depolarizing,
    "dephasing": dephasing,
    "bit_flip": bit_flip,
    "amplitude_damping": amplitude_damping,
    "identity": lambda n, p: identity_channel(n),
}


def make_noise(noise, n, default_p):
    noise = noise or {"type": "depolarizing", "p": default_p}
    return NOISE_FACTORIES[noise["type"]](n, noise["p"])


def make_circuit(spec, n, default="ghz"):
    spec = default if spec is None else spec
    if isinstance(spec, dict):
        return Circuit.from_json(spec)
    if spec == "bell":
        return bell()
    if spec == "ghz":
        return ghz(n)
    if spec == "empty":
        return empty_circuit(n, n)
    return product_rx(n, 0.3)


def make_kernel(kernel):
    return KernelSpec() if kernel is None else KernelSpec.from_json(kernel)


def _ghz_state(n):
    return simulate_ideal(ghz(n), DensityMatrix.basis_state(n, 0)).final


def _bell_detrimental(cfg):
    p = (cfg.noise or {}).get("p", 0.05)
    c = make_circuit(cfg.circuit, 2, default="bell")
    channel = make_noise(cfg.noise, c.n, 0.05)
    base = standard_schedule(c, channel)
    schedule = detrimental_transform(c, base, make_kernel(cfg.kernel), threads=cfg.threads)
    cycles = []
    for t, e in enumerate(schedule.derived, start=1):
        cd = coarse_distribution(pauli_mass(e))
        check = validate_cptp(e)
        cycles.append({
            "t": t,
            "alpha": weight_profile(pauli_mass(e)).alpha,
            "cor_01": pair_correlation(cd, 0, 1).value,
            "cptp": check.passed,
            "min_choi_eigenvalue": check.metrics.get("min_choi_eigenvalue"),
        })
    fresh = schedule.derived[-1]
    cd = coarse_distribution(pauli_mass(fresh))
    baseline = coarse_distribution(pauli_mass(base[-1]))
    scan = lab.conjecture_a_scan(c, base, make_kernel(cfg.kernel), channel="fresh")
    record = {
        "p": p,
        "cor_01": pair_correlation(cd, 0, 1).value,
        "baseline_cor_01": pair_correlation(baseline, 0, 1).value,
        "cycles": cycles,
        "conjecture_a": scan.to_dict(),
    }
    wp = weight_profile(pauli_mass(fresh))
    tables = {"weight_profile": wp.to_frame(), "pair_correlation": correlation_frame(cd)}
    figures = [FigureSpec("weight_profile", "weight_profile", "s", "f", title="fresh noise E'_T")]
    return record, tables, figures


def _ghz_sync(cfg):
    n = cfg.n or 5
    delta = cfg.params.get("delta", 0.1)
    margin = cfg.params.get("margin", 0.1)
    e0 = make_noise(cfg.noise, n, 0.01)
    c = ghz(n)
    moved = conjugate_by_unitary(e0, segment_unitary(c, 0, c.T))
    record, tables = {"n": n}, {}
    for label, e in (("unconjugated", e0), ("conjugated", moved)):
        wp = weight_profile(pauli_mass(e))
        record[label] = {
            "alpha": wp.alpha,
            "sync": synchronization_report(wp, delta).to_dict(),
            "decay": tail_decay_check(wp, margin).to_dict(),
        }
        tables[f"weight_profile_{label}"] = wp.to_frame()
    figures = [
        FigureSpec(f"weight_profile_{label}", f"weight_profile_{label}", "s", "f", title=label)
        for label in ("unconjugated", "conjugated")
    ]
    return record, tables, figures


def _haar_weight(cfg):
    n = cfg.n or 6
    report = lab.run_random_unitary_sync(
        n,
        cfg.params.get("target_alpha", 0.3),
        cfg.trials,
        cfg.seed,
        env_qubits=cfg.params.get("env_qubits", 0),
        threads=cfg.threads,
    )
    frame = pd.DataFrame({"s": np.arange(n + 1), "f": report.mean_profile})
    figures = [FigureSpec("weight_profile", "weight_profile", "s", "f", title="non-identity weight profile")]
    return report.to_dict(), {"weight_profile": frame}, figures


def _rate_compare(cfg):
    n_max = cfg.n or 6
    report = lab.rate_comparison(
        list(range(cfg.params.get("n_min", 1), n_max + 1)),
        (cfg.noise or {}).get("p", 0.01),
        strategies=cfg.params.get("strategies", ["basis-states"]),
        seed=cfg.seed,
    )
    frame = pd.DataFrame(report["rows"])
    figures = [FigureSpec("rate_ratio", "rates", "n", "ratio", kind="line")]
    return report, {"rates": frame}, figures


def _rate_scaling(cfg):
    n_max = cfg.n or 5
    report = lab.rate_scaling_experiment(
        cfg.params.get("family", "ghz"),
        make_kernel(cfg.kernel),
        (cfg.noise or {}).get("p", 0.02),
        range(cfg.params.get("n_min", 2), n_max + 1),
    )
    frame = pd.DataFrame(report["rows"])
    figures = [FigureSpec("alpha_scaling", "scaling", "n", "alpha", kind="line")]
    return report, {"scaling": frame}, figures


def _cor2q_search(cfg):
    eta = cfg.params.get("eta", 0.04)
    s = cfg.params.get("s", 0.2)
    n = cfg.n or 10
    two_point = lab.verify_cor2q(CoarseDistribution.synchronized(n, 0.05), eta, s)
    search = lab.search_cor2q(
        cfg.params.get("family", "mixture"), cfg.params.get("samples", 10000), cfg.seed, eta, s
    )
    record = {"two_point": two_point.to_dict(), "search": search.to_dict()}
    failures = []
    if two_point.counterexample is not None:
        failures.append("two-point distribution violates the correlated-pairs bound")
    if search.counterexamples:
        failures.append(f"{len(search.counterexamples)} counterexamples in the {search.family} search")
    if failures:
        record["failures"] = failures
    frame = pd.DataFrame([{
        "family": search.family,
        "samples": search.samples,
        "draws": search.draws,
        "satisfying": search.satisfying,
        "passed": search.passed,
        "counterexamples": len(search.counterexamples),
    }])
    return record, {"search": frame}, []


def _maxent_ent(cfg):
    n = cfg.n or 3
    states = {
        "bell": _ghz_state(2),
        f"ghz{n}": _ghz_state(n),
        "product": DensityMatrix.basis_state(n, 0),
    }
    record, rows = {}, []
    for name, rho in states.items():
        report = ent_tilde(rho)
        record[name] = {
            "ent": ent_measure(rho),
            "ent_tilde": report.ent_tilde,
            "negativity_0": negativity(rho, [0]),
            "per_subset": report.to_dict()["per_subset"],
        }
        for subset, value in report.per_subset.items():
            rows.append({"state": name, "subset": ",".join(map(str, subset)), "ent": value})
    return record, {"ent_subsets": pd.DataFrame(rows)}, []


def _emergent_ghz(cfg):
    n = cfg.n or 3
    budget = cfg.params.get("budget", 20)
    ghz_result = emergent_entanglement(_ghz_state(n), 0, 1, budget=budget, seed=cfg.seed, threads=cfg.threads)
    product = emergent_entanglement(
        DensityMatrix.basis_state(n, 0), 0, 1, budget=budget, seed=cfg.seed, threads=cfg.threads
    )
    record = {"ghz": ghz_result.to_dict(), "product": product.to_dict()}
    frame = pd.DataFrame([
        {"state": "ghz", "value": ghz_result.value},
        {"state": "product", "value": product.value},
    ])
    return record, {"emergent": frame}, []


def _dnoise_check(cfg):
    n = cfg.n or 1
    rho = DensityMatrix.basis_state(n, 0)
    p = (cfg.noise or {}).get("p", 0.1)
    candidates = {
        "depolarizing": depolarizing(n, p),
        "dephasing": dephasing(n, p),
        "pauli_x": pauli_unitary_channel("X" * n),
    }
    budget = cfg.params.get("budget", 100)
    record = {name: lab.dnoise_score(e, rho, budget=budget, seed=cfg.seed).to_dict()
              for name, e in candidates.items()}
    frame = pd.DataFrame([{"channel": k, "score": v["value"]} for k, v in record.items()])
    return record, {"dnoise": frame}, []


def _smoothing_compare(cfg):
    c = make_circuit(cfg.circuit, cfg.n or 2, default="bell")
    base = standard_schedule(c, make_noise(cfg.noise, c.n, 0.05))
    report = lab.smoothing_comparison(c, base, make_kernel(cfg.kernel))
    frame = pd.DataFrame({"t": np.arange(len(report["per_cycle"])), "trace_distance": report["per_cycle"]})
    figures = [FigureSpec("smoothing_distance", "smoothing", "t", "trace_distance", kind="line")]
    return report, {"smoothing": frame}, figures


@dataclass(frozen=True)
class Preset:
    description: str
    run: object
    cap: str


PRESETS = {
    "bell-detrimental": Preset("Bell circuit under detrimental noise: fault correlation of E'_2", _bell_detrimental, "superop_qubits"),
    "ghz-sync": Preset("synchronization of dep noise conjugated by the GHZ circuit", _ghz_sync, "dense_qubits"),
    "haar-weight": Preset("weight profiles of conditioned random-unitary noise", _haar_weight, "haar_qubits"),
    "rate-compare": Preset("independent vs correlated depolarizing: alpha and trace rates", _rate_compare, "rate_qubits"),
    "rate-scaling": Preset("alpha of E'_T across GHZ sizes", _rate_scaling, "superop_qubits"),
    "cor2q-search": Preset("correlated-pairs proposition: two-point check and random search", _cor2q_search, "enumeration_qubits"),
    "maxent-ent": Preset("max-entropy completions: ENT and its subset sum", _maxent_ent, "maxent_qubits"),
    "emergent-ghz": Preset("emergent entanglement of a GHZ pair", _emergent_ghz, "emergent_qubits"),
    "dnoise-check": Preset("D-noise scores of three channels at |0>", _dnoise_check, "dnoise_qubits"),
    "smoothing-compare": Preset("detrimental vs reverse-smoothed noisy runs", _smoothing_compare, "superop_qubits"),
}


def list_presets():
    return {name: PRESETS[name].description for name in PRESET_NAMES}


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def _now():
    return datetime.now(timezone.utc).isoformat()


def run_config(cfg, out_dir=None):
    """Execute one validated config and write its result files."""
    out_dir = out_dir or cfg.output_dir
    os.makedirs(out_dir, exist_ok=True)
    config_path = write_json(os.path.join(out_dir, "config.json"), cfg.to_dict())
    manifest = RunManifest(config=cfg.to_dict(), started=_now())
    logger.info(f"running {cfg.experiment} (seed={cfg.seed}, threads={cfg.threads}) into {out_dir}")
    try:
        with conf.override_caps(cfg.caps):
            record, tables, figures = PRESETS[cfg.experiment].run(cfg)
    except Exception as e:
        logger.error(f"{cfg.experiment} failed: {e}")
        manifest.exit_code = EXIT_FAILED
        manifest.error = f"{type(e).__name__}: {e}"
        record, tables, figures = {"error": manifest.error}, {}, []
    else:
        failures = record.get("failures") if isinstance(record, dict) else None
        if failures:
            logger.error(f"{cfg.experiment} failed its checks: {failures}")
            manifest.exit_code = EXIT_FAILED
            manifest.error = "; ".join(failures)
    files = emit_report(record, out_dir, tables, figures)
    files["config.json"] = sha256_file(config_path)
    manifest.files = dict(sorted(files.items()))
    manifest.finished = _now()
    manifest.write(out_dir)
    return manifest


def run_preset(name, overrides=None, out_dir=None, seed=None):
    """Run a catalog preset; ``overrides`` is a dict or a list of key=value strings."""
    if name not in PRESETS:
        raise UnknownPreset(f"unknown preset {name!r}, expected one of {PRESET_NAMES}")
    payload = {"experiment": name}
    if seed is not None:
        payload["seed"] = seed
    if isinstance(overrides, dict):
        payload.update(overrides)
    else:
        payload = apply_overrides(payload, overrides)
    cfg = validate_config(payload)
    return run_config(cfg, out_dir)


@dataclass
class DeterminismReport:
    passed: bool
    digests: dict
    diff: str = ""

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return dict(self.__dict__)


def verify_determinism(cfg, thread_counts=(1, 4, 8)):
    """Run ``cfg`` once per thread count and compare results.json bytes."""
    if isinstance(cfg, str):
        cfg = load_config(cfg)
    outputs, digests = {}, {}
    for threads in thread_counts:
        with tempfile.TemporaryDirectory(prefix="noiselab-") as tmp:
            run_config(replace(cfg, threads=threads), tmp)
            with open(os.path.join(tmp, "results.json"), "rb") as f:
                outputs[threads] = f.read()
        digests[threads] = sha256(outputs[threads]).hexdigest()
    first = thread_counts[0]
    for threads in thread_counts[1:]:
        if outputs[threads] != outputs[first]:
            diff = "\n".join(list(difflib.unified_diff(
                outputs[first].decode().splitlines(),
                outputs[threads].decode().splitlines(),
                f"threads={first}", f"threads={threads}", lineterm="",
            ))[:40])
            logger.warning(f"results differ between {first} and {threads} threads")
            return DeterminismReport(False, digests, diff)
    return DeterminismReport(True, digests)


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="noiselab", description="adversarial-noise experiments")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a preset or a config file")
    run.add_argument("target", help="preset name or path to a config .json")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--out", default=None, help="output directory")
    run.add_argument("--threads", type=int, default=None)
    run.add_argument("--set", dest="assignments", action="append", default=[], metavar="KEY=VALUE")

    sub.add_parser("list-presets", help="show the preset catalog")

    verify = sub.add_parser("verify-determinism", help="compare results across thread counts")
    verify.add_argument("config")
    verify.add_argument("--threads", type=int, nargs="+", default=[1, 4, 8])
    return parser


def _configure_logging(verbose):
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "INFO")


def _config_payload(target, args):
    if target.endswith(".json") or os.path.exists(target):
        try:
            with open(target, "r", encoding="utf-8") as f:
                payload = json.load(f)
        except FileNotFoundError as e:
            raise ConfigParseError(f"config file not found: {target}") from e
        except json.JSONDecodeError as e:
            raise ConfigParseError(f"{target} is not valid json: {e}") from e
    else:
        if target not in PRESETS:
            raise UnknownPreset(f"unknown preset {target!r}, expected one of {PRESET_NAMES}")
        payload = {"experiment": target}
    if args.seed is not None:
        payload["seed"] = args.seed
    if args.threads is not None:
        payload["threads"] = args.threads
    return apply_overrides(payload, args.assignments)


def main(argv=None):
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        if args.command == "list-presets":
            for name, description in list_presets().items():
                print(f"{name:20s} {description}")
            return EXIT_OK
        if args.command == "verify-determinism":
            report = verify_determinism(load_config(args.config), tuple(args.threads))
            print(canonical_json(report.to_dict()), end="")
            return EXIT_OK if report.passed else EXIT_FAILED
        cfg = validate_config(_config_payload(args.target, args))
        manifest = run_config(cfg, args.out)
        return manifest.exit_code
    except (ConfigParseError, ConfigValidationError, UnknownPreset) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except NoiseLabError as e:
        logger.error(str(e))
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
