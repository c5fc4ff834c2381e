"""Batch experiment runner.

Reads a JSON config, builds the backend, operator and test function,
runs the spectral-radius pipeline, and writes a machine-readable report
plus one flat per-n table per norm exponent.  Outputs are byte-for-byte
reproducible for a fixed config (fixed seed, fixed reduction order);
wall-clock timing goes to stderr only so it cannot perturb the report.

Config schema (all unknown keys are errors):

    {
      "group":      {"kind": "torus", "dimension": 1} | {"kind": "su2"},
      "cutoff":     int >= 0,
      "bandlimit":  int >= 2 * cutoff,
      "operator":   [{"exponents": [int, ...], "re": float, "im": float}, ...],
      "function":   {"preset": name, "params": {...}}
                    | {"coefficients": [{"weight": w, "matrix": [[re, im], ...]}]},
      "p":          [1, 2, "inf", ...]          (default [2]),
      "n_max":      int >= 1                    (default 20),
      "tau_rel":    float in (0, 1)             (default 1e-10),
      "probes":     [{"re": float, "im": float}, ...]  (default []),
      "output_dir": str,
      "seed":       int >= 0                    (default 0)
    }

The environment variable PETERWEYL_OUTPUT_DIR, when set, overrides
"output_dir"; no other environment override exists.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .central import CentralElement
from .fourier import (
    BandLimitError,
    FourierCoefficients,
    forward_transform,
    inverse_transform,
)
from .groups import make_group
from .presets import build_preset, list_presets
from .spectral import OperatorAction, radius_sequence, resolvent_probe, sandwich_bounds


class ConfigError(ValueError):
    """Invalid configuration; message carries the offending field path."""


def _fail(path, message):
    raise ConfigError(f"{path}: {message}")


def _expect_map(value, path, allowed):
    if not isinstance(value, dict):
        _fail(path, "expected an object")
    unknown = set(value) - set(allowed)
    if unknown:
        _fail(path, f"unknown key {sorted(unknown)[0]!r}")
    return value


def _expect_int(value, path, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        _fail(path, f"must be >= {minimum}, got {value}")
    return value


def _expect_number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    return float(value)


def _parse_p(value, path):
    if isinstance(value, str):
        if value.lower() == "inf":
            return "inf"
        _fail(path, f"expected a number >= 1 or \"inf\", got {value!r}")
    p = _expect_number(value, path)
    if p < 1.0:
        _fail(path, f"norm exponent must be >= 1, got {p}")
    return p


_TOP_KEYS = (
    "group",
    "cutoff",
    "bandlimit",
    "operator",
    "function",
    "p",
    "n_max",
    "tau_rel",
    "probes",
    "output_dir",
    "seed",
)


def parse_config(doc):
    """Validate a decoded JSON document and normalize defaults."""
    _expect_map(doc, "config", _TOP_KEYS)
    for key in ("group", "cutoff", "bandlimit", "operator", "function", "output_dir"):
        if key not in doc:
            _fail(f"config.{key}", "missing required key")

    group = _expect_map(doc["group"], "config.group", ("kind", "dimension"))
    kind = group.get("kind")
    if kind not in ("torus", "su2"):
        _fail("config.group.kind", f"expected 'torus' or 'su2', got {kind!r}")
    dimension = None
    if kind == "torus":
        dimension = _expect_int(group.get("dimension", 1), "config.group.dimension", 1)
    elif "dimension" in group:
        _fail("config.group.dimension", "not applicable to su2")

    cutoff = _expect_int(doc["cutoff"], "config.cutoff", 0)
    bandlimit = _expect_int(doc["bandlimit"], "config.bandlimit", 0)
    if bandlimit < 2 * cutoff:
        _fail(
            "config.bandlimit",
            f"must be >= 2 * cutoff = {2 * cutoff} so transforms stay alias-free",
        )

    if not isinstance(doc["operator"], list) or not doc["operator"]:
        _fail("config.operator", "expected a nonempty list of coefficient records")
    arity = dimension if kind == "torus" else 1
    for i, rec in enumerate(doc["operator"]):
        path = f"config.operator[{i}]"
        _expect_map(rec, path, ("exponents", "re", "im"))
        for key in ("exponents", "re", "im"):
            if key not in rec:
                _fail(f"{path}.{key}", "missing required key")
        if not isinstance(rec["exponents"], list) or len(rec["exponents"]) != arity:
            _fail(f"{path}.exponents", f"expected a list of {arity} integers")
        for j, e in enumerate(rec["exponents"]):
            _expect_int(e, f"{path}.exponents[{j}]", 0)
        _expect_number(rec["re"], f"{path}.re")
        _expect_number(rec["im"], f"{path}.im")

    function = doc["function"]
    if not isinstance(function, dict):
        _fail("config.function", "expected an object")
    if "preset" in function:
        _expect_map(function, "config.function", ("preset", "params"))
        if not isinstance(function["preset"], str):
            _fail("config.function.preset", "expected a preset name")
        if "params" in function and not isinstance(function["params"], dict):
            _fail("config.function.params", "expected an object")
    elif "coefficients" in function:
        _expect_map(function, "config.function", ("coefficients",))
        if not isinstance(function["coefficients"], list):
            _fail("config.function.coefficients", "expected a list of records")
        for i, rec in enumerate(function["coefficients"]):
            path = f"config.function.coefficients[{i}]"
            _expect_map(rec, path, ("weight", "matrix"))
            for key in ("weight", "matrix"):
                if key not in rec:
                    _fail(f"{path}.{key}", "missing required key")
    else:
        _fail("config.function", "expected either 'preset' or 'coefficients'")

    p_list = doc.get("p", [2])
    if not isinstance(p_list, list) or not p_list:
        _fail("config.p", "expected a nonempty list")
    p_values = [_parse_p(v, f"config.p[{i}]") for i, v in enumerate(p_list)]

    n_max = _expect_int(doc.get("n_max", 20), "config.n_max", 1)
    tau_rel = _expect_number(doc.get("tau_rel", 1e-10), "config.tau_rel")
    if not 0.0 < tau_rel < 1.0:
        _fail("config.tau_rel", f"must lie in (0, 1), got {tau_rel}")

    probes = doc.get("probes", [])
    if not isinstance(probes, list):
        _fail("config.probes", "expected a list")
    z_values = []
    for i, rec in enumerate(probes):
        path = f"config.probes[{i}]"
        _expect_map(rec, path, ("re", "im"))
        z_values.append(
            complex(
                _expect_number(rec.get("re", 0.0), f"{path}.re"),
                _expect_number(rec.get("im", 0.0), f"{path}.im"),
            )
        )

    if not isinstance(doc["output_dir"], str) or not doc["output_dir"]:
        _fail("config.output_dir", "expected a nonempty string")
    seed = _expect_int(doc.get("seed", 0), "config.seed", 0)

    return {
        "kind": kind,
        "dimension": dimension,
        "cutoff": cutoff,
        "bandlimit": bandlimit,
        "operator": doc["operator"],
        "function": function,
        "p_values": p_values,
        "n_max": n_max,
        "tau_rel": tau_rel,
        "probes": z_values,
        "output_dir": doc["output_dir"],
        "seed": seed,
    }


def _build_function(cfg, model):
    spec = cfg["function"]
    if "preset" in spec:
        rng = np.random.default_rng(cfg["seed"])
        phi = build_preset(
            spec["preset"], model, cfg["cutoff"], spec.get("params"), rng
        )
    else:
        phi = FourierCoefficients.from_records(model, spec["coefficients"])
    if phi.band() > cfg["cutoff"]:
        raise ConfigError(
            f"config.function: band {phi.band()} exceeds cutoff {cfg['cutoff']}"
        )
    return phi


def _p_label(p):
    if p == "inf":
        return "inf"
    return f"{p:g}"


def run_experiment(cfg, raw_text):
    """Execute one config; returns (report dict, {filename: tsv text})."""
    model = make_group(cfg["kind"], cfg["dimension"])
    grid = model.haar_quadrature(cfg["bandlimit"])
    phi = _build_function(cfg, model)
    element = CentralElement.from_records(model.generator_count, cfg["operator"])
    action = OperatorAction(model, element)

    # transform self-check: sample, re-analyze, compare
    sampled = inverse_transform(phi, grid)
    recovered = forward_transform(sampled, model.enumerate_weights(cfg["cutoff"]))
    roundtrip = 0.0
    for lam, mat in recovered.entries.items():
        ref = phi.entries.get(lam, np.zeros_like(mat))
        roundtrip = max(roundtrip, float(np.max(np.abs(mat - ref))))

    spectral = []
    bounds = []
    tables = {}
    for p in cfg["p_values"]:
        report = radius_sequence(
            action, phi, p, cfg["n_max"], grid, tau_rel=cfg["tau_rel"]
        )
        spectral.append(report.to_dict())
        check = sandwich_bounds(
            action, phi, p, min(cfg["n_max"], 10), grid, tau_rel=cfg["tau_rel"]
        )
        bounds.append(check.to_dict())
        lines = ["n\tr_n\tsandwich_lower\tsandwich_upper"]
        for i in range(report.n_max):
            lines.append(
                f"{i + 1}\t{report.r[i]!r}\t{report.sandwich_lower[i]!r}"
                f"\t{report.sandwich_upper[i]!r}"
            )
        tables[f"radius_p{_p_label(p)}.tsv"] = "\n".join(lines) + "\n"

    probe_rows = []
    for z in cfg["probes"]:
        probe = resolvent_probe(action, phi, z, grid, tau_rel=cfg["tau_rel"])
        probe_rows.append(
            {
                "z": [z.real, z.imag],
                "distance_to_spectrum": probe.distance_to_spectrum,
                "residual_sup": probe.residual_sup,
            }
        )

    report = {
        "tool": "peterweyl",
        "version": __version__,
        "config_echo": raw_text,
        "group": {"kind": cfg["kind"], "dimension": cfg["dimension"]},
        "cutoff": cfg["cutoff"],
        "bandlimit": cfg["bandlimit"],
        "roundtrip_max_error": roundtrip,
        "spectral": spectral,
        "bounds": bounds,
        "probes": probe_rows,
    }
    return report, tables


def _cmd_run(config_path):
    raw_text = Path(config_path).read_text()
    try:
        doc = json.loads(raw_text)
    except json.JSONDecodeError as exc:
        print(f"config: invalid JSON: {exc}", file=sys.stderr)
        return 2
    try:
        cfg = parse_config(doc)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2

    out_dir = Path(os.environ.get("PETERWEYL_OUTPUT_DIR") or cfg["output_dir"])
    started = time.perf_counter()
    try:
        report, tables = run_experiment(cfg, raw_text)
    except (ConfigError, BandLimitError, ValueError) as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - started

    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / "report.json"
    report_path.write_bytes(
        (json.dumps(report, sort_keys=True, indent=2) + "\n").encode()
    )
    for name, text in sorted(tables.items()):
        (out_dir / name).write_bytes(text.encode())
    print(report_path)
    print(f"run completed in {elapsed:.2f}s", file=sys.stderr)
    return 0


def _cmd_validate(config_path):
    raw_text = Path(config_path).read_text()
    try:
        doc = json.loads(raw_text)
    except json.JSONDecodeError as exc:
        print(f"config: invalid JSON: {exc}", file=sys.stderr)
        return 2
    try:
        parse_config(doc)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    print("OK")
    return 0


def _cmd_list_presets():
    for name, description in list_presets():
        print(f"{name}: {description}")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="peterweyl",
        description="spectral-radius experiments on compact groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="execute a config and write reports")
    run_p.add_argument("config", help="path to the JSON config")
    val_p = sub.add_parser("validate", help="check a config without running")
    val_p.add_argument("config", help="path to the JSON config")
    sub.add_parser("list-presets", help="list available function presets")
    args = parser.parse_args(argv)

    if args.command == "run":
        return _cmd_run(args.config)
    if args.command == "validate":
        return _cmd_validate(args.config)
    return _cmd_list_presets()


if __name__ == "__main__":
    sys.exit(main())
