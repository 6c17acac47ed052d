"""Batch driver: load a scenario config, run suites, write reports.

    sgdual run --config scenario.json --out reports/ --format csv --jobs 2
    sgdual list-suites

Exit codes: 0 all cases pass, 1 at least one case fails, 2 unusable config.
The JSON schema is strict: unknown keys anywhere are rejected, which catches
misspelled tolerance names before they silently disable a gate.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .fields import GridWindow, ModelParams
from .suites import SUITES, run_suite, suite_descriptions

__all__ = ["ScenarioConfig", "ConfigError", "main", "run"]

SCHEMA_VERSION = 1

_SOLUTION_KEYS = {"kind", "v", "x0", "orientation", "sigma", "seed"}
_NUMERIC_KEYS = {"half_width", "nsteps", "grid", "tolerances"}
_TOP_KEYS = {"schema", "model", "solution", "spectral", "numerics", "suites"}
_KNOWN_TOLERANCES = {
    "lax_residual", "halving_order", "monodromy_drift", "charge_drift", "topological",
    "riccati_scaling", "energy_gap_rel", "appendix_residual", "defect_residual",
    "l_equation", "ms_drift", "splitting", "generating_gap", "ham_shift_gap",
    "canonical", "ultralocal", "sign_control", "trig_form", "bracket_ratio_err",
    "involution",
}


class ConfigError(ValueError):
    pass


def _require_keys(mapping, allowed, context):
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)} in {context}")


@dataclass
class ScenarioConfig:
    params: ModelParams
    solution: dict
    lambdas: list
    half_width: float
    nsteps: int | None
    window: GridWindow
    tolerances: dict = dc_field(default_factory=dict)
    suites: list = dc_field(default_factory=list)

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        _require_keys(data, _TOP_KEYS, "config")
        if data.get("schema") != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema {data.get('schema')!r}; expected {SCHEMA_VERSION}")
        model = data.get("model", {})
        _require_keys(model, {"m", "beta"}, "model")
        try:
            params = ModelParams(float(model.get("m", 1.0)), float(model.get("beta", 1.0)))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        solution = dict(data.get("solution", {"kind": "vacuum"}))
        _require_keys(solution, _SOLUTION_KEYS, "solution")
        kind = solution.get("kind")
        if kind not in ("vacuum", "kink", "defect_pair"):
            raise ConfigError(f"solution kind must be vacuum|kink|defect_pair, got {kind!r}")
        if kind == "kink":
            if "v" not in solution:
                raise ConfigError("kink solution needs a velocity v")
            if not abs(float(solution["v"])) < 1.0:
                raise ConfigError("kink velocity must satisfy |v| < 1")
        if kind == "defect_pair":
            if float(solution.get("sigma", 0.0)) <= 0.0:
                raise ConfigError("defect_pair needs sigma > 0")
            if solution.get("seed", "vacuum") != "vacuum":
                raise ConfigError("only the vacuum seed is supported in configs")
        spectral = data.get("spectral", {"lambda_list": [0.5, 1.0, 2.0, 4.0]})
        _require_keys(spectral, {"lambda_list", "sweep"}, "spectral")
        if "lambda_list" in spectral:
            lambdas = [float(l) for l in spectral["lambda_list"]]
        elif "sweep" in spectral:
            sweep = spectral["sweep"]
            _require_keys(sweep, {"min", "max", "count"}, "spectral.sweep")
            lambdas = list(np.linspace(float(sweep["min"]), float(sweep["max"]), int(sweep["count"])))
        else:
            raise ConfigError("spectral needs lambda_list or sweep")
        if not lambdas or any(l == 0.0 for l in lambdas):
            raise ConfigError("spectral values must be nonzero")
        numerics = data.get("numerics", {})
        _require_keys(numerics, _NUMERIC_KEYS, "numerics")
        half_width = float(numerics.get("half_width", 30.0))
        if half_width <= 0:
            raise ConfigError("half_width must be positive")
        nsteps = numerics.get("nsteps")
        if nsteps is not None:
            nsteps = int(nsteps)
            if nsteps < 1:
                raise ConfigError("nsteps must be positive")
        grid = numerics.get("grid", {})
        _require_keys(grid, {"nx", "nt"}, "numerics.grid")
        nx = int(grid.get("nx", 16001))
        nt = int(grid.get("nt", 16001))
        if nx < 3 or nt < 3:
            raise ConfigError("grid counts must be at least 3")
        span = max(40.0, half_width)
        window = GridWindow(-span, span, -span, span, nx, nt)
        tolerances = dict(numerics.get("tolerances", {}))
        unknown = set(tolerances) - _KNOWN_TOLERANCES
        if unknown:
            raise ConfigError(f"unknown tolerance names {sorted(unknown)}")
        for key, val in tolerances.items():
            if float(val) < 0:
                raise ConfigError(f"tolerance {key} must be nonnegative")
        suites = list(data.get("suites", sorted(SUITES)))
        bad = [s for s in suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suites {bad}; available: {sorted(SUITES)}")
        return cls(params, solution, lambdas, half_width, nsteps, window, tolerances, suites)

    @classmethod
    def load(cls, path) -> "ScenarioConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)


def _run_one(args):
    name, config_data = args
    config = ScenarioConfig.from_dict(config_data)
    return name, run_suite(name, config)


def run(config_path, out_dir, fmt: str = "csv", jobs: int = 1) -> int:
    """Execute the configured suites and write one report file per suite."""
    try:
        config = ScenarioConfig.load(config_path)
        config_data = json.loads(Path(config_path).read_text())
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = sorted(config.suites)
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_run_one, [(n, config_data) for n in names]))
    else:
        results = {n: run_suite(n, config) for n in names}
    exit_code = 0
    for name in names:
        report = results[name]
        path = out / f"{name}.{fmt}"
        if fmt == "csv":
            report.write_csv(path)
        else:
            report.write_json(path)
        status = "pass" if report.passed else "FAIL"
        print(f"[{status}] {name}: {len(report.cases)} cases -> {path}")
        for case in report.failing():
            print(f"    failing case {case.case}: gap={case.gap:.3e} tolerance={case.tolerance:.3e}")
            exit_code = 1
    return exit_code


def list_suites() -> str:
    lines = []
    for name in sorted(SUITES):
        lines.append(f"{name:24s} {suite_descriptions()[name]}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="sgdual", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run verification suites from a JSON config")
    runp.add_argument("--config", required=True)
    runp.add_argument("--out", required=True)
    runp.add_argument("--format", choices=("csv", "json"), default="csv")
    runp.add_argument("--jobs", type=int, default=1)
    sub.add_parser("list-suites", help="print the suite catalogue")
    args = parser.parse_args(argv)
    if args.command == "list-suites":
        print(list_suites())
        return 0
    return run(args.config, args.out, args.format, args.jobs)


if __name__ == "__main__":
    sys.exit(main())
