import json

import pytest

from sgdual.cli import ConfigError, ScenarioConfig, list_suites, main, run
from sgdual.suites import SUITES, run_suite


BASE = {
    "schema": 1,
    "model": {"m": 1.0, "beta": 1.0},
    "solution": {"kind": "vacuum"},
    "spectral": {"lambda_list": [0.5, 2.0]},
    "numerics": {"half_width": 30.0, "grid": {"nx": 8001, "nt": 8001}},
}


def write_config(tmp_path, overrides=None, **numerics):
    data = json.loads(json.dumps(BASE))
    if overrides:
        data.update(overrides)
    if numerics:
        data["numerics"].update(numerics)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return path


def test_suite_catalogue_has_eight_entries():
    assert len(SUITES) == 8
    listing = list_suites()
    assert "appendix" in listing
    assert "energy-identities" in listing
    assert "half-line" in listing  # the appendix suite names the identity it checks
    assert "H_S" in listing and "H_T" in listing


def test_vacuum_config_all_suites_pass(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "reports"
    assert run(cfg, out, "csv", jobs=1) == 0
    files = sorted(p.name for p in out.iterdir())
    assert files == sorted(f"{s}.csv" for s in SUITES)


def test_vacuum_gaps_are_tiny(tmp_path):
    config = ScenarioConfig.from_dict(BASE)
    for name in ("lax-residual", "monodromy-conservation", "energy-identities"):
        rep = run_suite(name, config)
        assert rep.passed
        assert all(c.gap < 1e-10 for c in rep.cases)


def test_kink_config_passes(tmp_path):
    cfg = write_config(tmp_path, overrides={"solution": {"kind": "kink", "v": 0.4}})
    assert run(cfg, tmp_path / "rep", "csv") == 0


def test_defect_pair_config_passes_with_json_and_jobs(tmp_path):
    cfg = write_config(
        tmp_path,
        overrides={
            "solution": {"kind": "defect_pair", "sigma": 2.0},
            "suites": ["defect", "involution"],
        },
    )
    assert run(cfg, tmp_path / "rep", "json", jobs=2) == 0
    payload = json.loads((tmp_path / "rep" / "defect.json").read_text())
    assert payload["passed"] is True
    assert payload["metadata"]["c-candidate"] == "ratio"


def test_zero_tolerance_designed_failure(tmp_path):
    cfg = write_config(
        tmp_path,
        overrides={"solution": {"kind": "kink", "v": 0.4}, "suites": ["monodromy-conservation"]},
        tolerances={"monodromy_drift": 0.0},
    )
    assert run(cfg, tmp_path / "rep", "csv") == 1


def test_bad_config_exit_code(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run(path, tmp_path / "rep", "csv") == 2


def test_unknown_tolerance_rejected():
    data = json.loads(json.dumps(BASE))
    data["numerics"]["tolerances"] = {"monodromy_drfit": 1e-6}
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(data)


def test_unknown_keys_rejected():
    data = json.loads(json.dumps(BASE))
    data["extra"] = 1
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(data)
    data = json.loads(json.dumps(BASE))
    data["solution"] = {"kind": "kink", "v": 0.4, "velocity": 0.4}
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(data)


def test_schema_and_solution_validation():
    data = json.loads(json.dumps(BASE))
    data["schema"] = 99
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(data)
    data = json.loads(json.dumps(BASE))
    data["solution"] = {"kind": "breather"}
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(data)
    data = json.loads(json.dumps(BASE))
    data["solution"] = {"kind": "kink", "v": 1.5}
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(data)
    data = json.loads(json.dumps(BASE))
    data["suites"] = ["no-such-suite"]
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(data)


def test_spectral_sweep():
    data = json.loads(json.dumps(BASE))
    data["spectral"] = {"sweep": {"min": 0.5, "max": 2.0, "count": 4}}
    config = ScenarioConfig.from_dict(data)
    assert len(config.lambdas) == 4
    assert config.lambdas[0] == 0.5 and config.lambdas[-1] == 2.0


def test_reports_byte_stable(tmp_path):
    cfg = write_config(tmp_path, overrides={"solution": {"kind": "kink", "v": 0.4}, "suites": ["rmatrix", "charges"]})
    run(cfg, tmp_path / "a", "csv")
    run(cfg, tmp_path / "b", "csv")
    for suite in ("rmatrix", "charges"):
        assert (tmp_path / "a" / f"{suite}.csv").read_bytes() == (tmp_path / "b" / f"{suite}.csv").read_bytes()


def test_csv_columns(tmp_path):
    cfg = write_config(tmp_path, overrides={"suites": ["lax-residual"]})
    run(cfg, tmp_path / "rep", "csv")
    header = (tmp_path / "rep" / "lax-residual.csv").read_text().splitlines()[0]
    assert header == "case,inputs,lhs,rhs,gap,tolerance,pass"


def test_main_entrypoint(tmp_path, capsys):
    assert main(["list-suites"]) == 0
    out = capsys.readouterr().out
    assert out.count("\n") == 8
    cfg = write_config(tmp_path, overrides={"suites": ["lax-residual"]})
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "rep")]) == 0
