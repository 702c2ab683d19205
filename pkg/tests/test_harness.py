import json
import subprocess
import sys

import pytest

from orlicz_lambda import cli
from orlicz_lambda.harness import ExperimentReport, resolve_threads, run, validate_config
from orlicz_lambda.luxemburg import luxemburg_norm
from orlicz_lambda.torus import TrigPolynomial
from orlicz_lambda.young import power

P3 = {"type": "power", "p": 3}


def write(tmp_path, cfg, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def test_norm_row_matches_library():
    cfg = {"command": "norm", "phi": P3, "f": {"freqs": [0, 5], "coeffs": [1, 1]}, "M": 4096}
    rep = run(cfg)
    expected = luxemburg_norm(power(3), TrigPolynomial([0, 5], [1, 1]), 4096).value
    assert rep.rows[0]["values"]["value"] == expected


def test_sample_zero_density():
    rep = run({"command": "sample", "set": {"interval": [1, 50]}, "delta": 0})
    assert rep.rows[0]["values"]["size"] == 0


def test_fejer_row():
    rep = run({"command": "fejer", "phi": P3, "N": 256})
    row = rep.rows[0]["values"]
    assert row["lhs"] <= row["rhs"] and row["holds"]


@pytest.mark.parametrize(
    "cfg",
    [
        {"command": "indices", "phi": {"type": "zygmund", "p": 3, "alpha": 1}},
        {"command": "conj", "phi": P3, "u": [0.5, 10.0]},
        {"command": "knorm", "phi": {"type": "power", "p": 4}, "set": {"list": [3, 10]}},
        {"command": "density", "set": {"squares": [1, 10000]}, "N": [8, 16], "phi": P3},
        {"command": "lp", "phi": P3, "f": {"random": {"count": 2, "max_freq": 30}}, "t_samples": 2},
        {"command": "witness", "phi1": P3, "phi2": {"type": "power", "p": 4}, "r_range": [6, 7]},
        {"command": "mc", "phi": P3, "phi0": {"type": "power", "p": 2}, "set": {"interval": [1, 128]}, "trials": 2},
    ],
)
def test_commands_produce_rows(cfg):
    rep = run(cfg)
    assert rep.rows
    json.loads(rep.to_json())
    assert rep.to_csv().startswith("op,params,key,value")


def test_knorm_value():
    rep = run({"command": "knorm", "phi": {"type": "power", "p": 4}, "set": {"list": [3, 10]}})
    assert rep.rows[0]["values"]["lower_bound"] == pytest.approx(1.5**0.25, abs=1e-8)


def test_unknown_key_rejected():
    with pytest.raises(ValueError, match="bogus"):
        validate_config({"command": "norm", "phi": P3, "f": {"freqs": [0], "coeffs": [1]}, "bogus": 1})


def test_unknown_command_rejected():
    with pytest.raises(ValueError):
        validate_config({"command": "plot"})


def test_bad_young_spec_rejected():
    with pytest.raises(ValueError):
        validate_config({"command": "indices", "phi": {"type": "power"}})


def test_report_files_and_hash(tmp_path):
    cfg = {"command": "fejer", "phi": P3, "N": [64, 128]}
    a = run(cfg, out_dir=tmp_path / "a")
    b = run(cfg, out_dir=tmp_path / "b")
    for name in ("report.json", "report.csv", "determinism.sha256"):
        assert (tmp_path / "a" / name).exists()
    ha = (tmp_path / "a" / "determinism.sha256").read_text()
    assert ha == (tmp_path / "b" / "determinism.sha256").read_text()
    assert a.timestamp != "" and a.determinism_hash() == b.determinism_hash()
    doc = json.loads((tmp_path / "a" / "report.json").read_text())
    assert doc["code_version"] and doc["config"]["seed"] == 0 and "timestamp" in doc


def test_hash_ignores_timestamp():
    rep = ExperimentReport(config={"command": "x"}, rows=[{"op": "a", "params": {}, "values": {"v": 1}, "diagnostics": {}}])
    h = rep.determinism_hash()
    rep.timestamp = "later"
    assert rep.determinism_hash() == h


def test_threads_env(monkeypatch):
    monkeypatch.setenv("ORLICZ_THREADS", "3")
    assert resolve_threads(None) == 3
    assert resolve_threads(5) == 5
    monkeypatch.delenv("ORLICZ_THREADS")
    assert resolve_threads(None) == 1


def test_mc_hash_across_threads():
    cfg = {"command": "mc", "seed": 7, "phi": P3, "phi0": {"type": "power", "p": 2}, "set": {"interval": [1, 200]}, "trials": 8, "restarts": 1}
    assert run(cfg, threads=1).determinism_hash() == run(cfg, threads=8).determinism_hash()


def test_seed_changes_report():
    base = {"command": "sample", "set": {"interval": [1, 200]}, "delta": 0.3}
    assert run({**base, "seed": 1}).determinism_hash() != run({**base, "seed": 2}).determinism_hash()


def test_cli_exit_codes(tmp_path, capsys):
    ok = write(tmp_path, {"command": "norm", "phi": P3, "f": {"freqs": [0, 5], "coeffs": [1, 1]}})
    assert cli.main(["norm", "--config", ok, "--out", str(tmp_path / "o1")]) == 0
    warn = write(tmp_path, {"command": "build", "phi0": P3, "phi1": P3, "r_range": [3, 4], "trials_per_shell": 1}, "w.json")
    assert cli.main(["build", "--config", warn, "--out", str(tmp_path / "o2")]) == 2
    bad = write(tmp_path, {"command": "norm", "phi": P3}, "b.json")
    assert cli.main(["norm", "--config", bad, "--out", str(tmp_path / "o3")]) == 1
    assert cli.main(["sample", "--config", ok, "--out", str(tmp_path / "o4")]) == 1
    assert cli.main(["accept", "--suite", "nope"]) == 1


def test_cli_seed_override(tmp_path):
    cfg = write(tmp_path, {"command": "sample", "set": {"interval": [1, 100]}, "delta": 0.5})
    cli.main(["sample", "--config", cfg, "--seed", "9", "--out", str(tmp_path / "o")])
    doc = json.loads((tmp_path / "o" / "report.json").read_text())
    assert doc["seed"] == 9


def test_console_script(tmp_path):
    cfg = write(tmp_path, {"command": "fejer", "phi": P3, "N": 64})
    out = subprocess.run(
        [sys.executable, "-m", "orlicz_lambda.cli", "fejer", "--config", cfg, "--out", str(tmp_path / "o"), "--threads", "2"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0, out.stderr
    assert (tmp_path / "o" / "determinism.sha256").read_text().strip()
