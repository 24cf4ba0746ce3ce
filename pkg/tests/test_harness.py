"""Experiment catalog and CLI contract tests."""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from latmax import experiments
from latmax.cli import main
from latmax.experiments import ExperimentConfig, UsageError, list_experiments, run


# ---------------------------------------------------------------- catalog

def test_catalog_is_alphabetized_and_complete():
    entries = list_experiments()
    names = [name for name, _, _ in entries]
    assert names == sorted(names)
    assert len(names) == 12
    assert "hadamard-mixed" in names
    assert "haar-branch" in names
    for _, summary, defaults in entries:
        assert summary and isinstance(defaults, dict) and defaults


def test_unknown_experiment_rejected_before_output(tmp_path):
    out = tmp_path / "never"
    with pytest.raises(UsageError, match="unknown experiment"):
        run(ExperimentConfig("no-such-thing", output_dir=str(out)))
    assert not out.exists()


def test_unknown_and_malformed_params_rejected(tmp_path):
    out = tmp_path / "never"
    with pytest.raises(UsageError, match="unknown parameter"):
        run(ExperimentConfig("trace-dual", params={"bogus": 1},
                             output_dir=str(out)))
    with pytest.raises(UsageError, match="expects an integer"):
        run(ExperimentConfig("trace-dual", params={"n_max": "many"},
                             output_dir=str(out)))
    with pytest.raises(UsageError, match="format"):
        run(ExperimentConfig("trace-dual", format="xml", output_dir=str(out)))
    assert not out.exists()


def test_out_of_range_params_rejected(tmp_path):
    bad = [("haar-bibasis", {"J": 40}),
           ("rademacher-l1", {"m_max": 4}),
           ("lorentz-blocking", {"n": 64}),
           ("greedy-uniform-bound", {"blocks": 9})]
    for name, params in bad:
        with pytest.raises(UsageError):
            run(ExperimentConfig(name, params=params, output_dir=str(tmp_path)))


def test_every_experiment_round_trips_with_defaults(tmp_path):
    start = time.perf_counter()
    for name, _, defaults in list_experiments():
        result = run(ExperimentConfig(name, output_dir=str(tmp_path)))
        assert result.passed, (name, [c for c in result.checks if not c["passed"]])
        assert result.rows and result.columns
        manifest = json.loads((tmp_path / f"{name}-manifest.json").read_text())
        assert manifest["failed"] is False
        assert manifest["config"]["params"] == defaults
        assert manifest["config"]["seed"] == 0
        assert manifest["wall_time_seconds"] >= 0.0
        assert manifest["versions"]["numpy"] == np.__version__
        values = (tmp_path / f"{name}-values.csv").read_text().splitlines()
        assert values[0].split(",") == list(result.columns)
        assert len(values) == len(result.rows) + 1
        if result.fits:
            growth = json.loads((tmp_path / f"{name}-growth.json").read_text())
            assert set(growth) == set(result.fits)
            for fit in growth.values():
                assert fit["model"] == "c * n^a * log(n)^b"
    assert time.perf_counter() - start < 60.0


def test_growth_json_only_where_a_fit_applies(tmp_path):
    run(ExperimentConfig("greedy-uniform-bound", output_dir=str(tmp_path)))
    assert not (tmp_path / "greedy-uniform-bound-growth.json").exists()
    run(ExperimentConfig("trace-dual", output_dir=str(tmp_path)))
    growth = json.loads((tmp_path / "trace-dual-growth.json").read_text())
    assert abs(growth["pairing"]["a"] - 1.0) <= 0.05
    assert abs(growth["pairing"]["b"] - 1.0) <= 0.25


def test_value_columns_byte_identical_across_reruns(tmp_path):
    for name in ("haar-kvee", "hadamard-mixed", "haar-bibasis"):
        a = tmp_path / "a"
        b = tmp_path / "b"
        params = {"samples": 500} if name == "haar-bibasis" else {}
        run(ExperimentConfig(name, params=params, output_dir=str(a)))
        run(ExperimentConfig(name, params=params, output_dir=str(b)))
        left = (a / f"{name}-values.csv").read_bytes()
        right = (b / f"{name}-values.csv").read_bytes()
        assert left == right


def test_json_values_format(tmp_path):
    result = run(ExperimentConfig("trace-dual", format="json",
                                  output_dir=str(tmp_path)))
    payload = json.loads((tmp_path / "trace-dual-values.json").read_text())
    assert payload["columns"] == list(result.columns)
    assert payload["rows"][0][0] == 64
    assert not (tmp_path / "trace-dual-values.csv").exists()


def test_manifest_logs_search_seed_and_budget(tmp_path):
    run(ExperimentConfig("haar-bibasis", params={"samples": 50}, seed=7,
                         output_dir=str(tmp_path)))
    manifest = json.loads((tmp_path / "haar-bibasis-manifest.json").read_text())
    assert manifest["search"] == {"seed": 7, "budget": 50}


def test_seed_moves_samples_but_not_certified_values(tmp_path):
    rows = {}
    for seed in (0, 1):
        out = tmp_path / str(seed)
        rows[seed] = run(ExperimentConfig("hadamard-mixed", seed=seed,
                                          output_dir=str(out))).rows
    # modulus-sum norms are closed-form; the sampled sign sweep may move
    for r0, r1 in zip(rows[0], rows[1]):
        assert r0[4] == r1[4]


def test_failed_check_still_writes_artifacts(tmp_path, monkeypatch):
    def runner(params, seed):
        return experiments._Table(
            ("k", "v"), [(1, 0.5)],
            [{"name": "forced", "passed": False, "detail": "stub"}])
    entry = experiments._Entry("stub", {"k": 1}, runner)
    monkeypatch.setitem(experiments._CATALOG, "stub-fail", entry)
    result = run(ExperimentConfig("stub-fail", output_dir=str(tmp_path)))
    assert not result.passed
    manifest = json.loads((tmp_path / "stub-fail-manifest.json").read_text())
    assert manifest["failed"] is True
    assert (tmp_path / "stub-fail-values.csv").read_text().startswith("k,v")


# ---------------------------------------------------------------- contracts

def test_lindenstrauss_rows_match_the_documented_shape(tmp_path):
    result = run(ExperimentConfig("lindenstrauss-witness", output_dir=str(tmp_path)))
    assert len(result.rows) == 6
    assert all(abs(r[1] - 2.0) < 1e-12 for r in result.rows)
    assert abs(result.rows[-1][2] - 7.0) < 1e-12


def test_typewriter_oscillation_column(tmp_path):
    result = run(ExperimentConfig("typewriter", params={"J": 6},
                                  output_dir=str(tmp_path)))
    assert all(r[1] >= 1.0 - 1e-9 for r in result.rows)
    assert abs(result.derived["join_norm"] - 2.0) <= 1e-9


def test_uniform_bound_rows_keep_half_ratio(tmp_path):
    result = run(ExperimentConfig("greedy-uniform-bound", output_dir=str(tmp_path)))
    for _, _, mod, _, ratio, margin in result.rows:
        assert abs(mod - 1.0) < 1e-12
        assert ratio >= 0.5 - 1e-12
        assert margin >= -1e-12


# ---------------------------------------------------------------- cli

def test_cli_list_prints_catalog(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    positions = [out.index(name) for name, _, _ in list_experiments()]
    assert positions == sorted(positions)
    assert "hadamard-mixed" in out


def test_cli_exit_codes(tmp_path, capsys):
    ok = main(["run", "--experiment", "greedy-uniform-bound",
               "--out", str(tmp_path)])
    assert ok == 0
    assert main(["run", "--experiment", "nope", "--out", str(tmp_path)]) == 2
    assert main(["run", "--experiment", "trace-dual", "--param", "junk",
                 "--out", str(tmp_path)]) == 2
    assert main(["run", "--out", str(tmp_path)]) == 2          # no experiment
    assert main(["run", "--experiment", "trace-dual", "--seed", "-3",
                 "--out", str(tmp_path)]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_cli_assertion_failure_exits_one(tmp_path, monkeypatch, capsys):
    def runner(params, seed):
        return experiments._Table(
            ("k",), [(1,)],
            [{"name": "forced", "passed": False, "detail": "stub"}])
    entry = experiments._Entry("stub", {}, runner)
    monkeypatch.setitem(experiments._CATALOG, "stub-fail", entry)
    assert main(["run", "--experiment", "stub-fail", "--out", str(tmp_path)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_cli_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("# demo config\nexperiment = lindenstrauss-witness\n"
                   "depth = 4\nseed = 3\nout = {}\n".format(tmp_path / "o1"))
    assert main(["run", "--config", str(cfg)]) == 0
    manifest = json.loads(
        (tmp_path / "o1" / "lindenstrauss-witness-manifest.json").read_text())
    assert manifest["config"]["params"]["depth"] == 4
    assert manifest["config"]["seed"] == 3

    # flags beat the file
    assert main(["run", "--config", str(cfg), "--param", "depth=5",
                 "--seed", "9", "--out", str(tmp_path / "o2")]) == 0
    manifest = json.loads(
        (tmp_path / "o2" / "lindenstrauss-witness-manifest.json").read_text())
    assert manifest["config"]["params"]["depth"] == 5
    assert manifest["config"]["seed"] == 9
    capsys.readouterr()


def test_cli_malformed_config_lines(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("experiment lindenstrauss-witness\n")
    assert main(["run", "--config", str(cfg)]) == 2
    assert main(["run", "--config", str(tmp_path / "missing.cfg")]) == 2
    capsys.readouterr()


def test_console_script_wiring(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "latmax.cli", "run", "--experiment",
         "greedy-uniform-bound", "--out", str(tmp_path)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "pass" in proc.stdout
