import json

import pytest

from hensel.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run_cli(capsys, *argv)
    return code, json.loads(out)


def test_fl_verify_pass(capsys):
    code, payload = run_json(capsys, "fl-verify", "--p", "3", "--a", "1", "--b", "3")
    assert code == 0
    assert payload["verdict"] == "pass"
    assert payload["results"]["twisted_total"] == -3
    assert payload["results"]["expected"] == -3
    assert payload["results"]["closed_form"] == -3
    assert payload["results"]["saturated"] is True
    assert payload["params"]["delta"] == "2"  # auto-resolved non-residue
    assert payload["schema_version"] == 1
    assert payload["subcommand"] == "fl-verify"


def test_fl_verify_vb2(capsys):
    code, payload = run_json(capsys, "fl-verify", "--p", "3", "--a", "1", "--b", "9")
    assert code == 0
    assert payload["results"]["twisted_total"] == 9


def test_fl_verify_vanishing(capsys):
    code, payload = run_json(
        capsys, "fl-verify", "--p", "3", "--a", "1/3", "--b", "3"
    )
    assert code == 0
    assert payload["results"]["regime"] == "vanishing"
    assert payload["results"]["twisted_total"] == 0
    assert payload["results"]["val_a"] == -1


def test_fl_verify_outside_regime_not_applicable(capsys):
    code, payload = run_json(capsys, "fl-verify", "--p", "3", "--a", "1", "--b", "1")
    assert code == 0
    assert payload["verdict"] == "not-applicable"


def test_fl_verify_usage_error_exit_2(capsys):
    code, out, err = run_cli(capsys, "fl-verify", "--p", "4", "--a", "1", "--b", "3")
    assert code == 2
    assert "odd prime" in err


def test_fl_verify_undersized_window_fails(capsys):
    code, payload = run_json(
        capsys, "fl-verify", "--p", "3", "--a", "1", "--b", "3", "--window", "0"
    )
    assert code == 1
    assert payload["verdict"] == "fail"


def test_determinism_modulo_timing(capsys):
    _, p1 = run_json(capsys, "fl-verify", "--p", "3", "--a", "1", "--b", "3")
    _, p2 = run_json(capsys, "fl-verify", "--p", "3", "--a", "1", "--b", "3")
    p1.pop("elapsed_seconds")
    p2.pop("elapsed_seconds")
    assert p1 == p2


def test_sweep_grid(capsys):
    code, payload = run_json(
        capsys, "sweep", "--p-list", "3,5", "--vb-list", "1,2", "--kappa", "1"
    )
    assert code == 0
    rows = payload["results"]["rows"]
    assert len(rows) == 4
    assert all(r["status"] == "pass" for r in rows)
    assert {(r["p"], r["val_b"]): r["brute_force"] for r in rows} == {
        (3, 1): -3,
        (3, 2): 9,
        (5, 1): -5,
        (5, 2): 25,
    }


def test_sweep_empty_grid_passes(capsys):
    code, payload = run_json(capsys, "sweep", "--p-list", "", "--vb-list", "")
    assert code == 0
    assert payload["results"]["rows"] == []


def test_sweep_vb_zero_not_applicable(capsys):
    code, payload = run_json(capsys, "sweep", "--p-list", "3", "--vb-list", "0")
    assert code == 0
    assert payload["results"]["rows"][0]["status"] == "not-applicable"


def test_sweep_parallel_matches_serial(capsys):
    args = ("sweep", "--p-list", "3,5", "--vb-list", "1")
    _, serial = run_json(capsys, *args)
    _, parallel = run_json(capsys, "--jobs", "2", *args)
    serial.pop("elapsed_seconds")
    parallel.pop("elapsed_seconds")
    serial["params"].pop("jobs")
    parallel["params"].pop("jobs")
    assert serial == parallel


def test_sweep_config_file(capsys, tmp_path):
    cfg = tmp_path / "grid.json"
    cfg.write_text(json.dumps({"sweep": {"p": [3], "vb": [1], "kappa": 1}}))
    code, payload = run_json(capsys, "sweep", "--config", str(cfg))
    assert code == 0
    assert payload["params"]["p_list"] == [3]
    assert payload["results"]["rows"][0]["brute_force"] == -3


def test_sweep_flags_override_config(capsys, tmp_path):
    cfg = tmp_path / "grid.json"
    cfg.write_text(json.dumps({"sweep": {"p": [3], "vb": [1, 2]}}))
    code, payload = run_json(
        capsys, "sweep", "--config", str(cfg), "--vb-list", "1"
    )
    assert code == 0
    assert len(payload["results"]["rows"]) == 1


def test_orbital_subcommand(capsys):
    code, payload = run_json(
        capsys, "orbital", "--p", "3", "--a", "1/3", "--b", "3"
    )
    assert code == 0
    assert payload["results"]["untwisted_total"] == 0
    assert payload["results"]["regime"] == "vanishing"


def test_hecke_subcommand(capsys):
    code, payload = run_json(capsys, "hecke", "--p", "2", "--truncation", "64")
    assert code == 0
    assert payload["results"]["eigenvalue"] == -24
    assert payload["results"]["is_eigenform"] is True


def test_theta_subcommand(capsys):
    code, payload = run_json(capsys, "theta", "--t", "1")
    assert code == 0
    assert payload["results"]["residual"] < 1e-12


def test_lseries_subcommand(capsys):
    code, payload = run_json(
        capsys, "lseries", "--character", "mod4", "--s", "2",
        "--nmax", "100000", "--pmax", "10000",
    )
    assert code == 0
    assert abs(payload["results"]["partial_sum"] - 0.9159655941) < 1e-6


def test_lseries_unknown_character(capsys):
    code, out, err = run_cli(capsys, "lseries", "--character", "bogus")
    assert code == 2


def test_frobenius_subcommand(capsys):
    code, payload = run_json(capsys, "frobenius", "--d", "-1", "--pmax", "1000")
    assert code == 0
    assert payload["results"]["mismatch_count"] == 0
    assert payload["results"]["character"] == "mod4"


def test_frobenius_needs_character_for_general_d(capsys):
    code, out, err = run_cli(capsys, "frobenius", "--d", "-6")
    assert code == 2
    assert "--character" in err


def test_trace_named_group(capsys):
    code, payload = run_json(capsys, "trace", "--group", "S3")
    assert code == 0
    assert payload["results"]["pairs"] == 6
    assert payload["results"]["failures"] == 0


def test_trace_generators_and_subgroup(capsys):
    code, payload = run_json(
        capsys,
        "trace",
        "--group", "(1 2);(1 2 3 4)",
        "--degree", "4",
        "--subgroup", "(1 2);(1 2 3)",
    )
    assert code == 0
    assert payload["results"]["rows"][0]["group_order"] == 24
    assert payload["results"]["rows"][0]["subgroup_order"] == 6


def test_csv_format(capsys):
    code, out, _ = run_cli(
        capsys, "--format", "csv", "sweep", "--p-list", "3", "--vb-list", "1"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("brute_force,")
    assert len(lines) == 2


def test_table_format(capsys):
    code, out, _ = run_cli(capsys, "--format", "table", "theta", "--t", "2")
    assert code == 0
    assert "verdict: pass" in out


def test_infinite_valuation_serializes(capsys):
    code, payload = run_json(capsys, "fl-verify", "--p", "3", "--a", "0", "--b", "3")
    assert code == 0
    assert payload["results"]["val_a"] == "inf"
    assert payload["results"]["regime"] == "vanishing"
