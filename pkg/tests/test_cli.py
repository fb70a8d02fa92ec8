import json
import os

import pytest

from ncrs.cli import (
    EXIT_FAIL,
    EXIT_INPUT,
    EXIT_PASS,
    ConfigError,
    RunReport,
    Task,
    main,
    parse_config,
    run,
)

WORKED = {"uL": 2, "sigmaL": 1, "uR": 0, "sigmaR": 0, "k": 0}


def _cfg(tmp_path, **extra):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({**WORKED, **extra}))
    return str(p)


def _messages(exc):
    return {m for _, m in exc.value.errors}


# -- parse_config --------------------------------------------------------------

def test_valid_classify_config():
    cfg = parse_config(json.dumps({**WORKED, "task": "classify"}))
    assert cfg.task is Task.CLASSIFY
    assert cfg.data.left.u == 2.0 and cfg.data.left.sigma == 1.0
    assert cfg.tol == 1e-10
    assert cfg.eps_ladder[0] == 2.0 ** -3 and cfg.eps_ladder[-1] == 2.0 ** -9
    assert cfg.k_ladder == (1e-1, 1e-2, 1e-3, 1e-4)


def test_negative_k_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config(json.dumps({**WORKED, "k": -1}))
    assert "k must be ≥ 0" in _messages(exc)


def test_increasing_ladder_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config(json.dumps({**WORKED, "eps_ladder": [0.1, 0.2]}))
    assert "ladder must decrease" in _messages(exc)


def test_every_error_is_listed():
    src = json.dumps({"uL": "a", "sigmaL": 1, "uR": 0, "k": -2, "bogus": 1, "task": "dance"})
    with pytest.raises(ConfigError) as exc:
        parse_config(src)
    paths = {p for p, _ in exc.value.errors}
    assert {"uL", "sigmaR", "k", "bogus", "task"} <= paths


@pytest.mark.parametrize("src", ["{", "[1, 2]", '{"uL": NaN, "sigmaL": 0, "uR": 0, "sigmaR": 0}', "null"])
def test_malformed_input_raises_config_error(src):
    with pytest.raises(ConfigError):
        parse_config(src)


def test_bad_theta_reported_with_index():
    src = json.dumps({**WORKED, "thetas": [{"center": [0, 1], "widths": [1, 1]}, {"center": [0, 1]}]})
    with pytest.raises(ConfigError) as exc:
        parse_config(src)
    assert [p for p, _ in exc.value.errors] == ["thetas[1]"]


def test_u_grid_must_stay_below_uL():
    with pytest.raises(ConfigError):
        parse_config(json.dumps({**WORKED, "u_grid": {"start": -1, "stop": 3, "num": 5}}))


# -- run / RunReport ---------------------------------------------------------------

def test_classify_worked_datum(tmp_path):
    cfg = parse_config(json.dumps({**WORKED, "task": "classify"}))
    rep = run(cfg, str(tmp_path))
    r = rep.outputs["riemann"]
    assert r["kind"] == "DeltaShock"
    assert r["admissibility"]["overcompressive"]
    assert r["speed"] == 0.5 and r["e_dot"] == 0.5
    assert rep.passed


def test_report_round_trip(tmp_path):
    cfg = parse_config(json.dumps({**WORKED, "task": "classify"}))
    rep = run(cfg, str(tmp_path))
    back = RunReport.from_dict(json.loads(rep.to_json()))
    assert back == rep
    on_disk = json.loads((tmp_path / "report.json").read_text())
    assert "wall_time" not in on_disk
    assert on_disk["format_version"] == 1
    assert on_disk["config"] == cfg.to_dict()


def test_shock_curves_csv(tmp_path):
    cfg = parse_config(json.dumps({"uL": 2, "sigmaL": 0, "uR": 0, "sigmaR": 0, "task": "shock-curves",
                                   "path_kinds": ["phi"], "u_grid": {"start": -2, "stop": 1.5, "num": 8}}))
    rep = run(cfg, str(tmp_path))
    assert rep.passed
    lines = (tmp_path / "curves.csv").read_text().splitlines()
    assert lines[0] == "u,sigma,family,k,path_kind"
    # the k = 0 parabola plus two branches for each k > 0
    assert len(lines) - 1 == 8 * (1 + 2 + 2)


def test_delta_shock_files(tmp_path):
    cfg = parse_config(json.dumps({**WORKED, "task": "delta-shock",
                                   "grid": {"x": {"start": -1, "stop": 1, "num": 5}, "t": [1.0]}}))
    run(cfg, str(tmp_path))
    front = json.loads((tmp_path / "front.json").read_text())
    assert front["front"] == [{"t": 1.0, "phi": 0.5, "e": 0.5}]
    assert (tmp_path / "profile.csv").read_text().splitlines()[0] == "x,t,u,sigma_bar"


# -- exit codes -------------------------------------------------------------------

def test_exit_pass_on_admissible_datum(tmp_path, capsys):
    code = main(["verify-identities", "--config", _cfg(tmp_path), "--out", str(tmp_path / "o")])
    assert code == EXIT_PASS
    rep = json.loads((tmp_path / "o" / "identities.json").read_text())
    assert max(max(r["id1"], r["id2"]) for r in rep["residuals"]) <= 1e-10


def test_exit_fail_on_wrong_speed(tmp_path, capsys):
    path = _cfg(tmp_path, front_speed_offset=0.1)
    code = main(["verify-identities", "--config", path, "--out", str(tmp_path / "o"), "--quiet"])
    assert code == EXIT_FAIL
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("argv_tail", [
    ["--tol", "-1"],
    ["--tol", "nan"],
])
def test_exit_input_on_bad_tol(tmp_path, argv_tail):
    assert main(["classify", "--config", _cfg(tmp_path), "--out", str(tmp_path)] + argv_tail) == EXIT_INPUT


def test_exit_input_cases(tmp_path, capsys):
    assert main(["classify", "--config", str(tmp_path / "missing.json")]) == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({**WORKED, "k": -1}))
    assert main(["classify", "--config", str(bad)]) == EXIT_INPUT
    assert "k must be ≥ 0" in capsys.readouterr().err
    # config names another task
    assert main(["classify", "--config", _cfg(tmp_path, task="k-limit")]) == EXIT_INPUT
    # u_L == u_R has no front
    flat = tmp_path / "flat.json"
    flat.write_text(json.dumps({"uL": 1, "sigmaL": 1, "uR": 1, "sigmaR": 0}))
    assert main(["delta-shock", "--config", str(flat), "--out", str(tmp_path)]) == EXIT_INPUT


def test_k_limit_passes(tmp_path):
    assert main(["k-limit", "--config", _cfg(tmp_path), "--out", str(tmp_path), "--quiet"]) == EXIT_PASS


# -- determinism ------------------------------------------------------------------

def _read_all(d):
    return {n: open(os.path.join(d, n), "rb").read() for n in sorted(os.listdir(d))}


@pytest.mark.parametrize("task", ["shock-curves", "delta-shock", "verify-identities", "lemma-check", "k-limit"])
def test_byte_identical_reruns(tmp_path, task):
    path = _cfg(tmp_path, eps_ladder=[0.125, 0.0625])
    a, b = tmp_path / "a", tmp_path / "b"
    main([task, "--config", path, "--out", str(a), "--quiet"])
    main([task, "--config", path, "--out", str(b), "--quiet"])
    fa, fb = _read_all(a), _read_all(b)
    assert fa and fa == fb


def test_weak_sweep_threads_do_not_change_output(tmp_path, monkeypatch):
    path = _cfg(tmp_path, eps_ladder=[0.125, 0.0625, 0.03125])
    monkeypatch.setenv("NCRS_THREADS", "1")
    main(["weak-sweep", "--config", path, "--out", str(tmp_path / "a"), "--quiet"])
    monkeypatch.setenv("NCRS_THREADS", "3")
    main(["weak-sweep", "--config", path, "--out", str(tmp_path / "b"), "--quiet"])
    assert _read_all(tmp_path / "a") == _read_all(tmp_path / "b")
