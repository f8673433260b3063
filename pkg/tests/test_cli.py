import json

import pytest

from nearsasaki.cli import RunConfig, ConfigError, dumps, main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = _run(capsys, "list")
    assert code == 0
    line = next(l for l in out.splitlines() if "nsas-s5" in l)
    assert "non-Sasakian" in line
    assert any("L1-b" in l and "hφ + φh = −2Q̃" in l for l in out.splitlines())
    code, filtered, _ = _run(capsys, "list", "--filter", "")
    assert filtered == out


def test_list_json_is_sorted(capsys):
    _, out, _ = _run(capsys, "list", "--format", "json")
    reg = json.loads(out)
    names = [m["name"] for m in reg["models"]]
    assert names == sorted(names)


def test_informational_row_exits_zero(capsys):
    code, out, _ = _run(capsys, "check", "--models", "nsas-s5", "--identities", "E-nS-Sas", "--points", "5")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1
    (row,) = rep["rows"]
    assert row["status"] == "informational" and row["identity"] == "SAS-1"
    assert set(rep["run"]) >= {"seed", "tol", "points", "tuples"}
    assert {"model", "identity", "hypothesis_ok", "n", "max_residual", "mean_residual", "pass", "note"} <= set(row)


@pytest.mark.parametrize("argv", [["check", "--tol", "-1"], ["check", "--points", "0"], ["check", "--tuples", "0"],
                                  ["check", "--models", "nope"], ["check", "--identities", "L99"],
                                  ["check", "--format", "xml"], ["spectrum", "nope"], ["bogus"], []])
def test_usage_errors_exit_two(capsys, argv):
    assert main(argv) == 2


def test_failing_row_exits_one(capsys):
    code, _, _ = _run(capsys, "check", "--models", "nsas-s5", "--identities", "L4-a", "--points", "2")
    assert code == 1


def test_json_reports_are_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path, threads in zip(paths, ("1", "0")):
        main(["check", "--models", "nsas-s5,sas-r5", "--identities", "L1-a,L2-a,P2-c", "--points", "4",
              "--out", str(path), "--threads", threads])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_csv_columns(capsys):
    _, out, _ = _run(capsys, "check", "--models", "sas-r5", "--identities", "AX-1,AX-2", "--points", "2",
                     "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "model,identity,hypothesis,hypothesis_ok,n,max_residual,mean_residual,pass,status,note"
    assert len(lines) == 3 and lines[1].startswith("sas-r5,AX-1,H0,True,2,")


def test_text_format(capsys):
    code, out, _ = _run(capsys, "check", "--models", "sas-r5", "--identities", "AX-1", "--points", "2",
                        "--format", "text")
    assert code == 0 and "AX-1" in out and "pass" in out


def test_spectrum(capsys):
    code, out, _ = _run(capsys, "spectrum", "nsas-s5", "--format", "json")
    s = json.loads(out)
    assert code == 0 and len(s["clusters"]) == 2 and s["constancy_deviation"] < 1e-7 and not s["note"]
    _, out, _ = _run(capsys, "spectrum", "sas-r5", "--format", "json")
    assert len(json.loads(out)["clusters"]) == 1
    _, out, _ = _run(capsys, "spectrum", "weak-r5-a1.5")
    assert "not nearly Sasakian: spectral theorems inapplicable" in out


def test_gates_command(capsys):
    code, out, _ = _run(capsys, "gates", "--models", "sas-r7,nsas-s5", "--points", "3")
    assert code == 0 and "pass" in out and "inapplicable" in out


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(["sas-r5"], ["AX-1"], tol=0.0)
    with pytest.raises(ConfigError):
        RunConfig(["sas-r5"], ["AX-1"], tol=float("nan"))


def test_canonical_json_floats():
    assert dumps({"b": 0.1, "a": [1, 2.0, True, None]}) == (
        '{\n  "a": [\n    1,\n    2.0,\n    true,\n    null\n  ],\n  "b": 0.10000000000000001\n}')
    assert json.loads(dumps({"x": 1e-300})) == {"x": 1e-300}
