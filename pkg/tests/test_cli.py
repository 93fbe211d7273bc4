import json

import pytest

from hilbsq import cli, reports


def test_pell_ok(capsys):
    assert cli.main(["pell", "61", "1"]) == 0
    out = capsys.readouterr().out
    assert "1766319049" in out


def test_pell_square_d_usage_error(capsys):
    assert cli.main(["pell", "4", "1"]) == 1
    err = capsys.readouterr().err
    assert "non-square" in err


def test_json_output(capsys):
    assert cli.main(["--json", "bcns", "62002"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["command"] == "bcns"
    assert data["results"]["minimal_solution"] == {"x": "249", "y": "1"}


def test_family_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["family", "C", "1"])
    assert exc.value.code == 1


def test_theorem2_zero_usage_error(capsys):
    assert cli.main(["theorem2", "0"]) == 1
    assert "error" in capsys.readouterr().err


def test_bcns_t1_usage_error(capsys):
    assert cli.main(["bcns", "1"]) == 1


def test_lattice_info(capsys):
    assert cli.main(["lattice-info", "U"]) == 0
    assert "discriminant: -1" in capsys.readouterr().out


def test_lattice_info_gram_file(tmp_path, capsys):
    path = tmp_path / "u.json"
    path.write_text("[[0, 1], [1, 0]]")
    assert cli.main(["lattice-info", str(path)]) == 0


def test_unknown_command():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1


def test_check_failure_exit_code(monkeypatch, capsys):
    failed = reports.Report(
        "bcns", {"t": "2"}, {}, [reports.Check("boom", "fail", "forced")]
    )
    monkeypatch.setattr(reports, "bcns_report", lambda t: failed)
    assert cli.main(["bcns", "2"]) == 2


def test_coeff_bound_env(monkeypatch):
    monkeypatch.setenv("HILBSQ_COEFF_BOUND", "not-a-number")
    assert cli.main(["bcns", "2"]) == 1
    monkeypatch.setenv("HILBSQ_COEFF_BOUND", "100")
    assert cli.main(["bcns", "2"]) == 0


def test_beauville(capsys):
    assert cli.main(["beauville", "1"]) == 0
    out = capsys.readouterr().out
    assert "59*H - 8*W - 57*delta" in out
    assert "discrepancy" in out
