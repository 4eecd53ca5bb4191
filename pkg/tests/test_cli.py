import json

import pytest

from spectacle.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_theta11_json(capsys):
    code, out = run_cli(capsys, "theta11", "--k", "3", "--nmax", "4")
    assert code == 0
    d = json.loads(out)
    assert d["coeffs"][0] == [0, "1/120"]
    assert d["coeffs"][1] == [1, "2"]


def test_eisenstein_table(capsys):
    code, out = run_cli(capsys, "eisenstein", "--weight", "4", "--nmax", "2", "--format", "table")
    assert code == 0
    assert "q^0" in out and "240" in out


def test_cohen_json(capsys):
    code, out = run_cli(capsys, "cohen", "--r", "2", "--nmax", "5")
    assert code == 0
    d = json.loads(out)
    coeffs = dict((n, v) for n, v in d["coeffs"])
    assert coeffs[0] == "1/120"
    assert coeffs[4] == "-7/12"


def test_lift_check_passes(capsys):
    code, out = run_cli(capsys, "lift", "--k", "1", "--h", "0", "--nmax", "20", "--check")
    assert code == 0
    d = json.loads(out)
    assert d["equal_to"] == 20
    assert d["sign_convention"]["sigma_glob"] in (-1, 1)


def test_lift_half_coset(capsys):
    code, out = run_cli(capsys, "lift", "--k", "1", "--h", "half", "--nmax", "12")
    assert code == 0
    d = json.loads(out)
    assert d["exp_den"] == 4
    assert d["theta_side"]["coeffs"][0] == [1, "-5/6"]


def test_caps_assemble(capsys):
    code, out = run_cli(capsys, "caps", "--k", "1", "--x", "0,1,0", "--level", "3")
    assert code == 0
    d = json.loads(out)
    assert d["caps"]["cap_first"] == ["1", "1", "1/6"]
    assert d["caps"]["cap_second"] == ["-1/2", "1", "-1/3"]


def test_caps_closed_form(capsys):
    code, out = run_cli(capsys, "caps", "--k", "2", "--i", "1", "--r", "1/2", "--M", "2")
    assert code == 0
    d = json.loads(out)
    assert len(d["cap"]) == 5


def test_lvalue(capsys):
    code, out = run_cli(capsys, "lvalue", "--weight", "4", "--j", "0", "--T", "3,10")
    assert code == 0
    d = json.loads(out)
    assert abs(float(d["value"]) + 5 / 3) < 1e-8
    assert float(d["t_spread"]) < 1e-8


def test_intersect(capsys):
    code, out = run_cli(capsys, "intersect", "--x", "1,0,1", "--y", "0,1,0")
    assert code == 0
    d = json.loads(out)
    assert d["epsilon"] == 1 and d["numeric_sign"] == 1 and d["agree"]


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_bad_threads_rejected():
    with pytest.raises(SystemExit):
        main(["eisenstein", "--weight", "4", "--threads", "0"])


def test_byte_identical_output(capsys):
    _, out1 = run_cli(capsys, "theta11", "--k", "3", "--nmax", "30")
    _, out2 = run_cli(capsys, "theta11", "--k", "3", "--nmax", "30")
    assert out1 == out2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "series.json"
    code, out = run_cli(capsys, "eisenstein", "--weight", "6", "--nmax", "3", "--out", str(target))
    assert code == 0 and out == ""
    d = json.loads(target.read_text())
    assert d["coeffs"][0] == [0, "1"]


def test_spectacle_log_env(monkeypatch, capsys):
    monkeypatch.setenv("SPECTACLE_LOG", "bogus")
    with pytest.raises(SystemExit):
        main(["eisenstein", "--weight", "4"])
    monkeypatch.setenv("SPECTACLE_LOG", "info")
    code, _ = run_cli(capsys, "eisenstein", "--weight", "4", "--nmax", "2")
    assert code == 0
