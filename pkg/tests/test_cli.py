import json

import pytest

from charsumlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_factor(capsys):
    code, out = run_cli(capsys, "factor", "4199")
    assert code == 0
    assert json.loads(out) == {"q": 4199, "primes": [13, 17, 19]}


def test_factor_error(capsys):
    code = main(["factor", "12"])
    err = capsys.readouterr().err
    assert code == 2
    assert "error" in err


def test_char_eval(capsys):
    code, out = run_cli(capsys, "char", "eval", "--q", "15",
                        "--indices", "1,2", "--n", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["value_re"] == pytest.approx(-1.0)
    assert payload["primitive"] is True
    assert payload["order"] == 2


def test_jcount_methods_agree(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("CSL_CACHE_DIR", str(tmp_path))
    code, out = run_cli(capsys, "jcount", "--r", "2", "--d", "2", "--V", "9")
    assert code == 0
    mitm = json.loads(out)["count"]
    code, out = run_cli(capsys, "jcount", "--r", "2", "--d", "2", "--V", "9",
                        "--method", "naive")
    assert json.loads(out)["count"] == mitm == 2 * 81 - 9
    # count is now cached
    code, out = run_cli(capsys, "cache", "ls")
    entries = json.loads(out)["entries"]
    assert entries == [{"r": 2, "d": 2, "V": 9, "count": mitm}]
    code, out = run_cli(capsys, "cache", "clear")
    assert json.loads(out)["removed"] is True


def test_energy_commands(capsys):
    code, out = run_cli(capsys, "energy", "cong", "--q", "5", "--N", "2", "--U", "2")
    assert code == 0
    assert json.loads(out)["count"] == 6
    code, out = run_cli(capsys, "energy", "ffbox", "--q", "5", "--n", "2",
                        "--H", "2", "--U", "2")
    assert code == 0
    hashed = json.loads(out)["count"]
    code, out = run_cli(capsys, "energy", "ffbox", "--q", "5", "--n", "2",
                        "--H", "2", "--U", "2", "--method", "naive")
    assert json.loads(out)["count"] == hashed
    code, out = run_cli(capsys, "energy", "linforms", "--q", "7",
                        "--matrix", "1,1,0,1", "--H", "2", "--U", "2")
    assert code == 0
    assert json.loads(out)["count"] >= 16


def test_energy_hypothesis_flag(capsys):
    code = main(["energy", "cong", "--q", "5", "--N", "3", "--U", "3"])
    capsys.readouterr()
    assert code == 2
    code, out = run_cli(capsys, "--override-hypotheses", "energy", "cong",
                        "--q", "5", "--N", "3", "--U", "3")
    assert code == 0


def test_verify_writes_deterministic_report(capsys, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    args = ["verify", "thm1", "--r-d", "5", "--d", "2", "--samples", "2",
            "--q-max", "120"]
    assert main(["--seed", "9", "--out", str(out1)] + args) == 0
    assert main(["--seed", "9", "--out", str(out2)] + args) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    assert payload["passed"] is True
    assert payload["records"]


def test_verify_exit_code_on_fail(capsys, tmp_path):
    # an absurdly small threshold forces a ratio regression failure
    code = main(["verify", "lemma7", "--constant", "1e-9"])
    capsys.readouterr()
    assert code == 1


def test_cross_process_report_determinism(tmp_path):
    import subprocess
    import sys

    outs = []
    for name in ("p1.json", "p2.json"):
        out = tmp_path / name
        cmd = [sys.executable, "-m", "charsumlab.cli", "--seed", "21",
               "--out", str(out), "verify", "thm3", "--r-d", "5", "--d", "2",
               "--samples", "2"]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_compare_exponents_cli(capsys):
    code, out = run_cli(capsys, "compare-exponents", "--N", "1000",
                        "--q", "100003", "--d", "2", "--r", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["chang_epsilon"] == pytest.approx(0.0025 / 48.4, abs=1e-12)
    code = main(["compare-exponents", "--N", "1000", "--q", "100003",
                 "--d", "2", "--r", "3"])
    capsys.readouterr()
    assert code == 2  # r = D pole
