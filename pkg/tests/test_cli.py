import csv
import io
import json
import subprocess
import sys

import pytest

from phaseloc.cli import main, round_sig

from conftest import S_GAUSS, S_MINUS1, S_OSC1, S_PLUS_I, S_PSI0


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


def test_entropy_command():
    doc = run_json("entropy", "hermite:1", "--n", "4096")
    assert doc["command"] == "entropy" and doc["versions"].startswith("phaseloc ")
    assert abs(doc["results"]["s_total"] - S_OSC1) < 2e-4
    doc = run_json("entropy", "gaussian:1", "--n", "4096")
    assert abs(doc["results"]["s_total"] - S_GAUSS) < 2e-4


@pytest.mark.slow
def test_entropy_psi0_large_grid():
    doc = run_json("entropy", "psi0", "--n", "1048576", "--a", "0.1")
    assert abs(doc["results"]["s_total"] - S_PSI0) < 0.04


def test_comb_command():
    doc = run_json("comb", "(1-1.4142135623730951)*phi(sqrt(2),0,0) + phi(sqrt(2),1/2,0)")
    r = doc["results"]
    assert abs(r["s_total"] - S_MINUS1) < 1e-9
    assert r["eigenvalue"] == "-1" and r["n_series"] == 2
    doc = run_json("comb", "phi(sqrt(3),1/2,1/2)", "--project", "eigen:+i")
    assert abs(doc["results"]["s_total"] - S_PLUS_I) < 1e-9


def test_survey_command():
    doc = run_json("survey", "even-zero", "--lambda", "-1")
    best = doc["results"]["best"]
    assert (best["q"], best["p"]) == (1, 2) and abs(best["entropy"] - S_MINUS1) < 1e-9
    doc = run_json("survey", "odd-half", "--lambda", "+i")
    assert [3, 1] in doc["results"]["minimizers"]
    assert abs(doc["results"]["best"]["entropy"] - S_PLUS_I) < 1e-9
    doc = run_json("survey", "even-half", "--lambda", "-1", "--qmax", "3", "--pmax", "3")
    odd_p = [r for r in doc["results"]["rows"] if r["p"] % 2]
    assert odd_p and all(r["entropy"] == 2.0 for r in odd_p)


def test_minimize_command():
    doc = run_json("minimize", "eigen:+1", "--n", "1024", "--start", "gaussian:1")
    assert abs(doc["results"]["s_total"] - S_GAUSS) < 1e-3
    assert doc["results"]["iterations"] <= 1
    doc = run_json("minimize", "antisymmetric", "--n", "2048", "--start", "hermite:1")
    assert doc["results"]["s_total"] <= 0.75


def test_minimize_plus_i_from_hermite3():
    doc = run_json("minimize", "eigen:i", "--n", "2048", "--start", "hermite:3", "--max-iters", "300")
    assert doc["results"]["s_total"] < 1.38155


def test_bounds_command():
    r = run_json("bounds", "cd", "--d", "1")["results"]
    assert abs(r["lower"] - 0.306853) < 1e-6 and abs(r["upper"] - 0.613706) < 1e-6
    r = run_json("bounds", "k", "--d", "1", "--q", "4")["results"]
    assert abs(r["lower"] - 0.877385) < 5e-6 and abs(r["upper"] - 0.936689) < 5e-6
    r = run_json("bounds", "oscillator", "--n", "1")["results"]
    assert abs(r["value"] - 0.847579) < 1e-6
    r = run_json("bounds", "restricted", "--q", "4")["results"]
    assert abs(r["lower_bounds"]["antisymmetric"] - 0.8773826753) < 1e-9


def test_reproduce_fast():
    code, out, err = run("reproduce", "--fast")
    assert code == 0, err
    doc = json.loads(out)
    rows = doc["results"]["rows"]
    assert len(rows) == 7 and all(r["passed"] for r in rows)
    for r in rows:
        limit = 1e-9 if r["method"] == "comb" else 2e-4
        assert r["deviation"] <= limit


def test_exit_codes():
    assert run("entropy", "nonsense:3")[0] == 2
    assert run("entropy", "hermite:x")[0] == 2
    assert run("entropy", "gaussian:1", "--n", "7")[0] == 2
    assert run("comb", "phi(1,0")[0] == 2
    assert run("survey", "odd-half", "--lambda", "-1")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("entropy", "hermite:99")[0] == 3
    assert run("entropy", "psi0", "--n", "1024")[0] == 3
    assert run("comb", "phi(sqrt(2),0,0) + phi(sqrt(3),0,0)")[0] == 3
    assert run("bounds", "bb", "--q", "2")[0] == 3
    code, _, err = run("entropy", "nonsense:3")
    assert "nonsense" in err


def test_json_deterministic_and_rounded():
    argv = ("comb", "phi(sqrt(3),1/2,1/2)", "--project", "eigen:+i")
    a, b = run(*argv)[1], run(*argv)[1]
    assert a == b
    doc = json.loads(a)
    assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == a
    s = doc["results"]["s_total"]
    assert s == round_sig(S_PLUS_I)
    assert len(repr(s).replace(".", "").lstrip("0")) <= 12


def test_round_sig():
    assert round_sig(0.1234567890123456) == 0.123456789012
    assert round_sig(0.0) == 0.0
    assert round_sig(-12345.678901234567) == -12345.6789012


def test_csv_output():
    code, out, _ = run("survey", "even-zero", "--qmax", "3", "--pmax", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and set(rows[0]) == {"q", "p", "series_count", "series_count_formula", "entropy"}
    assert all(r["series_count"] == r["series_count_formula"] for r in rows)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "phaseloc", "bounds", "cd"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["results"]["upper"] == round_sig(S_PSI0)
