import json
import subprocess
import sys

import pytest

from dihedral_stability.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("3..200") == (3, 200)
    assert parse_range("7") == (7, 7)


def test_lambda1_both_engines(capsys):
    code, out, _ = run(capsys, "lambda1", "--n", "5", "--a", "1", "--b", "4", "--engine", "both")
    assert code == 0
    data = json.loads(out)
    assert data["lambda1"] == 3
    assert data["engines_agree"] is True
    assert data["canonical"] == {"n": 5, "a": 1, "b": 2}


def test_lambda1_non_generating(capsys):
    code, out, err = run(capsys, "lambda1", "--n", "6", "--a", "2", "--b", "4")
    assert code == 2
    assert out == ""
    assert "gcd(a, b, n) = 2" in err


def test_lambda1_csv(capsys):
    code, out, _ = run(capsys, "lambda1", "--n", "5", "--a", "1", "--b", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,a,b,lambda1,max_refl_len,bound,tight", "5,1,4,3,3,3,true"]


def test_missing_set_arguments(capsys):
    code, _, err = run(capsys, "lengths", "--n", "5")
    assert code == 2 and "--a" in err


def test_degenerate_set(capsys):
    code, _, err = run(capsys, "lengths", "--n", "5", "--a", "2", "--b", "7")
    assert code == 2 and "not distinct" in err


def test_unknown_command():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_lengths_formats(capsys):
    code, out, _ = run(capsys, "lengths", "--n", "5", "--a", "1", "--b", "4")
    assert code == 0
    assert out.splitlines()[0] == "element,rot,refl_flag,length"
    assert "r^2 f,2,1,3" in out.splitlines()
    code, out, _ = run(capsys, "lengths", "--n", "5", "--a", "1", "--b", "4", "--format", "json",
                       "--engine", "both")
    assert json.loads(out)["reflection_lengths"] == [1, 1, 3, 3, 1]
    code, out, _ = run(capsys, "lengths", "--n", "5", "--a", "1", "--b", "4", "--format", "table")
    assert "r^2 f" in out


def test_verify_sharpness(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "sharpness", "--n-range", "3..200")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and len(data["details"]) == 198
    assert all(d["match"] for d in data["details"])
    assert "seconds" not in data


def test_verify_timing_flag(capsys):
    _, out, _ = run(capsys, "verify", "--claim", "sqrt", "--n-range", "5..20", "--timing")
    assert "seconds" in json.loads(out)


@pytest.mark.parametrize(
    "claim,rng",
    [("cauchy-davenport", "5..13"), ("kneser", "1..6"), ("growth", "3..20"),
     ("prime-growth", "3..31"), ("lambda-bound", "3..20"), ("prime-lambda-bound", "3..7"),
     ("sqrt", "5..50"), ("oracle", "3..12")],
)
def test_verify_claims(capsys, claim, rng):
    code, out, _ = run(capsys, "verify", "--claim", claim, "--n-range", rng, "--engine", "both")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["checked"] > 0


def test_verify_is_byte_identical(capsys):
    argv = ["verify", "--claim", "cauchy-davenport", "--n-range", "5..11", "--seed", "17"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert json.loads(first[1])["parameters"]["seed"] == 17


def test_lambda_bound_reports_attainment(capsys):
    _, out, _ = run(capsys, "verify", "--claim", "lambda-bound", "--n-range", "3..12")
    attained = json.loads(out)["summary"]["bound_attained"]
    assert attained["4"] and attained["5"] and attained["8"]


def test_scan_reports_counterexample(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("DIHEDRAL_STABILITY_OUTDIR", str(tmp_path))
    code, out, _ = run(capsys, "scan", "--n-range", "3..10", "--checkpoint", "ck.jsonl",
                       "--output", "scan.json")
    assert code == 1
    assert out == ""
    data = json.loads((tmp_path / "scan.json").read_text())
    assert data["confirmed"] is False and data["reverified"] is True
    assert (tmp_path / "ck.jsonl").exists()


def test_scan_confirmed_range(capsys):
    code, out, _ = run(capsys, "scan", "--n-range", "3..7")
    assert code == 0 and json.loads(out)["confirmed"]


def test_survey_csv(capsys):
    code, out, _ = run(capsys, "survey", "--n-range", "3..6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,a,b,lambda1,max_refl_len,bound,tight,prime_condition_met"
    assert lines[1] == "3,1,2,1,1,2,false,false"


def test_survey_json_attainment(capsys):
    _, out, _ = run(capsys, "survey", "--n-range", "3..9", "--format", "json")
    data = json.loads(out)
    assert data["bound_attained"]["8"] is True


def test_sqrt_command(capsys):
    code, out, _ = run(capsys, "sqrt", "--n", "25")
    assert code == 0
    header, row = out.splitlines()
    assert header == "n,a,b,max_length,bound,holds,ratio"
    assert row.startswith("25,1,5,") and ",19,true," in row
    code, _, err = run(capsys, "sqrt", "--n", "4")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dihedral_stability", "lambda1", "--n", "7",
                           "--a", "1", "--b", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["prime_condition_met"] and data["bound_prime_third"] == 3


def test_prime_lambda_bound_fails_at_11(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "prime-lambda-bound", "--n-range", "11..11")
    data = json.loads(out)
    assert code == 1 and not data["passed"]
    assert {"n": 11, "a": 1, "b": 3, "lambda1": 5, "bound": 4} in data["failures"]
    assert data["summary"]["odd_level_bound_violations"] == 0
