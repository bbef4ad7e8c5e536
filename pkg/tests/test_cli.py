import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from mahler import BasisResult
from mahler.cli import main, parse_job
from mahler.errors import InputError

RS_JOB = {"p": 2, "field": {"kind": "rationals"}, "coeffs": ["1", "z-1", "-2*z"], "order": 9}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def rs_job(tmp_path):
    path = tmp_path / "rs.json"
    path.write_text(json.dumps(RS_JOB))
    return path


def test_parse_job_rs():
    spec = parse_job(RS_JOB)
    assert spec.p == 2 and spec.order == 9 and spec.equation.order == 2


def test_parse_job_cancellation():
    spec = parse_job({"p": 2, "coeffs": ["1", "(z^2-1)/(z-1)"]})
    assert spec.equation.coeffs[1] == parse_job({"p": 2, "coeffs": ["1", "z+1"]}).equation.coeffs[1]


@pytest.mark.parametrize("job,msg", [
    ({"p": 2, "coeffs": ["0", "1", "1"]}, "a_0 = 0"),
    ({"p": 1, "coeffs": ["1", "1"]}, "p must be"),
    ({"p": 2, "coeffs": ["1", "z +"]}, "coefficient a_1"),
    ({"coeffs": ["1"]}, "missing 'p'"),
])
def test_parse_job_errors(job, msg):
    with pytest.raises(InputError, match=msg):
        parse_job(job)


def test_solve_json(rs_job, tmp_path):
    out = tmp_path / "res.json"
    code, _, _ = run(["solve", "--input", str(rs_job), "--out", str(out)])
    assert code == 0
    obj = json.loads(out.read_text(encoding="utf-8"))
    assert (obj["d"], obj["v"], obj["j0"]) == (1, 1, 0)
    assert sorted(obj["K0"]) == ["-1/2", "1"]
    assert obj["Omega1"] == [{"a": [], "alpha": [], "lambda": []},
                             {"a": ["1"], "alpha": [0], "lambda": ["-2"]}]
    # round trip
    assert BasisResult.from_json(obj).to_json() == obj


def test_verify_round_trip(rs_job, tmp_path):
    out = tmp_path / "res.json"
    run(["solve", "--input", str(rs_job), "--out", str(out)])
    code, text, _ = run(["verify", "--input", str(rs_job), "--basis", str(out)])
    assert code == 0 and text.strip() == "residual 0 through order 9"


def test_verify_failure_exit_code(rs_job, tmp_path):
    out = tmp_path / "res.json"
    run(["solve", "--input", str(rs_job), "--out", str(out)])
    obj = json.loads(out.read_text())
    obj["solutions"][0][0]["f"]["coeffs"]["3"] = "5"
    out.write_text(json.dumps(obj))
    code, text, _ = run(["verify", "--input", str(rs_job), "--basis", str(out)])
    assert code == 1 and "nonzero residual" in text


def test_text_and_json_agree(rs_job):
    code, text, _ = run(["solve", "--input", str(rs_job), "--format", "text"])
    assert code == 0
    _, js, _ = run(["solve", "--input", str(rs_job), "--format", "json"])
    obj = json.loads(js)
    assert text.splitlines()[0] == "d = 1, v = 1"
    assert "O(z^10)" in text
    # sampled coefficients: every JSON coefficient of y1 shows up in the text line
    y1_line = text.splitlines()[1]
    f = obj["solutions"][0][0]["f"]
    for n, c in f["coeffs"].items():
        c = Fraction(c)
        mono = "" if n == "0" else ("z" if n == "1" else "z^%s" % n)
        expect = {1: mono or "1", -1: "- " + (mono or "1")}.get(c, None)
        assert expect is None or expect in y1_line


def test_entry_eq_command(rs_job):
    code, text, _ = run(["entry-eq", "--input", str(rs_job), "--i", "1", "--j", "2"])
    assert code == 0 and "y(z^16)" in text


def test_entry_eq_bad_index(rs_job):
    code, _, err = run(["entry-eq", "--input", str(rs_job), "--i", "3", "--j", "1"])
    assert code == 1 and "entry indices" in err


def test_unsupported_extension_exit_2(tmp_path):
    job = tmp_path / "cubic.json"
    job.write_text(json.dumps({"p": 2, "coeffs": ["-2", "0", "0", "1"], "order": 4}))
    code, _, err = run(["solve", "--input", str(job)])
    assert code == 2 and "unsupported" in err


def test_zero_a0_exit_1(tmp_path):
    job = tmp_path / "zero.json"
    job.write_text(json.dumps({"p": 2, "coeffs": ["0", "1", "1"]}))
    code, _, err = run(["solve", "--input", str(job)])
    assert code == 1 and "a_0 = 0" in err


def test_malformed_json_exit_1(tmp_path):
    job = tmp_path / "bad.json"
    job.write_text('{"p": 2, "coeffs": [')
    code, _, err = run(["solve", "--input", str(job)])
    assert code == 1 and "malformed JSON" in err and "line 1" in err


def test_carlitz_job(tmp_path):
    job = tmp_path / "carlitz.json"
    job.write_text(json.dumps({"p": 3, "field": {"kind": "fp_function", "char": 3},
                               "coeffs": ["(z^3-theta)*(z^9-theta)", "-(z^3-theta-1)*(z^9-theta)",
                                          "-(z^3-theta)"], "order": 5}))
    out = tmp_path / "res.json"
    assert run(["solve", "--input", str(job), "--out", str(out)])[0] == 0
    code, text, _ = run(["verify", "--input", str(job), "--basis", str(out)])
    assert code == 0 and text.strip() == "residual 0 through order 5"


def test_module_entry_point(rs_job):
    proc = subprocess.run([sys.executable, "-m", "mahler", "solve", "--input", str(rs_job)],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout.startswith("d = 1, v = 1")
