import json
import subprocess
import sys

import pytest

from qaffine.cli import main
from qaffine.report import AnalysisReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_text(capsys, fixture_path):
    code, out, _ = run(capsys, "analyze", fixture_path("uniparameter_n3.json"))
    assert code == 0
    assert "quotient theorem applies: yes" in out
    assert "<p^{-1} * l2^{1} * x[1]*x[3] - l1^{1} * l3^{1} * x[2]>" in out


def test_analyze_json_round_trip(capsys, fixture_path):
    code, out, _ = run(capsys, "analyze", "--json", fixture_path("non_closed_map.json"))
    assert code == 0
    doc = json.loads(out)
    rep = AnalysisReport.from_dict(doc)
    assert rep.to_dict() == doc
    assert doc["strata"][0]["S_w"]["basis"] == [[1, 0, 0]]
    assert doc["strata"][0]["perp"] == {"dimension": 2, "components": 1}


@pytest.mark.parametrize(
    "name", ["uniparameter_n3.json", "uniparameter_root3_n3.json", "non_closed_map.json"]
)
def test_analyze_deterministic(capsys, fixture_path, name):
    outs = set()
    for flag in ([], ["--json"]):
        first = run(capsys, "analyze", *flag, fixture_path(name))[1]
        second = run(capsys, "analyze", *flag, fixture_path(name))[1]
        assert first == second
        outs.add(first)
    assert len(outs) == 2


def test_minus_one_exit_code(capsys, fixture_path):
    code, _, err = run(capsys, "analyze", fixture_path("minus_one_n3.json"))
    assert code == 2 and "-1" in err


def test_char2_lifts_hypothesis(capsys, fixture_path):
    code, out, _ = run(capsys, "psi", "--char2", fixture_path("minus_one_n3.json"))
    # hypothesis holds, but no group with -1 != 1 of even order exists in char 2
    assert code == 2


def test_char_contradiction_reported(capsys, fixture_path):
    code, out, _ = run(capsys, "analyze", "--json", fixture_path("root9_char3.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["hypothesis"]["char_contradictions"] == [[]]


def test_psi_numeric(capsys, fixture_path):
    code, out, _ = run(capsys, "psi", "--json", "--lambda", "1,2,3", fixture_path("uniparameter_n3.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["ordered"] == "<2 * p^{-1} * x[1]*x[3] - 3 * x[2]>"
    assert doc["annotation"] == "saturate by x_j, j not in w"


def test_psi_symbolic_w(capsys, fixture_path):
    code, out, _ = run(capsys, "psi", "--w", "2", fixture_path("uniparameter_n3.json"))
    assert code == 0 and "<x[2]>" in out


def test_psi_bad_input(capsys, fixture_path):
    assert run(capsys, "psi", "--lambda", "1,2", fixture_path("uniparameter_n3.json"))[0] == 1
    assert run(capsys, "psi", "--w", "7", fixture_path("uniparameter_n3.json"))[0] == 1


def test_fiber(capsys, fixture_path):
    f = fixture_path("uniparameter_n3.json")
    assert "same fiber: yes" in run(capsys, "fiber", "--lambda", "1,1,1", "--mu", "2,4,2", f)[1]
    assert "same fiber: no" in run(capsys, "fiber", "--lambda", "1,1,1", "--mu", "2,1,2", f)[1]
    assert run(capsys, "fiber", "--lambda", "1,1,1", f)[0] == 1


def test_feasibility(capsys):
    code, out, _ = run(capsys, "feasibility", "--json", "--minus-one", "--n", "4")
    doc = json.loads(out)
    assert code == 0 and doc["feasible"] is False
    assert "consistent with the expected nonexistence" in doc["summary"]
    code, out, _ = run(capsys, "feasibility", "--minus-one", "--n", "2")
    assert "feasible: witness in the bicharacter fragment" in out


def test_feasibility_from_file_and_errors(capsys, fixture_path):
    code, out, _ = run(capsys, "feasibility", fixture_path("minus_one_n3.json"))
    assert code == 0 and "coboundary-twisted" in out
    assert run(capsys, "feasibility", "--minus-one")[0] == 1
    assert run(capsys, "feasibility", fixture_path("uniparameter_n3.json"))[0] == 1


def test_twist(capsys, fixture_path):
    code, out, _ = run(capsys, "twist", fixture_path("graded_z2.json"))
    assert code == 0 and "V(Phi~(I))" in out
    assert run(capsys, "twist", fixture_path("graded_sign.json"))[0] == 2
    assert run(capsys, "twist", fixture_path("uniparameter_n3.json"))[0] == 1


def test_malformed_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "uniparameter": {"t": 1}}')
    assert run(capsys, "analyze", str(bad))[0] == 1
    bad.write_text("not json")
    assert run(capsys, "analyze", str(bad))[0] == 1
    bad.write_text('{"n": 2, "uniparameter": {}, "extra": 1}')
    assert run(capsys, "analyze", str(bad))[0] == 1
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and out.count("PASS") == 5


def test_console_script(fixture_path):
    proc = subprocess.run(
        [sys.executable, "-m", "qaffine.cli", "analyze", "--json", fixture_path("commutative_n2.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 2
