import io
import json
from pathlib import Path

import pytest

from periodic_surgery.cli import RunConfig, InputError, homology_report, main, parse_matrix_text, render_homology
from periodic_surgery.diagram import SeamTangle, lift, linking_matrix

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestHomologyCommand:
    def test_lens(self, capsys):
        code, out, _ = run(capsys, "homology", DATA / "lens_8_3.json")
        assert code == 0
        assert out.splitlines()[0] == "H1 = Z/8"
        assert "mod-2 rank: 1" in out

    def test_plain_text_hopf(self, capsys):
        code, out, _ = run(capsys, "homology", DATA / "hopf_plus.txt")
        assert code == 0 and out.startswith("H1 = Z\n")

    def test_empty_matrix(self, capsys, tmp_path):
        f = tmp_path / "empty.json"
        f.write_text('{"matrix": []}')
        code, out, _ = run(capsys, "homology", f)
        assert code == 0 and out.startswith("H1 = 0\n")

    def test_json_and_extra_prime(self, capsys):
        code, out, _ = run(capsys, "homology", DATA / "z2_z3.json", "--format", "json", "--prime", "11")
        rep = json.loads(out)
        assert code == 0
        assert rep["invariant_factors"] == [6]
        assert rep["primary_form"] == "Z/2 + Z/3"
        assert set(rep["mod_p_ranks"]) == {"2", "3", "5", "7", "11"}

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("2 0\n0 2\n"))
        code, out, _ = run(capsys, "homology", "-")
        assert code == 0 and out.startswith("H1 = Z/2 + Z/2")

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("1 2\n3 4\n", "not symmetric: entry (1,2)"),
            ("1 2\n2\n", "line 2: has 1 entries"),
            ("1 x\n", "line 1: non-integer"),
            ('{"matrix": [[1, 2.5], [2.5, 1]]}', "row 1: entries must be integers"),
            ('{"matrix": [[1, 2]', "invalid JSON"),
        ],
    )
    def test_bad_input_exits_two(self, capsys, tmp_path, text, fragment):
        f = tmp_path / "m.txt"
        f.write_text(text)
        code, out, err = run(capsys, "homology", f)
        assert code == 2 and out == ""
        assert fragment in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "homology", tmp_path / "nope.json")
        assert code == 2 and "cannot read" in err


class TestLiftCommand:
    def test_clasp_involution(self, capsys):
        code, out, _ = run(capsys, "lift", DATA / "clasp.json", "--prime", "2", "--format", "json")
        rep = json.loads(out)
        assert code == 0
        assert rep["strongly_periodic"]
        assert rep["matrix"] == [[0, 2], [2, 0]]
        assert rep["blocks"]["all_circulant"]

    def test_not_strongly_periodic(self, capsys):
        code, out, _ = run(capsys, "lift", DATA / "one_turn.json", "--prime", "3")
        assert code == 0
        assert out.startswith("not strongly periodic (winding 1 mod 3)")

    def test_axis_row(self, capsys):
        code, out, _ = run(capsys, "lift", DATA / "circle.json", "--prime", "3", "--axis", "1", "--format", "json")
        rep = json.loads(out)
        assert code == 0 and rep["components"][-1] == "axis"
        assert rep["matrix"][-1][-1] == 1

    def test_invalid_tangle(self, capsys, tmp_path):
        bad = json.loads((DATA / "clasp.json").read_text())
        bad["open_strands"][0]["end"]["pos"] = 1
        f = tmp_path / "bad.json"
        f.write_text(json.dumps(bad))
        code, _, err = run(capsys, "lift", f, "--prime", "2")
        assert code == 2 and "invalid tangle" in err

    def test_composite_prime(self, capsys):
        code, _, err = run(capsys, "lift", DATA / "clasp.json", "--prime", "4")
        assert code == 2 and "prime" in err

    @pytest.mark.parametrize("name,p", [("clasp.json", 2), ("clasp.json", 3), ("split_quotient_linked_lift.json", 3)])
    def test_lift_output_pipes_into_homology(self, capsys, tmp_path, name, p):
        code, out, _ = run(capsys, "lift", DATA / name, "--prime", p, "--format", "json")
        assert code == 0
        f = tmp_path / "lifted.json"
        f.write_text(out)
        code, piped, _ = run(capsys, "homology", f)
        t = SeamTangle.from_json((DATA / name).read_text())
        direct = render_homology(homology_report(linking_matrix(lift(t, p))), "text")
        assert code == 0 and piped == direct + "\n"


class TestCheckPeriodic:
    def test_lens_three(self, capsys):
        code, out, _ = run(capsys, "check-periodic", DATA / "lens_3_1.json", "--prime", "3")
        assert code == 1 and "mod-3 rank = 1" in out

    def test_lens_8_3_involution(self, capsys):
        code, out, _ = run(capsys, "check-periodic", DATA / "lens_8_3.json", "--prime", "2")
        assert code == 0
        assert "NotPeriodic" not in out

    def test_z2_z3(self, capsys):
        code, out, _ = run(capsys, "check-periodic", DATA / "z2_z3.json", "--prime", "2", "--format", "json")
        verdicts = {v["rule"]: v["verdict"] for v in json.loads(out)}
        assert code == 1 and verdicts["Theorem 2.2"] == "NotPeriodic"

    def test_asymmetric(self, capsys, tmp_path):
        f = tmp_path / "a.txt"
        f.write_text("0 1\n2 0\n")
        code, _, _ = run(capsys, "check-periodic", f, "--prime", "3")
        assert code == 2


class TestVerify:
    @pytest.mark.parametrize("suite", ["lemma2.7", "lemma1.3", "thm2.2-cases", "prop2.10", "lemma2.9"])
    def test_green_suites(self, capsys, suite):
        code, out, _ = run(capsys, "verify", "--suite", suite, "--samples", "50") if suite in (
            "lemma1.3", "prop2.10", "lemma2.9") else run(capsys, "verify", "--suite", suite)
        assert code == 0 and out

    def test_congruence_suite_reports_counterexample(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "lemma2.6", "--bound", "4")
        assert code == 1 and "first counterexample" in out

    def test_p_two_flag(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "lemma2.7", "--bound", "3", "--include-p2", "--format", "json")
        assert code == 0
        assert "p=2" in " ".join(json.loads(out)["summary"])

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "nope")
        assert code == 2 and "unknown suite" in err

    def test_small_bound(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "lemma2.7", "--bound", "2")
        assert code == 2 and "bound" in err


def test_config_validation():
    with pytest.raises(InputError):
        RunConfig("verify", format="xml")
    with pytest.raises(ValueError):
        RunConfig("lift", prime=9)


def test_parse_comments_and_commas():
    assert parse_matrix_text("# hopf\n1, -1  # first\n-1, 1\n").to_rows() == [[1, -1], [-1, 1]]
