import io
import json
import re

import pytest

from kmc.assembly import EXAMPLE_MATRIX
from kmc.cli import main
from kmc.report import AnalysisRequest, analyze, from_json, to_json, to_text
from kmc.linalg import FieldSpec


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_analyze_mod3_example_text():
    code, out, err = run("analyze", "--matrix", EXAMPLE_MATRIX, "--coeff", "fp", "--p", "3", "--truncate", "20")
    assert code == 0
    assert "class         II  refined (iii)" in out
    assert "1 + 2t^7 + 3t^9 + 6t^11 + 7t^13 + 11t^15" in out


def test_finite_type_exits_2():
    code, out, err = run("analyze", "--matrix", "2,-1,0;-1,2,-1;0,-1,2")
    assert code == 2 and out == ""
    assert "FiniteTypeInput" in err


@pytest.mark.parametrize("argv", [
    ["analyze", "--matrix", "2,x;1"],
    ["analyze", "--matrix", EXAMPLE_MATRIX, "--coeff", "fp", "--p", "4"],
    ["analyze", "--matrix", EXAMPLE_MATRIX, "--coeff", "fp"],
    ["analyze", "--matrix", EXAMPLE_MATRIX, "--with-torsion", "2,6"],
    ["analyze", "--matrix", EXAMPLE_MATRIX, "--truncate", "-2"],
    ["analyze"],
    ["bogus"],
])
def test_input_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_truncation_from_environment(monkeypatch):
    monkeypatch.setenv("KMC_TRUNCATE", "10")
    code, out, _ = run("analyze", "--matrix", EXAMPLE_MATRIX, "--format", "json")
    assert code == 0 and json.loads(out)["truncation"] == 10
    monkeypatch.setenv("KMC_TRUNCATE", "ten")
    assert run("analyze", "--matrix", EXAMPLE_MATRIX)[0] == 2


def test_json_schema_and_round_trip():
    code, out, _ = run("analyze", "--matrix", EXAMPLE_MATRIX, "--coeff", "fp", "--p", "2", "--truncate", "12",
                       "--format", "json", "--with-mv-crosscheck", "--with-torsion", "2",
                       "--with-ring-structure", "--compare-paper-example")
    assert code == 0
    rep = json.loads(out)
    for key in ["matrix", "type", "symmetrizable", "class", "refined_class", "permutation", "field",
                "truncation", "series_coefficients", "closed_form", "summands", "crosscheck", "torsion",
                "ring_structure", "paper_diagnostics"]:
        assert key in rep
    assert rep["crosscheck"] == {"status": "match", "first_mismatch_degree": None}
    assert rep["torsion"][0]["witness_degree"] == 4
    assert rep["ring_structure"]["branch"] == "nonsymmetrizable"
    assert to_json(from_json(out)) == out


def test_text_and_json_carry_the_same_numbers():
    rep = analyze(AnalysisRequest(EXAMPLE_MATRIX, FieldSpec(2), 14, with_mv_crosscheck=True,
                                  torsion_primes=(2,), compare_paper_example=True))
    text = to_text(rep)
    line = next(l for l in text.splitlines() if l.startswith("coefficients"))
    assert [int(x) for x in line.split()[1:]] == rep["series_coefficients"]
    for s in rep["summands"]:
        assert " ".join(map(str, s["coefficients"])) in text
    for d in rep["paper_diagnostics"]:
        if d["degree"] is not None and d["computed"] is not None:
            assert f"t^{d['degree']}: computed {d['computed']}, printed {d['paper']}" in text


def test_output_is_deterministic():
    argv = ["analyze", "--matrix", "2,-2,-2;-1,2,-2;-1,-1,2", "--coeff", "fp", "--p", "5", "--truncate", "16",
            "--format", "json", "--with-mv-crosscheck"]
    first = run(*argv)[1]
    assert run(*argv, "--workers", "3")[1] == first
    assert run(*argv)[1] == first


def test_mismatch_exits_3(monkeypatch):
    import kmc.report as report

    monkeypatch.setattr(report, "crosscheck", lambda a, b: {"status": "mismatch", "first_mismatch_degree": 7})
    code, out, err = run("analyze", "--matrix", EXAMPLE_MATRIX, "--truncate", "8", "--with-mv-crosscheck")
    assert code == 3
    assert "crosscheck    mismatch (first mismatch at t^7)" in out
    assert "t^7" in err


def test_ring_structure_withheld_is_reported(monkeypatch):
    import kmc.report as report
    from kmc.errors import ClassIVUnverifiedConjecture

    def boom(*a, **k):
        raise ClassIVUnverifiedConjecture("P = P1+P2+P3 fails")

    monkeypatch.setattr(report, "ring_structure_report", boom)
    code, out, _ = run("analyze", "--matrix", "2,-2,-2;-1,2,-2;-1,-1,2", "--truncate", "6",
                       "--with-ring-structure", "--format", "json")
    assert code == 0 and json.loads(out)["ring_structure"]["status"] == "withheld"


def test_printed_form_comparison_on_other_matrix_is_not_applicable():
    code, out, _ = run("analyze", "--matrix", "2,-4,-4;-4,2,-4;-4,-4,2", "--truncate", "6",
                       "--compare-paper-example", "--format", "json")
    assert json.loads(out)["paper_diagnostics"][0]["kind"] == "not_applicable"


def test_torsion_warning_goes_to_stderr():
    code, out, err = run("analyze", "--matrix", EXAMPLE_MATRIX, "--truncate", "8", "--with-torsion", "2")
    assert code == 0 and "warning:" in err


def test_classify_and_invariants():
    code, out, _ = run("classify", "--matrix", EXAMPLE_MATRIX, "--format", "json")
    info = json.loads(out)
    assert code == 0 and info["class"] == "II" and info["pairs"]["12"] == "G2"
    code, out, _ = run("invariants", "--matrix", EXAMPLE_MATRIX, "--coeff", "fp", "--p", "3",
                       "--truncate", "12", "--subset", "12", "--subset", "123")
    assert code == 0
    assert re.search(r"^P12\s+1 1 2 2 3 3 5$", out, re.M)  # 1/((1-t^2)(1-t^4)(1-t^12))
    assert run("invariants", "--matrix", EXAMPLE_MATRIX, "--subset", "14")[0] == 2


def test_check_subset_of_criteria():
    code, out, _ = run("check", "--only", "5,6")
    assert code == 0
    assert out.splitlines()[-1] == "2/2 criteria passed"
