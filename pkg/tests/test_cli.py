"""Tests for the wordcert command line."""

import json

import pytest

import src.cli.main as cli_module
from src.cli.main import main

K3_BLOCK = "3 3\n0 1\n1 2\n0 2\nroot 0 1\n"


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("word,sym,code,verdict", [
    ("A B B^T A^T", None, 0, "Symmetric"),
    ("A A^T X", "X", 10, "SymTimesPsd"),
    ("A B", None, 20, "NotRealEigenvalued"),
])
def test_decide_exit_codes(capsys, word, sym, code, verdict):
    argv = ["decide", word] + (["--sym", sym] if sym else [])
    rc, record = run_json(capsys, argv)
    assert rc == code
    assert record["verdict"] == verdict
    assert record["schema"] == 1


def test_decide_text_report(capsys):
    assert main(["decide", "B^T C C^T B A A^T"]) == 0
    out = capsys.readouterr().out
    assert "verdict: Symmetric" in out
    assert "shift: 2" in out
    assert "half: C^T B A" in out


def test_decide_parse_error(capsys):
    assert main(["decide", "A-B"]) == 2
    assert "error:" in capsys.readouterr().err


def test_decide_writes_to_store(tmp_path, capsys):
    db = tmp_path / "ledger.db"
    assert main(["decide", "A^T A", "--store", str(db)]) == 0
    assert db.exists()


def test_witness_and_verify(tmp_path, capsys):
    saved = tmp_path / "assignment.txt"
    rc, record = run_json(capsys, ["witness", "A A A", "--save-assignment", str(saved)])
    assert rc == 0
    assert record["found"]
    assert record["kind"] == "Rotation"
    assert record["verification"]["passed"] is True
    assert saved.read_text().startswith("matrix A")

    rc, check = run_json(capsys, ["verify", "A A A", "--assignments", str(saved), "--claim", "not_real"])
    assert rc == 0
    assert check["passed"] is True
    assert check["is_real"] is False


def test_scalar_witness_for_sym_plus_word(capsys):
    rc, record = run_json(capsys, ["witness", "X", "--sym", "X"])
    assert rc == 0
    assert record["kind"] == "Scalar"
    assert record["claim"] == "not_psd"


def test_witness_for_symmetric_word(capsys):
    assert main(["witness", "A B B^T A^T"]) == 3
    assert "no witness exists" in capsys.readouterr().err


def test_witness_search_exhausted(capsys):
    rc, record = run_json(capsys, ["witness", "A B^T A B", "--trials", "0"])
    assert rc == 30
    assert record["found"] is False


def test_witness_search_uses_imag_tol(capsys):
    rc, record = run_json(capsys, ["witness", "A A", "--imag-tol", "0.5"])
    assert rc == 0
    assert record["kind"] == "Rotation"
    assert record["verification"]["imag_tol"] == 0.5
    assert record["verification"]["passed"] is True

    # uniform [-1, 1] entries keep |Im λ(A²)| ≤ 9 at dimension 3
    rc, record = run_json(capsys, ["witness", "A A", "--imag-tol", "100", "--dims", "2,3", "--trials", "50"])
    assert rc == 30
    assert record["found"] is False


def test_verify_refuted_claim(tmp_path, capsys):
    saved = tmp_path / "gram.txt"
    saved.write_text("matrix A\n2\n1 2\n3 4\n")
    assert main(["verify", "A A^T", "--assignments", str(saved), "--claim", "not_psd"]) == 1
    assert "claim not_psd: FAIL" in capsys.readouterr().out


def test_verify_rejects_asymmetric_sym_matrix(tmp_path, capsys):
    saved = tmp_path / "x.txt"
    saved.write_text("matrix X\n2\n0 1\n2 0\n")
    assert main(["verify", "X", "--sym", "X", "--assignments", str(saved)]) == 2


def test_verify_missing_file(tmp_path):
    assert main(["verify", "A", "--assignments", str(tmp_path / "absent.txt")]) == 2


def test_examples(capsys):
    rc, record = run_json(capsys, ["examples"])
    assert rc == 0
    assert len(record["examples"]) == 10


def test_report_to_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["decide", "A", "--format", "json", "--out", str(out)]) == 20
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["verdict"] == "NotRealEigenvalued"


def test_rigid_gen_size_guard(capsys):
    assert main(["graphlab", "rigid-gen", "--ell", "1", "--n0", "20"]) == 4
    assert "size guard" in capsys.readouterr().err


def test_sun_check_on_triangle_file(tmp_path, capsys):
    block = tmp_path / "k3.txt"
    block.write_text(K3_BLOCK)
    target = tmp_path / "target.txt"
    rc, record = run_json(capsys, [
        "graphlab", "sun-check", "--graph", str(block), "--skip-check", "--exact", "--write-target", str(target),
    ])
    assert rc in (0, 1)
    assert record["aligned"] == "-16"
    assert record["in_regime"] is True
    assert record["block"]["root"] == [0, 1]
    assert "manifest" in target.read_text()


def test_sun_check_float_overflow_falls_back_to_exact(tmp_path, capsys):
    block = tmp_path / "k6.txt"
    edges = [f"{u} {v}" for u in range(6) for v in range(u + 1, 6)]
    block.write_text("6 15\n" + "\n".join(edges) + "\nroot 0 1\n")
    rc, record = run_json(capsys, ["graphlab", "sun-check", "--graph", str(block), "--skip-check"])
    assert rc in (0, 1)
    assert record["exact"] is True
    assert isinstance(record["value"], str)


def test_arithmetic_failure_has_its_own_exit_code(monkeypatch, capsys):
    def overflow(*args, **kwargs):
        raise OverflowError("result too large")

    monkeypatch.setattr(cli_module, "sun_negativity_check", overflow)
    assert main(["graphlab", "sun-check", "--graph", "triangle", "--skip-check"]) == 5
    assert "arithmetic failure" in capsys.readouterr().err


def test_sun_check_reports_failed_hypotheses(tmp_path, capsys):
    block = tmp_path / "k3.txt"
    block.write_text(K3_BLOCK)
    rc, record = run_json(capsys, ["graphlab", "sun-check", "--graph", str(block)])
    assert rc == 1
    assert record["failed"] == ["endomorphisms"]


def test_walktree_on_path_file(tmp_path, capsys):
    g = tmp_path / "path.txt"
    g.write_text("5 4\n0 1\n1 2\n2 3\n3 4\n")
    rc, record = run_json(capsys, ["graphlab", "walktree", "--graph", str(g)])
    assert rc == 0
    assert record["partition"] == [[0, 4], [1, 3], [2]]
    assert record["match"] and record["degree_checks"]


def test_hom_with_builtin_pattern(tmp_path, capsys):
    target = tmp_path / "k2.txt"
    target.write_text("2 1\n0 1\n")
    assert main(["graphlab", "hom", "--pattern", "cycle:4", "--target", str(target), "--exact",
                 "--density"]) == 0
    out = capsys.readouterr().out
    assert "hom = 2" in out
    assert "density = 1/8" in out


def test_gsquare_sample_is_reproducible(capsys):
    argv = ["graphlab", "gsquare-sample", "--word", "A B", "--targets", "5", "--max-h", "3", "--seed", "4",
            "--exact", "--format", "json"]
    first_rc = main(argv)
    first = capsys.readouterr().out
    second_rc = main(argv)
    assert first_rc == second_rc
    assert first == capsys.readouterr().out
    assert json.loads(first)["targets"] == 5
