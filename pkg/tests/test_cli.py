import json
from pathlib import Path

import pytest

from confado import fileio
from confado.algebra import check_jacobi
from confado.cli import main
from confado.extensions import check_cocycle
from confado.families import vir_line_with_center
from confado.poly import parse_poly

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


def run(capsys, *argv):
    code = main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def d(name):
    return str(DATA / name)


def parse_vec(s):
    return tuple(parse_poly(t) for t in s.strip("[]").split(","))


class TestCheck:
    def test_virasoro_passes(self, capsys):
        code, rep = run(capsys, "check", d("vir.alg"))
        assert code == 0 and rep["status"] == "pass" and rep["residuals"] == []

    def test_abelian_passes(self, capsys):
        assert run(capsys, "check", d("abelian2.alg"))[0] == 0

    def test_bad_jacobi_residual_reparses(self, capsys):
        code, rep = run(capsys, "check", d("bad_jacobi.alg"))
        assert code == 1 and rep["status"] == "fail"
        C = fileio.load(d("bad_jacobi.alg")).payload
        lib = check_jacobi(C)
        assert not lib.ok
        assert [parse_vec(r) for r in rep["residuals"]] == [tuple(lib.residual)]

    def test_module_and_cochain(self, capsys):
        code, _ = run(capsys, "check", d("vir.alg"), d("m01.mod"), d("coboundary.coc"))
        assert code == 0
        code, rep = run(capsys, "check", d("vir.alg"), d("m01.mod"), d("not_cocycle.coc"))
        assert code == 1
        M = fileio.load(d("m01.mod")).payload.bind(fileio.load(d("vir.alg")).payload)
        lib = check_cocycle(fileio.load(d("not_cocycle.coc")).payload.bind(M))
        assert [parse_vec(r) for r in rep["residuals"]] == [tuple(lib.residual)]

    def test_parse_error_reports_position(self, tmp_path, capsys):
        bad = tmp_path / "bad.alg"
        bad.write_text("rank 1\ngenerators v\nbracket 1 1 = [d +* l]\n", encoding="utf-8")
        code, rep = run(capsys, "check", str(bad))
        assert code == 1 and rep["status"] == "error"
        assert rep["findings"][0]["line"] == 3

    def test_missing_file(self, capsys):
        code, rep = run(capsys, "check", "/nonexistent/x.alg")
        assert code == 1 and rep["status"] == "error"


class TestSeriesAndCenter:
    @pytest.mark.parametrize(
        "name, kind, ranks, verdict",
        [
            ("heisenberg_current.alg", "lower-central", "3,1,0", "nilpotent"),
            ("vir.alg", "derived", "1,1", "not solvable"),
            ("abelian2.alg", "derived", "2,0", "solvable"),
        ],
    )
    def test_series(self, capsys, name, kind, ranks, verdict):
        code, rep = run(capsys, "series", d(name), "--kind", kind)
        assert code == 0
        summary = rep["findings"][-1]
        assert summary["ranks"] == ranks and summary["verdict"] == verdict

    def test_center(self, capsys):
        _, rep = run(capsys, "center", d("heisenberg_current.alg"))
        assert rep["findings"][0] == {"rank": 1, "basis": "[0, 0, 1]"}


class TestModules:
    def test_irreducible_irrational_spectrum(self, capsys):
        code, rep = run(capsys, "irreducible", d("vir.alg"), d("weight_sqrt2.mod"))
        assert code == 1 and rep["status"] == "error"
        assert rep["findings"][0]["error"] == "NonSplitSpectrum"
        assert rep["findings"][0]["polynomial"] == "d^2 - 2"

    def test_irreducible_found(self, capsys):
        code, rep = run(capsys, "irreducible", d("vir.alg"), d("m01.mod"))
        assert code == 0 and "spec" in rep["findings"][0]

    def test_triangular(self, capsys):
        code, rep = run(capsys, "triangular", d("vir.alg"), d("extension.mod"))
        assert code == 0
        assert [f["tag"] for f in rep["findings"]] == ["irreducible", "trivial-free"]


class TestSplitExt:
    def test_worked_example(self, capsys):
        code, rep = run(capsys, "split-ext", d("vir.alg"), d("m01.mod"), d("coboundary.coc"))
        assert code == 0 and rep["findings"][0] == {"tau": "[1]", "residual": "0"}

    def test_zero(self, capsys):
        _, rep = run(capsys, "split-ext", d("vir.alg"), d("m01.mod"), d("zero.coc"))
        assert rep["findings"][0]["tau"] == "[0]"

    def test_non_cocycle(self, capsys):
        code, rep = run(capsys, "split-ext", d("vir.alg"), d("m01.mod"), d("not_cocycle.coc"))
        assert code == 1 and rep["status"] == "fail" and rep["residuals"] == ["[-l + m]"]

    def test_hypothesis_violation_is_unsupported(self, tmp_path, capsys):
        mod = tmp_path / "m00.mod"
        mod.write_text("module rank 1\nnames u\naction 1 1 = [d]\n", encoding="utf-8")
        code, rep = run(capsys, "split-ext", d("vir.alg"), str(mod), d("zero.coc"))
        assert code == 2 and rep["status"] == "unsupported"


class TestAdo:
    def test_worked_example(self, tmp_path, capsys):
        out, cert = tmp_path / "rep.mod", tmp_path / "cert.txt"
        code, rep = run(capsys, "ado", d("vir_ado.alg"), "--out", str(out), "--certificate", str(cert))
        assert code == 0 and rep["findings"][0]["module_rank"] == 5
        assert json.loads(cert.read_text())["ok"]
        code, rep = run(capsys, "verify-rep", d("vir_ado.alg"), str(out))
        assert code == 0 and rep["findings"][0]["kernel"] == "0"

    def test_text_certificate(self, tmp_path, capsys):
        cert = tmp_path / "cert.txt"
        assert main(["ado", d("vir_ado.alg"), "--certificate", str(cert)]) == 0
        capsys.readouterr()
        text = cert.read_text()
        assert "[kernel basis]\nnone" in text and text.rstrip().endswith("pass")

    def test_separate_split_file(self, tmp_path, capsys):
        alg = tmp_path / "bare.alg"
        alg.write_text(fileio.dump_algebra(vir_line_with_center(), with_split=False), encoding="utf-8")
        code, rep = run(capsys, "ado", str(alg), d("vir_ado.split"))
        assert code == 0 and rep["findings"][0]["module_rank"] == 5

    def test_virasoro(self, capsys):
        code, rep = run(capsys, "ado", d("vir.alg"))
        assert code == 0 and rep["findings"][0]["module_rank"] == 1

    def test_current_type_is_unsupported(self, capsys):
        code, rep = run(capsys, "ado", d("cur_sl2_rep.alg"))
        assert code == 2 and rep["status"] == "unsupported"
        assert rep["findings"][0]["reason"] == "UnsupportedCurrentType"

    def test_verify_rep_detects_kernel(self, capsys):
        code, rep = run(capsys, "verify-rep", d("vir_ado.alg"), d("m01.mod"))
        assert code == 1 and rep["findings"][0]["kernel"] != "0"

    def test_seed_flag_is_accepted(self, capsys):
        assert run(capsys, "ado", d("vir.alg"), "--seed", "17")[0] == 0
