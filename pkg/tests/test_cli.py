import csv
import io

import pytest

from offdiag_rado import cli
from offdiag_rado.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, rows_to_csv, run_sweep


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def data_columns(text):
    rows = list(csv.reader(io.StringIO(text)))
    return [row[:-1] for row in rows]


class TestCompute:
    def test_verify_agrees(self):
        code, text = run("compute", "--c", "1", "--k", "3", "--verify", "--cap", "30")
        assert code == EXIT_OK
        assert "formula: 11" in text and "search: 11" in text and "AGREE" in text
        assert "HighBranch" in text

    def test_parity(self):
        code, text = run("compute", "--c", "1", "--k", "2")
        assert code == EXIT_OK
        assert "INFINITE (parity)" in text

    def test_parity_verify_consistent(self):
        code, text = run("compute", "--c", "1", "--k", "2", "--verify", "--cap", "25")
        assert code == EXIT_OK
        assert "EXCEEDED_CAP(25)" in text

    def test_continuous(self):
        code, text = run("compute", "--c", "1", "--k", "1", "--alpha", "1/2")
        assert code == EXIT_OK and "formula: 13/2" in text

    def test_cap_too_small(self):
        code, text = run("compute", "--c", "1", "--k", "3", "--verify", "--cap", "10")
        assert code == EXIT_CAP and "EXCEEDED_CAP(10)" in text

    @pytest.mark.parametrize(
        "argv",
        [
            ["compute", "--c", "0", "--k", "1"],
            ["compute", "--c", "3", "--k", "1"],
            ["compute", "--c", "1.5", "--k", "3"],
            ["compute", "--c", "1/2", "--k", "3"],
            ["compute", "--k", "3"],
            ["frobnicate"],
        ],
    )
    def test_usage_errors(self, argv):
        try:
            code = main(argv, out=io.StringIO())
        except SystemExit as exc:
            code = exc.code
        assert code == EXIT_USAGE


class TestSweep:
    def test_small_grid(self):
        code, text = run("sweep", "--c-max", "3", "--k-max", "7", "--cap", "40")
        assert code == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(text)))
        # one row per 1 <= c <= 3, c <= k <= 7
        assert len(rows) == 7 + 6 + 5
        assert [(int(r["c"]), int(r["k"])) for r in rows] == sorted((int(r["c"]), int(r["k"])) for r in rows)
        assert not [r for r in rows if r["status"] == "MISMATCH"]
        for r in rows:
            if r["branch"] != "ParityInfinite":
                assert r["formula_value"] == r["search_value"]

    def test_single_row(self):
        code, text = run("sweep", "--c-max", "1", "--k-max", "1", "--cap", "20")
        header, row = data_columns(text)
        assert header[:8] == ["c", "k", "alpha", "branch", "formula_value", "search_value", "lower_bound_ok", "certificate_ok"]
        assert row[:8] == ["1", "1", "", "LowBranch", "9", "9", "ok", "ok"]

    def test_parity_row(self):
        _, text = run("sweep", "--c-max", "1", "--k-max", "2", "--cap", "20")
        rows = list(csv.DictReader(io.StringIO(text)))
        r12 = rows[1]
        assert (r12["c"], r12["k"], r12["status"]) == ("1", "2", "INFINITE")
        assert r12["search_value"] == "EXCEEDED_CAP(20)"

    def test_continuous_sweep(self):
        code, text = run("sweep", "--c-max", "2", "--k-max", "6", "--alpha", "1/2")
        assert code == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(text)))
        assert {r["alpha"] for r in rows} == {"1/2"}

    def test_discrete_needs_cap(self):
        assert run("sweep", "--c-max", "1", "--k-max", "1")[0] == EXIT_USAGE

    def test_parallel_is_byte_identical(self, monkeypatch):
        serial = rows_to_csv(run_sweep(3, 7, 30))
        monkeypatch.setenv("RADO_JOBS", "3")
        _, text = run("sweep", "--c-max", "3", "--k-max", "7", "--cap", "30")
        assert data_columns(text) == data_columns(serial)

    def test_jobs_flag_wins(self, monkeypatch):
        monkeypatch.setenv("RADO_JOBS", "nonsense")
        assert cli._jobs(2) == 2
        with pytest.raises(cli.UsageError):
            cli._jobs(None)

    def test_out_file(self, tmp_path):
        path = tmp_path / "sweep.csv"
        code, text = run("sweep", "--c-max", "1", "--k-max", "3", "--cap", "20", "--out", str(path))
        assert code == EXIT_OK
        assert "3 rows" in text
        assert len(path.read_text().splitlines()) == 4

    def test_unwritable_out_names_path(self, tmp_path, capsys):
        bad = tmp_path / "missing" / "x.csv"
        code, _ = run("sweep", "--c-max", "1", "--k-max", "1", "--cap", "20", "--out", str(bad))
        assert code == EXIT_FAIL
        assert str(bad) in capsys.readouterr().err


class TestCertify:
    def test_low_small(self):
        code, text = run("certify", "--c", "1", "--k", "1")
        assert code == EXIT_OK
        assert "(1,1,3)_c ⟹ 3 is blue" in text
        assert "CERTIFIED" in text
        # chain elements collide at c = k = 1, so the red case closes early
        assert "already blue; contradiction" in text

    def test_low_full_chains(self):
        code, text = run("certify", "--c", "3", "--k", "5")
        assert code == EXIT_OK
        red = [line for line in text.splitlines() if line.startswith("  [R]") and "⟹" in line]
        blue = [line for line in text.splitlines() if line.startswith("  [B]") and "⟹" in line]
        assert (len(red), len(blue)) == (11, 8)

    def test_high_splits_on_k_minus_2c(self):
        code, text = run("certify", "--c", "1", "--k", "3")
        assert code == EXIT_OK
        assert "suppose 1 is red" in text
        assert "[R/r]" in text and "[R/b]" in text and "[B/r]" in text and "[B/b]" in text

    def test_parity_is_usage_error(self):
        assert run("certify", "--c", "1", "--k", "2")[0] == EXIT_USAGE

    def test_out_of_range_diagnostic(self):
        code, text = run("certify", "--c", "1", "--k", "3", "--alpha", "3/2")
        assert code == EXIT_FAIL
        assert "range: k-2c = 1 outside [3/2,13]" in text
        assert "STEP ERROR" in text

    def test_external_file(self, tmp_path):
        from importlib.resources import files

        text = files("offdiag_rado").joinpath("data/low_branch.cert").read_text()
        good = tmp_path / "good.cert"
        good.write_text(text)
        assert run("certify", "--c", "2", "--k", "2", "--cert", str(good))[0] == EXIT_OK
        bad = tmp_path / "bad.cert"
        bad.write_text(text.replace("step alpha alpha c => c+2*alpha B", "step alpha alpha c => c+2*alpha R"))
        code, out = run("certify", "--c", "2", "--k", "2", "--cert", str(bad))
        assert code == EXIT_FAIL and "conclusion-not-forced" in out
        broken = tmp_path / "broken.cert"
        broken.write_text("branch alpha R {\n")
        assert run("certify", "--c", "2", "--k", "2", "--cert", str(broken))[0] == EXIT_USAGE


class TestColoringFiles:
    def test_export_then_check(self, tmp_path):
        path = tmp_path / "lb.txt"
        assert run("export-coloring", "--c", "2", "--k", "2", "--out", str(path))[0] == EXIT_OK
        code, text = run("check-coloring", str(path))
        assert code == EXIT_OK and text.strip() == "VALID"
        # the same coloring is too long for c=k=1 parameters
        code, text = run("check-coloring", str(path), "--c", "1", "--k", "1")
        assert code == EXIT_FAIL and text.startswith("INVALID")

    def test_all_red(self, tmp_path):
        path = tmp_path / "red.txt"
        path.write_text("discrete 5 1 1\n" + "".join(f"{i} R\n" for i in range(1, 6)))
        code, text = run("check-coloring", str(path))
        assert code == EXIT_FAIL and text.strip() == "INVALID (1,1,3) red"

    def test_continuous_repaired(self, tmp_path):
        path = tmp_path / "iv.txt"
        assert run("export-coloring", "--c", "1", "--k", "1", "--alpha", "1", "--out", str(path))[0] == EXIT_OK
        assert path.read_text().startswith("continuous 1 9 1 1")
        assert run("check-coloring", str(path)) == (EXIT_OK, "VALID\n")

    def test_parity_export(self):
        code, text = run("export-coloring", "--c", "1", "--k", "2", "--n", "6")
        assert code == EXIT_OK
        assert text.splitlines()[1:] == ["1 B", "2 R", "3 B", "4 R", "5 B", "6 R"]

    def test_parse_error_has_line(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("discrete 3 1 1\n1 R\n1 B\n")
        assert run("check-coloring", str(path))[0] == EXIT_USAGE
        assert "line 3" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run("check-coloring", str(tmp_path / "nope"))[0] == EXIT_USAGE
