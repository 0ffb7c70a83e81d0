"""CLI surface: argument validation, CSV/JSON contracts, determinism."""

import json

from berger_spheres.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    lines = text.split("\r\n")
    assert lines[-1] == ""  # trailing CRLF
    return [line.split(",") for line in lines[:-1]]


class TestSpectrum:
    def test_round_sphere(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--family", "u", "--n", "1",
                               "--t", "1", "--cutoff", "9")
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["t", "k", "j", "value", "status", "multiplicity"]
        values = {row[3] for row in rows[1:] if row[4] == "certain"}
        assert values == {"0.0000000000", "3.0000000000", "8.0000000000"}

    def test_sp_slice_row(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--family", "sp", "--n", "1",
                               "--t", "0.3", "--cutoff", "20")
        assert code == 0
        rows = csv_rows(out)
        assert ["0.3000000000", "2", "0", "16.0000000000", "certain", "5"] in rows

    def test_spin9_rejects_n(self, capsys):
        code, _, err = run_cli(capsys, "spectrum", "--family", "spin9", "--n", "1",
                               "--t", "0.3", "--cutoff", "20")
        assert code == 2
        assert "spin9 takes no n" in err

    def test_bad_t_rejected(self, capsys):
        code, _, err = run_cli(capsys, "spectrum", "--family", "u", "--n", "1",
                               "--t", "0", "--cutoff", "9")
        assert code == 2 and "positive" in err

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--family", "u", "--n", "1",
                               "--t", "1", "--cutoff", "9", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["schema_version"] == 1
        assert payload["command"] == "spectrum"
        assert payload["columns"][0] == "t"


class TestDiagram:
    def test_columns_and_degeneracy_block(self, capsys):
        code, out, _ = run_cli(capsys, "diagram", "--family", "sp", "--n", "1",
                               "--t-range", "0.1:2:0.1")
        assert code == 0
        rows = csv_rows(out)
        assert rows[0][:4] == ["t", "threshold", "l_0_0", "l_1_1"]
        block = [r for r in rows if r[0] == "#degeneracy"]
        assert block[0] == ["#degeneracy", "q", "t"]
        qs = [r[1] for r in block[1:]]
        assert qs == ["0", "1", "2", "3"]
        assert block[1][2] == "1.0000000000"
        assert block[2][2].startswith("0.34831069")

    def test_spin9_block_starts_at_one(self, capsys):
        code, out, _ = run_cli(capsys, "diagram", "--family", "spin9",
                               "--t-range", "0.05:2:0.05")
        assert code == 0
        rows = csv_rows(out)
        block = [r for r in rows if r[0] == "#degeneracy"]
        assert block[1][1:] == ["0", "1.0000000000"]
        assert block[2][2].startswith("0.42361")

    def test_range_validation(self, capsys):
        code, _, err = run_cli(capsys, "diagram", "--family", "u", "--n", "1",
                               "--t-range", "2:1:0.1")
        assert code == 2 and "t-range" in err


class TestDegeneracies:
    def test_sp_table(self, capsys):
        code, out, _ = run_cli(capsys, "degeneracies", "--family", "sp", "--n", "1",
                               "--qmax", "2")
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["q", "t", "index_jump"]
        assert [r[1][:8] for r in rows[1:]] == ["1.000000", "0.348310", "0.176604"]
        assert [r[2] for r in rows[1:]] == ["0", "5", "14"]

    def test_u_reports_only_trivial(self, capsys):
        code, out, _ = run_cli(capsys, "degeneracies", "--family", "u", "--n", "3",
                               "--qmax", "5", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["degeneracies"]) == 1
        assert "no degeneracy values" in payload["note"]

    def test_json_surds(self, capsys):
        code, out, _ = run_cli(capsys, "degeneracies", "--family", "spin9",
                               "--qmax", "1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        surd = payload["degeneracies"][1]["s"]
        assert (surd["alpha"], surd["beta"], surd["delta"]) == ("-2", "1/2", 19)
        assert "√" in surd["symbolic"]

    def test_infeasible_jump_prints_question_mark(self, capsys):
        code, out, _ = run_cli(capsys, "degeneracies", "--family", "sp", "--n", "2",
                               "--qmax", "3")
        assert code == 0
        rows = csv_rows(out)
        assert [r[2] for r in rows[1:]] == ["0", "14", "90", "?"]


class TestMorse:
    def test_single_t(self, capsys):
        code, out, _ = run_cli(capsys, "morse", "--family", "sp", "--n", "1",
                               "--t", "0.3")
        assert code == 0
        assert csv_rows(out)[1] == ["0.3000000000", "5"]

    def test_profile(self, capsys):
        code, out, _ = run_cli(capsys, "morse", "--family", "sp", "--n", "1",
                               "--qmax", "2")
        assert code == 0
        rows = csv_rows(out)
        assert rows[0] == ["q", "t_lower", "t_upper", "index"]
        assert rows[1][3] == "0" and rows[1][2] == "inf"
        assert rows[2][3] == "5" and rows[3][3] == "19"

    def test_needs_some_selector(self, capsys):
        code, _, err = run_cli(capsys, "morse", "--family", "sp", "--n", "1")
        assert code == 2 and "needs" in err


class TestLambda1:
    def test_spin9_unknown_multiplicity(self, capsys):
        code, out, _ = run_cli(capsys, "lambda1", "--family", "spin9", "--t", "1")
        assert code == 0
        assert csv_rows(out)[1] == ["1.0000000000", "15.0000000000", "?"]

    def test_range(self, capsys):
        code, out, _ = run_cli(capsys, "lambda1", "--family", "u", "--n", "2",
                               "--t-range", "0.2:0.4:0.1")
        assert code == 0
        rows = csv_rows(out)
        assert rows[1] == ["0.2000000000", "12.0000000000", "8"]
        assert len(rows) == 4


class TestClassify:
    def test_kinds(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--family", "sp", "--n", "1",
                               "--t", "0.348311", "--precision", "0.0001")
        assert code == 0
        assert csv_rows(out)[1] == ["0.34831", "bifurcation", "1", "5"]
        code, out, _ = run_cli(capsys, "classify", "--family", "u", "--n", "3",
                               "--t", "0.7")
        assert csv_rows(out)[1][1] == "locally_rigid"


class TestDeterminismAndConfig:
    def test_identical_runs_byte_equal(self, capsys):
        args = ("diagram", "--family", "sp", "--n", "1", "--t-range", "0.2:1:0.2")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_precision_controls_digits(self, capsys):
        _, out, _ = run_cli(capsys, "morse", "--family", "sp", "--n", "1",
                            "--t", "0.3", "--precision", "0.001")
        assert csv_rows(out)[1][0] == "0.3000"

    def test_env_precision_override(self, capsys, monkeypatch):
        monkeypatch.setenv("BERGER_PRECISION", "0.01")
        _, out, _ = run_cli(capsys, "morse", "--family", "sp", "--n", "1", "--t", "0.3")
        assert csv_rows(out)[1][0] == "0.300"

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.csv"
        code, out, _ = run_cli(capsys, "lambda1", "--family", "spin9", "--t", "1",
                               "--output", str(target))
        assert code == 0 and out == ""
        raw = target.read_bytes()
        assert b"\r\n" in raw and raw.startswith(b"t,lambda1")


class TestVerifyCommand:
    def test_exit_zero_and_report(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, _, err = run_cli(capsys, "verify", "--quiet", "--output", str(target))
        assert code == 0
        report = json.loads(target.read_text())
        assert report["passed"] is True
        assert report["schema_version"] == 1
        names = {c["name"] for c in report["checks"]}
        assert "spin9_radicand_comparison" in names
        assert "sp_breakpoint_factor" in names
