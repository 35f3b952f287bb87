"""Command line front end: subcommands, output formats, exit codes."""

import csv
import io
import json

import pytest

from hyperblow.cli import main
from hyperblow.tables import load_expected


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_single_table_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "X")
        assert code == 0
        assert "4/4" in out

    def test_mismatch_sets_exit_code(self, capsys, tmp_path):
        data = load_expected()
        data["X"][0]["volume"] = "5/9"
        bad = tmp_path / "tables.json"
        bad.write_text(json.dumps(data))
        code, out, _ = run(capsys, "verify", "X", "--data", str(bad))
        assert code == 1
        assert "volume" in out or "vol" in out

    def test_unknown_table_is_usage_error(self, capsys):
        code, _, err = run(capsys, "verify", "Q")
        assert code == 2


class TestSearch:
    def test_small_box_markdown(self, capsys):
        code, out, err = run(
            capsys,
            "search",
            "--alpha-min", "1", "--alpha-max", "1",
            "--degree-min", "12", "--degree-max", "13",
            "--weight-max", "7",
        )
        assert code == 0
        assert "(1,1,2,2,5)" in out
        assert "candidates" in err

    def test_json_round_trip(self, capsys):
        code, out, _ = run(
            capsys,
            "--format", "json",
            "search",
            "--alpha-min", "1", "--alpha-max", "1",
            "--degree-min", "13", "--degree-max", "13",
            "--weight-max", "7",
        )
        assert code == 0
        rows = json.loads(out)
        assert any(r["deg"] == 13 and r["vol"] == "1/3" for r in rows)

    def test_csv_output(self, capsys):
        code, out, _ = run(
            capsys,
            "--format", "csv",
            "search",
            "--alpha-min", "1", "--alpha-max", "1",
            "--degree-min", "12", "--degree-max", "12",
            "--weight-max", "6",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows and "vol" in rows[0]

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "range.json"
        cfg.write_text(json.dumps({"alpha_max": 1, "degree_max": 12, "weight_max": 6}))
        code, out, _ = run(capsys, "--format", "json", "search", "--config", str(cfg))
        assert code == 0
        assert json.loads(out)

    def test_bad_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "range.json"
        cfg.write_text(json.dumps({"dmax": 12}))
        code, _, err = run(capsys, "search", "--config", str(cfg))
        assert code == 2


class TestFamily:
    def test_single_instance(self, capsys):
        code, out, _ = run(capsys, "family", "6r", "3,4,5", "13..13")
        assert code == 0
        assert "78" in out
        assert "0" in out

    def test_range_skips_excluded(self, capsys):
        code, out, err = run(capsys, "--format", "json", "family", "6r", "3,4,5", "13..20")
        assert code == 0
        rows = json.loads(out)
        rs = {r["r"] for r in rows}
        assert 13 in rs and 15 not in rs
        assert all(r["vol"] == "0" for r in rows)

    def test_unknown_family_params(self, capsys):
        code, _, err = run(capsys, "family", "6r", "9,9,9", "5..5")
        assert code == 2


class TestLift:
    def test_direct_lift(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "lift", "1,1,10,14,35", "70")
        assert code == 0
        row = json.loads(out)[0]
        assert row["dim"] == 11
        assert row["vol"] == "1/70"

    def test_one_weight_lift(self, capsys):
        code, out, _ = run(
            capsys, "--format", "json", "lift", "1,1,2,3,7", "16", "--one-weight"
        )
        assert code == 0
        row = json.loads(out)[0]
        assert row["vol"] == "1/3"

    def test_low_amplitude_rejected(self, capsys):
        code, _, err = run(capsys, "lift", "3,4,5,7,13", "33")
        assert code == 2


class TestBounds:
    def test_both_bounds(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "bounds", "5", "4")
        assert code == 0
        rows = {r["case"]: r for r in json.loads(out)}
        assert rows["canonical dimension n-1"]["bound"] == "1/2"
        assert rows["canonical dimension n-1"]["note"] == "evaluated at p_g=5"
        assert rows["canonical dimension n-2"]["bound"] == "1/12"

    def test_high_dimension(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "bounds", "19", "18")
        assert code == 0
        rows = {r["case"]: r for r in json.loads(out)}
        assert rows["canonical dimension n-2"]["bound"] == "62/14739"


class TestTable:
    def test_pretty_print(self, capsys):
        code, out, _ = run(capsys, "table", "A")
        assert code == 0
        assert out.count("\n") >= 32

    def test_json_table(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "table", "C")
        assert code == 0
        assert len(json.loads(out)) == 11


class TestGlobalFlags:
    def test_rejects_zero_jobs(self, capsys):
        with pytest.raises(SystemExit):
            main(["--jobs", "0", "verify", "X"])

    def test_usage_error_without_command(self, capsys):
        with pytest.raises(SystemExit):
            main([])

    def test_determinism(self, capsys):
        a = run(capsys, "--format", "json", "table", "X")
        b = run(capsys, "--format", "json", "table", "X")
        assert a == b
