"""CLI contract tests: exit codes, deterministic output, CSV/JSON schema."""
import csv
import io
import json
import math

import pytest

from qbound import bounds, q
from qbound.cli import CSV_FIELDS, main


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


class TestEval:
    def test_basic_row(self):
        code, text = run_cli("eval", "--x", "1", "--kappa", "2")
        assert code == 0
        assert "q_ref = 0.15865525393145705" in text
        assert "rel_gap = 0.099192730052052938" in text

    def test_trivial_kappa(self):
        code, text = run_cli("eval", "--x", "0", "--kappa", "1", "--format", "json")
        assert code == 0
        rec = json.loads(text)[0]
        assert rec["g_lower"] == 0.0
        assert rec["q_ref"] == 0.5

    def test_kappa_below_one_exits_2(self):
        code, _ = run_cli("eval", "--x", "1", "--kappa", "0.5")
        assert code == 2

    def test_nonfinite_x_exits_2(self):
        code, _ = run_cli("eval", "--x", "inf", "--kappa", "2")
        assert code == 2

    def test_json_matches_api(self):
        code, text = run_cli("eval", "--x", "2.5", "--kappa", "3", "--format", "json")
        rec = json.loads(text)[0]
        assert rec["q_ref"] == q(2.5)
        assert rec["g_lower"] == bounds.g_lower(2.5, 3.0)


class TestTable:
    def test_row_count(self):
        code, text = run_cli(
            "table", "--x-min", "0", "--x-max", "5", "--x-count", "6", "--kappa", "2"
        )
        assert code == 0
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(CSV_FIELDS)
        assert len(lines) == 7  # header + 6 rows

    def test_csv_round_trip_bit_for_bit(self):
        code, text = run_cli(
            "table",
            "--x-min", "0.25", "--x-max", "4", "--x-count", "16",
            "--kappa", "1.5", "--kappa", "3",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(text)))
        assert len(rows) == 32
        for row in rows:
            x = float(row["x"])
            kappa = float(row["kappa"])
            assert float(row["q_ref"]) == q(x)
            assert float(row["g_lower"]) == bounds.g_lower(x, kappa)
            assert float(row["boyd_lower_q"]) == bounds.boyd_lower_q(x)
            assert float(row["chernoff_upper"]) == bounds.chernoff_upper(x)
            assert float(row["rel_gap"]) == (q(x) - bounds.g_lower(x, kappa)) / q(x)

    def test_ordering_bounds_on_rows(self):
        _, text = run_cli(
            "table", "--x-min", "0", "--x-max", "8", "--x-count", "30", "--kappa", "2"
        )
        for row in csv.DictReader(io.StringIO(text)):
            assert float(row["g_lower"]) <= float(row["q_ref"]) <= float(
                row["chernoff_upper"]
            )

    def test_deterministic(self):
        a = run_cli("table", "--x-min", "0", "--x-max", "3", "--x-count", "7", "--kappa", "2")
        b = run_cli("table", "--x-min", "0", "--x-max", "3", "--x-count", "7", "--kappa", "2")
        assert a == b

    def test_log_spacing_needs_positive_min(self):
        code, _ = run_cli(
            "table", "--spacing", "log", "--x-min", "0", "--x-max", "5",
            "--x-count", "6", "--kappa", "2",
        )
        assert code == 2


class TestVerifyCommand:
    def test_all_defaults_pass(self):
        code, text = run_cli("verify", "all", "--x-count", "501")
        assert code == 0
        assert "FAIL" not in text

    def test_corrupted_theorem_fails(self):
        code, text = run_cli(
            "verify", "theorem", "--kappa", "1000000",
            "--inflate-weight", "1.000001",
        )
        assert code == 1
        assert "FAIL" in text

    def test_lemma1_with_kappa_one_exits_2(self):
        code, _ = run_cli("verify", "lemma1", "--kappa", "1")
        assert code == 2

    def test_unknown_suite_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            run_cli("verify", "nonsense")
        assert exc.value.code == 2

    def test_json_report(self):
        code, text = run_cli(
            "verify", "theorem", "--x-count", "101", "--format", "json"
        )
        assert code == 0
        reports = json.loads(text)
        assert reports[0]["suite"] == "theorem"
        assert reports[0]["passed"] is True


class TestOptimizeCommand:
    def test_pointwise(self):
        code, text = run_cli("optimize", "pointwise", "--x", "1", "--format", "json")
        assert code == 0
        res = json.loads(text)
        assert res["argument"] == pytest.approx(1.5186, abs=2e-3)
        assert res["gap"] == pytest.approx(0.0098, abs=5e-4)

    def test_weight(self):
        code, text = run_cli("optimize", "weight", "--kappa", "2", "--format", "json")
        assert code == 0
        res = json.loads(text)
        assert res["objective"] == pytest.approx(0.39306, abs=1e-4)

    def test_interval_bad_lo_exits_2(self):
        code, _ = run_cli("optimize", "interval", "--x-lo", "0", "--x-hi", "2")
        assert code == 2


class TestRootsCommand:
    def test_kappa_two(self):
        code, text = run_cli("roots", "--kappa", "2", "--format", "json")
        assert code == 0
        data = json.loads(text)
        assert data["x1"] == pytest.approx(0.6236862429526105, rel=1e-12)
        assert data["x2"] == pytest.approx(1.4324906895398995, rel=1e-10)
        assert data["pivot"] == 1.0
        assert abs(data["residual_x1"]) <= 1e-12
        assert abs(data["residual_x2"]) <= 1e-12

    def test_kappa_one_exits_2(self):
        code, _ = run_cli("roots", "--kappa", "1")
        assert code == 2

    def test_near_degenerate_ordering(self):
        code, text = run_cli("roots", "--kappa", "1.001", "--format", "json")
        assert code == 0
        data = json.loads(text)
        assert data["x1"] < data["pivot"] < data["x2"]
