import csv
import json
import shutil

import pytest

from conftest import CHAIN_ACCEPTABLE
from sfcavail import vims_example_path
from sfcavail.cli import main


@pytest.fixture()
def vims_config(tmp_path):
    dst = tmp_path / "vims.json"
    shutil.copy(vims_example_path(), dst)
    return dst


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestAnalyze:
    def test_json_report_lists_acceptable_terms(self, vims_config, capsys):
        code, out = run(
            capsys,
            "analyze", str(vims_config), "-l", "2,3,3,3,3", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["cost"] == 14.0
        assert doc["state_space"] == 14**14
        assert doc["availability"] == pytest.approx(0.99999066, abs=1e-7)
        accepted = {tuple(t["g"]): t["p"] for t in doc["acceptable_terms"]}
        assert set(accepted) == set(CHAIN_ACCEPTABLE)
        assert accepted[(40000, 60000)] == pytest.approx(0.9870, rel=1e-2)
        assert accepted[(40000, 50000)] == pytest.approx(5.690e-3, rel=1e-2)

    def test_text_report_mentions_headline_numbers(self, vims_config, capsys):
        code, out = run(capsys, "analyze", str(vims_config), "-l", "2,3,3,3,3")
        assert code == 0
        assert "availability" in out
        assert "unavailability" in out
        assert "9.34" in out  # unavailability 9.340e-06 in scientific form

    def test_redundancy_defaults_to_all_ones(self, vims_config, capsys):
        code, out = run(capsys, "analyze", str(vims_config), "--format", "json")
        assert code == 0
        assert json.loads(out)["redundancy"] == [1, 1, 1, 1, 1]

    def test_csv_has_one_row_per_term(self, vims_config, capsys):
        code, out = run(
            capsys,
            "analyze", str(vims_config), "-l", "2,3,3,3,3", "--format", "csv",
        )
        assert code == 0
        rows = list(csv.DictReader(out.splitlines()))
        assert len(rows) == 35
        assert set(rows[0]) == {"g1", "g2", "probability", "acceptable"}

    def test_malformed_config_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema_version": 1}')
        assert main(["analyze", str(bad)]) == 2
        err = capsys.readouterr().err
        assert "error:" in err

    def test_malformed_rate_unit_exits_2(self, vims_config, capsys):
        doc = json.loads(vims_config.read_text())
        doc["nodes"]["cscf-node"]["rates"]["mu_v"]["unit"] = "per_day"
        vims_config.write_text(json.dumps(doc))
        assert main(["analyze", str(vims_config)]) == 2
        assert "mu_v" in capsys.readouterr().err

    def test_out_writes_file_and_figure(self, vims_config, tmp_path, capsys):
        out_path = tmp_path / "report.json"
        code, _ = run(
            capsys,
            "analyze", str(vims_config), "-l", "2,3,3,3,3",
            "--format", "json", "--out", str(out_path),
        )
        assert code == 0
        assert out_path.exists()
        assert (tmp_path / "report.png").exists()

    def test_no_plot_suppresses_figure(self, vims_config, tmp_path, capsys):
        out_path = tmp_path / "report.json"
        code, _ = run(
            capsys,
            "analyze", str(vims_config), "--format", "json",
            "--out", str(out_path), "--no-plot",
        )
        assert code == 0
        assert out_path.exists()
        assert not (tmp_path / "report.png").exists()


class TestOptimize:
    def test_five_optima_at_cost_14(self, vims_config, capsys):
        code, out = run(
            capsys,
            "optimize", str(vims_config), "--A0", "0.99999", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["feasible"]
        assert doc["min_cost"] == 14.0
        assert len(doc["optima"]) == 5
        placements = {tuple(o["redundancy"]) for o in doc["optima"]}
        assert placements == {
            tuple(2 if i == m else 3 for i in range(5)) for m in range(5)
        }

    def test_infeasible_exits_3(self, vims_config, capsys):
        code = main(
            [
                "optimize", str(vims_config),
                "--A0", "0.999999999999", "--max-redundancy", "1",
                "--format", "json",
            ]
        )
        assert code == 3
        doc = json.loads(capsys.readouterr().out)
        assert not doc["feasible"]
        assert doc["best_availability"] > 0

    def test_csv_rows_cover_search_space(self, vims_config, tmp_path, capsys):
        out_path = tmp_path / "search.csv"
        code, _ = run(
            capsys,
            "optimize", str(vims_config), "--format", "csv",
            "--out", str(out_path), "--no-plot",
        )
        assert code == 0
        rows = list(csv.DictReader(out_path.read_text().splitlines()))
        assert len(rows) == 4**5
        assert set(rows[0]) == {"redundancy", "cost", "availability", "feasible"}
        feasible = [r for r in rows if r["feasible"] == "1"]
        assert feasible


class TestSweep:
    def test_csv_columns_and_monotonicity(self, vims_config, tmp_path, capsys):
        out_path = tmp_path / "sweep.csv"
        code, _ = run(
            capsys,
            "sweep", str(vims_config), "--param", "lambda_s",
            "-l", "2,3,3,3,3", "--points", "7", "--format", "csv",
            "--out", str(out_path), "--no-plot",
        )
        assert code == 0
        rows = list(csv.DictReader(out_path.read_text().splitlines()))
        assert len(rows) == 7
        assert list(rows[0]) == [
            "parameter", "value_per_second", "value_human", "unit",
            "availability", "unavailability",
        ]
        avails = [float(r["availability"]) for r in rows]
        assert avails == sorted(avails, reverse=True)

    def test_mu_v_sweep_crosses_target_near_published_value(
        self, vims_config, capsys
    ):
        # Mean repair range 60..180 minutes: the five-nines line is crossed
        # a little above 105 minutes.
        code, out = run(
            capsys,
            "sweep", str(vims_config), "--param", "mu_v",
            "-l", "2,3,3,3,3", "--points", "31",
            "--range", "60:180", "--unit", "mttr_minutes",
            "--format", "json", "--threshold",
        )
        assert code == 0
        doc = json.loads(out)
        crossings = [
            (a["value_human"], b["value_human"])
            for a, b in zip(doc["points"], doc["points"][1:])
            if (a["availability"] - 0.99999) * (b["availability"] - 0.99999) < 0
        ]
        assert len(crossings) == 1
        lo_min = min(crossings[0])
        assert 90 < lo_min < 125
        assert doc["threshold"]["unit"] == "minutes"
        assert 95 < doc["threshold"]["value_human"] < 120

    def test_sweep_figure_rendered(self, vims_config, tmp_path, capsys):
        out_path = tmp_path / "sweep.csv"
        code, _ = run(
            capsys,
            "sweep", str(vims_config), "--param", "mu_s",
            "-l", "2,3,3,3,3", "--points", "5", "--format", "csv",
            "--out", str(out_path),
        )
        assert code == 0
        assert (tmp_path / "sweep.png").exists()

    def test_bad_range_exits_2(self, vims_config, capsys):
        assert (
            main(
                [
                    "sweep", str(vims_config), "--param", "mu_s",
                    "--range", "oops",
                ]
            )
            == 2
        )


class TestSimulate:
    def test_repeated_runs_are_byte_identical(self, vims_config, tmp_path, capsys):
        args = [
            "simulate", str(vims_config), "-l", "1,1,1,1,1",
            "--seed", "1", "--horizon", "1e6", "--replications", "3",
            "--format", "json", "--no-plot",
        ]
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_json_fields(self, vims_config, capsys):
        code, out = run(
            capsys,
            "simulate", str(vims_config), "--seed", "3",
            "--horizon", "1e6", "--replications", "2", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {
            "mean", "std_error", "replications", "horizon", "warmup", "seed",
        }
        assert doc["seed"] == 3
        assert doc["replications"] == 2
        assert 0.0 <= doc["mean"] <= 1.0
