import csv
import io
import json

import pytest

from thzfronthaul.cli import main
from thzfronthaul.report import TRACE_COLUMNS
from thzfronthaul.scenario import resolve_scenario


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def base_doc():
    return json.loads(resolve_scenario("baseline").read_text())


def write(tmp_path, doc, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc, indent=2))
    return str(p)


class TestCapacity:
    def test_human(self, capsys):
        code, out, _ = cli(capsys, "capacity", "baseline")
        assert code == 0
        assert "15.93 Gbit/s" in out

    def test_json(self, capsys):
        code, out, _ = cli(capsys, "capacity", "--scenario", "baseline", "--format", "json")
        doc = json.loads(out)
        assert doc["fronthaul_rate_dl_bps"] == pytest.approx(15.928888888888e9, rel=1e-12)
        assert doc["fronthaul_rate_ul_bps"] is None

    def test_output_file(self, capsys, tmp_path):
        dest = tmp_path / "cap.json"
        code, out, _ = cli(capsys, "capacity", "baseline", "--format", "json", "--output", str(dest))
        assert code == 0 and out == ""
        assert "fronthaul_rate_dl_bps" in json.loads(dest.read_text())


class TestPlan:
    def test_feasible(self, capsys):
        code, out, _ = cli(capsys, "plan", "baseline")
        assert code == 0
        assert "feasible" in out and "73.1 µs" in out and "4.629" in out

    def test_json_fields(self, capsys):
        _, out, _ = cli(capsys, "plan", "baseline", "--format", "json")
        ru = json.loads(out)["rus"][0]
        assert ru["margin"] == pytest.approx(4.63, abs=0.005)
        assert ru["latency_s"] == pytest.approx(73.1e-6, abs=0.05e-6)

    def test_two_hop_over_budget_exits_2(self, capsys):
        code, out, _ = cli(capsys, "plan", "two_hop_cfh")
        assert code == 2
        assert "INFEASIBLE" in out

    def test_budget_command(self, capsys):
        code, out, _ = cli(capsys, "budget", "baseline", "--format", "json")
        hop = json.loads(out)["hops"][0]
        assert code == 0
        assert hop["rx_power_dbm"] == pytest.approx(-47.97, abs=0.01)


class TestSweep:
    def test_linear_in_antennas(self, capsys):
        code, out, _ = cli(capsys, "sweep", "baseline", "--axis", "num_antennas", "--values", "1,2,4,8", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        rates = [float(r["fronthaul_rate_dl_bps"]) for r in rows]
        assert code == 0
        assert [r / rates[0] for r in rates] == pytest.approx([1, 2, 4, 8], rel=1e-12)

    def test_parallel_matches_serial(self, capsys):
        args = ("sweep", "baseline", "--axis", "bandwidth", "--values", "2e7,5e7,1e8,2e8,4e8", "--format", "csv")
        _, serial, _ = cli(capsys, *args)
        _, par, _ = cli(capsys, *args, "--jobs", "4")
        assert serial == par

    def test_unknown_axis_rejected(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main(["sweep", "baseline", "--axis", "colour", "--values", "1"])
        assert ei.value.code != 0
        assert "colour" in capsys.readouterr().err


class TestValidate:
    def test_ok(self, capsys):
        code, out, _ = cli(capsys, "validate", "baseline")
        assert code == 0 and out.startswith("ok:")

    def test_invalid_exit_1(self, capsys, tmp_path, base_doc):
        base_doc["fronthaul"]["overhead_factor"] = 0.5
        code, _, err = cli(capsys, "validate", write(tmp_path, base_doc))
        assert code == 1
        assert "overhead_factor ≥ 1" in err
        assert "s.json:" in err

    def test_missing_file_exit_1(self, capsys):
        code, _, err = cli(capsys, "validate", "does/not/exist.json")
        assert code == 1 and "not found" in err

    def test_no_scenario_exit_1(self, capsys):
        code, _, _ = cli(capsys, "plan")
        assert code == 1

    def test_list(self, capsys):
        code, out, _ = cli(capsys, "list")
        assert code == 0 and "baseline.json" in out.split()

    def test_table2(self, capsys):
        code, out, _ = cli(capsys, "table2", "--rate", "15.93e9", "--distance", "500", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and [r["reference"] for r in rows] == ["[25]"]


class TestSimulate:
    def test_trace_columns(self, capsys, tmp_path):
        trace = tmp_path / "t.csv"
        code, _, _ = cli(capsys, "simulate", "baseline", "--duration", "0.001", "--trace", str(trace))
        assert code == 0
        rows = list(csv.reader(trace.open()))
        assert tuple(rows[0]) == TRACE_COLUMNS
        assert len(rows) == 1 + 14
        assert all(r[5] == "1" for r in rows[1:])

    def test_byte_identical_runs(self, capsys):
        args = ("simulate", "morning_fog", "--format", "json", "--duration", "0.02")
        _, a, _ = cli(capsys, *args)
        _, b, _ = cli(capsys, *args)
        assert a == b

    def test_seed_override_changes_jittered_output(self, capsys):
        args = ("simulate", "morning_fog", "--format", "json", "--duration", "0.005")
        _, a, _ = cli(capsys, *args, "--seed", "1")
        _, b, _ = cli(capsys, *args, "--seed", "2")
        assert json.loads(a)["seed"] == 1
        assert a != b

    def test_over_budget_exit_2(self, capsys):
        code, out, _ = cli(capsys, "simulate", "two_hop_cfh", "--duration", "0.001", "--format", "json")
        assert code == 2
        assert json.loads(out)["aggregate"]["budget_violation_fraction"] == 1.0

    def test_within_budget_exit_0(self, capsys):
        code, _, _ = cli(capsys, "simulate", "two_hop_cut_through", "--duration", "0.001")
        assert code == 0

    def test_non_finite_written_as_null(self, capsys, tmp_path, base_doc):
        base_doc["sim"]["load_factor"] = 0.0
        code, out, _ = cli(capsys, "simulate", write(tmp_path, base_doc), "--duration", "0.001", "--format", "json")
        assert json.loads(out)["aggregate"]["latency_mean_s"] is None
        assert code == 0
