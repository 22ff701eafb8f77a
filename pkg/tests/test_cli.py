import csv
import io
import json
import subprocess
import sys

import pytest

from interpbound.cli import UsageError, main, parse_config, render, run

THEOREM1 = ["theorem1", "--p", "5", "--d", "2", "--domain", "1,2,3,4", "--z", "0", "--accept", "0,1"]


def run_json(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestParse:
    def test_theorem1_flags(self):
        cfg = parse_config(THEOREM1)
        assert cfg.command == "theorem1"
        assert cfg.parameters["domain"] == [1, 2, 3, 4]
        assert cfg.parameters["accept"] == [0, 1]
        assert cfg.seed == 0 and cfg.format == "json"

    def test_non_prime(self):
        with pytest.raises(UsageError, match="modulus must be prime"):
            parse_config(["theorem1", "--p", "6"])

    def test_flag_overrides_config(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("p: 5\nd: 2\ndomain: 1,2,3,4\naccept: [0, 1]\n")
        cfg = parse_config(["theorem1", "--config", str(path), "--d", "3"])
        assert cfg.parameters["d"] == 3
        assert cfg.parameters["accept"] == [0, 1]
        assert cfg.parameters["domain"] == [1, 2, 3, 4]

    def test_dashed_config_keys(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("t-max: 2\n")
        assert parse_config(["min-degree", "--p", "3", "--d", "1", "--config", str(path)]).parameters["t_max"] == 2

    def test_unknown_config_key(self, tmp_path, capsys):
        path = tmp_path / "run.yaml"
        path.write_text("p: 5\nbogus: 1\n")
        assert main(["theorem1", "--config", str(path)]) == 2
        assert "bogus" in capsys.readouterr().err

    def test_unknown_flag(self, capsys):
        assert main(["theorem1", "--bogus", "1"]) == 2

    def test_missing_command(self, capsys):
        assert main([]) == 2

    def test_bad_value_names_key(self):
        with pytest.raises(UsageError, match="'d'"):
            parse_config(["theorem1", "--d", "two"])

    def test_default_domain_excludes_z(self):
        cfg = parse_config(["theorem1", "--p", "5", "--z", "2"])
        assert cfg.parameters["domain"] == [0, 1, 3, 4]

    def test_help_lists_commands(self, capsys):
        with pytest.raises(SystemExit):
            main(["--help"])
        text = capsys.readouterr().out
        for name in ("independence", "theorem1", "min-degree", "block-symmetrize", "paturi-scan", "grover", "interpolate", "parity"):
            assert name in text


class TestRun:
    def test_theorem1(self, capsys):
        code, report = run_json(THEOREM1, capsys)
        assert code == 0
        assert report["results"]["max_gap"] == "0/1"
        assert report["passed"] and report["schema_version"] == 1
        assert report["parameters"]["seed"] == 0

    def test_min_degree(self, capsys):
        code, report = run_json(["min-degree", "--p", "3", "--d", "1", "--domain", "1,2", "--z", "0", "--eps", "0.5"], capsys)
        assert code == 0
        assert report["results"]["min_separating_degree"] == 2
        assert report["results"]["query_lower_bound"] == 1

    def test_grover(self, capsys):
        code, report = run_json(["grover", "--n", "1024", "--marked", "1", "--iterations", "25"], capsys)
        assert code == 0
        assert report["results"]["rows"][0]["success_probability"] >= 0.99

    def test_failed_expectation_exits_1(self, capsys):
        code = main(["independence", "--p", "3", "--d", "1", "--domain", "1,2", "--z", "1", "--expect", "holds"])
        captured = capsys.readouterr()
        assert code == 1 and json.loads(captured.out)["passed"] is False
        assert "[FAIL] independence" in captured.err

    def test_budget_exits_3(self, capsys):
        code = main(["theorem1", "--p", "5", "--d", "3", "--budget", "10"])
        assert code == 3
        assert "smaller parameters" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "argv",
        [
            ["independence", "--p", "3", "--d", "1", "--domain", "1,2", "--z", "1", "--exceptions", "1"],
            ["block-symmetrize", "--n", "8", "--k", "2"],
            ["parity", "--u", "5"],
            ["interpolate", "--model", "random", "--p", "5", "--d", "2", "--domain", "1,2,3,4", "--n", "12"],
            ["paturi-scan", "--m", "10,25"],
        ],
    )
    def test_commands_pass(self, argv, capsys):
        code, report = run_json(argv, capsys)
        assert code == 0 and report["passed"]

    def test_output_file_and_csv(self, tmp_path, capsys):
        out = tmp_path / "scan.csv"
        assert main(["paturi-scan", "--m", "10,25", "--format", "csv", "--output", str(out)]) == 0
        rows = list(csv.DictReader(io.StringIO(out.read_text())))
        assert [r["m"] for r in rows] == ["10", "25"]
        assert rows[1]["degree"] == "4"

    def test_csv_key_value_fallback(self):
        text = render(run(parse_config(THEOREM1)), "csv")
        assert text.splitlines()[0] == "key,value"
        assert "max_gap,0/1" in text

    def test_jobs_do_not_change_results(self):
        a = run(parse_config(["paturi-scan", "--m", "4,9,16"]))
        b = run(parse_config(["paturi-scan", "--m", "4,9,16", "--jobs", "2"]))
        assert a["results"] == b["results"]


def results_record(argv):
    proc = subprocess.run([sys.executable, "-m", "interpbound", *argv], capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    data = json.loads(proc.stdout)
    data.pop("wall_time_s")
    return json.dumps(data, sort_keys=True)


@pytest.mark.parametrize(
    "argv",
    [
        THEOREM1,
        ["interpolate", "--model", "random", "--p", "5", "--d", "2", "--domain", "1,2,3,4", "--n", "15", "--seed", "7"],
        ["grover", "--n", "64", "--marked", "3", "--seed", "5"],
    ],
)
def test_reproducible_across_processes(argv):
    assert results_record(argv) == results_record(argv)
