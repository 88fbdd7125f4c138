"""CLI contract: commands, output formats, exit codes, determinism."""

import json

from click.testing import CliRunner

from chamberwalk.cli import main


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


class TestCount:
    def test_catalan(self):
        res = run("count", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--n", "6", "--method", "both")
        assert res.exit_code == 0
        rec = json.loads(res.output)
        assert rec["count"] == "5" and rec["match"] is True

    def test_hand_dp(self):
        res = run("count", "--kind", "axis", "--k", "1", "--weights", "1,1,1",
                  "--u", "1", "--v", "1", "--n", "2", "--method", "dp")
        assert json.loads(res.output)["count"] == "6"

    def test_zero_steps(self):
        res = run("count", "--kind", "axis", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--n", "0")
        assert json.loads(res.output)["count"] == "1"

    def test_range_emits_json_lines(self):
        res = run("count", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--n", "2:6:2")
        counts = [json.loads(line)["count"] for line in res.output.splitlines()]
        assert counts == ["1", "2", "5"]

    def test_free_endpoint(self):
        res = run("count", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--n", "4")
        assert json.loads(res.output)["count"] == "6"

    def test_fractional_count_string(self):
        res = run("count", "--kind", "axis", "--k", "1", "--weights", "1/2,1/3",
                  "--u", "1", "--v", "1", "--n", "2")
        assert json.loads(res.output)["count"] == "13/36"

    def test_usage_error_exit_2(self):
        res = run("count", "--kind", "axis", "--k", "2", "--weights", "0,1",
                  "--u", "1", "--v", "1,2", "--n", "2")
        assert res.exit_code == 2

    def test_resource_error_exit_3(self):
        res = run("count", "--kind", "axis", "--k", "3", "--weights", "0,1",
                  "--u", "1,2,3", "--v", "1,2,3", "--n", "1000000")
        assert res.exit_code == 3


class TestAsym:
    def test_supported(self):
        res = run("asym", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--n", "16")
        rec = json.loads(res.output)
        assert rec["supported"] is True
        assert abs(rec["value"] - 1634.0676) < 0.01

    def test_unsupported_has_no_value(self):
        res = run("asym", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--n", "15")
        rec = json.loads(res.output)
        assert rec["supported"] is False and "value" not in rec

    def test_free(self):
        res = run("asym", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--n", "100")
        assert json.loads(res.output)["supported"] is True


class TestCompare:
    def test_json(self):
        res = run("compare", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--grid", "16:128:16")
        rec = json.loads(res.output)
        assert -1.6 < rec["slope"] < -0.6
        assert len(rec["rows"]) >= 4

    def test_csv(self):
        res = run("compare", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--grid", "16:64:16", "--format", "csv")
        lines = res.output.splitlines()
        assert lines[0] == "n,exact_log,asym_log,ratio,delta,slope"
        assert len(lines) == 5     # header + inclusive grid 16,32,48,64

    def test_too_few_points_exit_2(self):
        res = run("compare", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--grid", "16:32:16")
        assert res.exit_code == 2


class TestPreset:
    def test_watermelon(self):
        res = run("preset", "watermelon", "--k", "2", "--n", "10")
        rec = json.loads(res.output)
        assert rec["count"] == "37975756"
        assert rec["steps"] == 20
        assert 0 < rec["ratio"] < 2

    def test_unknown_preset_exit_2(self):
        res = run("preset", "pineapple", "--k", "2", "--n", "10")
        assert res.exit_code == 2


class TestVerify:
    def test_exact_suites_pass(self):
        res = run("verify", "--suite", "det,schur,consistency", "--seed", "7")
        assert res.exit_code == 0
        assert json.loads(res.output)["pass"] is True

    def test_unknown_suite_exit_2(self):
        res = run("verify", "--suite", "nonsense", "--seed", "7")
        assert res.exit_code == 2

    def test_deterministic_output(self):
        args = ("verify", "--suite", "det,dsin", "--seed", "3")
        assert run(*args).output == run(*args).output


class TestEnvironment:
    def test_chamber_threads_accepted(self):
        res = run("count", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--n", "4", env={"CHAMBER_THREADS": "4"})
        assert res.exit_code == 0
        assert json.loads(res.output)["count"] == "2"

    def test_chamber_threads_invalid(self):
        res = run("count", "--kind", "diagonal", "--k", "1", "--weights", "0,1",
                  "--u", "1", "--v", "1", "--n", "4", env={"CHAMBER_THREADS": "lots"})
        assert res.exit_code == 2
