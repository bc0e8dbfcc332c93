import json
import os

import pytest

from sergeev.cli import EXIT_FAIL, EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, main, run_suite
from sergeev.config import ConfigError, RunConfig, parse_config, parse_coeffs, random_coeffs
from sergeev.report import SCHEMA, Expected, VerificationReport, write_atomic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConfig:
    def test_explicit(self):
        cfg = parse_config(["verify", "--n", "2", "--d", "2", "--coeffs", "a0=0"])
        assert (cfg.n, cfg.d, cfg.coeffs) == (2, 2, {})
        assert cfg.coefficient_samples() == [("x^d", {})]

    def test_random(self):
        cfg = parse_config(["verify", "--n", "3", "--d", "2", "--random-coeffs", "--seed", "7", "--samples", "3"])
        samples = cfg.coefficient_samples()
        assert len(samples) == 3 and samples == cfg.coefficient_samples()
        assert all(set(c) == {0} and c[0] != 0 for _, c in samples)

    def test_level_zero(self):
        with pytest.raises(ConfigError, match="level must be >= 1"):
            parse_config(["verify", "--n", "2", "--d", "0"])

    @pytest.mark.parametrize("text", ["b0=1", "a0", "a0=x", "a0=1/0"])
    def test_malformed_coeffs(self, text):
        with pytest.raises(ConfigError):
            parse_coeffs(text)

    def test_odd_offset(self):
        with pytest.raises(ConfigError):
            parse_config(["verify", "--n", "1", "--d", "2", "--coeffs", "a1=3"])

    def test_conflicting_sources(self):
        with pytest.raises(ConfigError):
            parse_config(["verify", "--n", "1", "--d", "2", "--coeffs", "a0=1", "--random-coeffs"])

    def test_unknown_check(self):
        with pytest.raises(ConfigError):
            parse_config(["verify", "--n", "1", "--d", "2", "--checks", "nope"])

    def test_config_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"n": 2, "d": 3, "coeffs": {"a1": "1/2"}, "budget": 100}))
        cfg = parse_config(["verify", "--config", str(path), "--budget", "50"])
        assert (cfg.n, cfg.d, cfg.budget) == (2, 3, 50)
        assert str(cfg.coeffs[1]) == "1/2"

    def test_config_file_unknown_key(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"n": 2, "d": 3, "colour": 1}))
        with pytest.raises(ConfigError, match="unknown config keys"):
            parse_config(["verify", "--config", str(path)])

    def test_random_coefficient_range(self):
        import random
        rng = random.Random(0)
        for _ in range(50):
            for q in random_coeffs(5, rng).values():
                assert 1 <= abs(q.numerator) <= 9 and 1 <= q.denominator <= 9


class TestSuite:
    def test_default_suite_passes(self):
        code, doc = run_suite(RunConfig(n=2, d=2, deterministic=True))
        assert code == EXIT_OK
        assert doc["schema"] == SCHEMA
        asserted = [r for r in doc["reports"] if r["status"] in ("pass", "fail")]
        assert len(asserted) >= 10
        for r in doc["reports"]:
            if r["expected"] is not None:
                assert r["expected"]["provenance"] in ("PAPER", "TRIVIAL", "DERIVED")
                assert r["expected"]["citation"]

    def test_counterexample_line_at_level_two(self):
        _, doc = run_suite(RunConfig(n=1, d=2, deterministic=True))
        (line,) = [r for r in doc["reports"] if r["check"] == "even_symmetric_traceforms"]
        assert line["details"]["verdict"] == "no symmetrizing form exists at even level"

    def test_self_test_fail(self):
        code, doc = run_suite(RunConfig(n=1, d=2, self_test_fail=True))
        assert code == EXIT_FAIL
        (bad,) = [r for r in doc["reports"] if r["status"] == "fail"]
        assert bad["witness"] is not None

    def test_budget_partial_run(self):
        code, doc = run_suite(RunConfig(n=2, d=3, budget=50, deterministic=True))
        assert code == EXIT_PARTIAL
        statuses = {r["check"]: r["status"] for r in doc["reports"]}
        assert statuses["relations"] == "skipped"
        assert statuses["cocenter_rank"] == "pass"

    def test_reported_lines_do_not_fail(self):
        code, doc = run_suite(RunConfig(n=2, d=2, checks=("ranks",), deterministic=True))
        assert code == EXIT_OK
        assert any(r["status"] == "reported" for r in doc["reports"])

    def test_byte_identical(self, tmp_path, capsys):
        path = tmp_path / "r.json"
        argv = ["verify", "--n", "2", "--d", "1", "--random-coeffs", "--seed", "3", "--samples", "2",
                "--deterministic", "--out", str(path)]
        assert main(argv) == EXIT_OK
        first = path.read_bytes()
        assert main(argv) == EXIT_OK
        assert path.read_bytes() == first


class TestCommands:
    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "verify", "--n", "2", "--d", "0")
        assert code == EXIT_USAGE and "level must be >= 1" in err
        assert run(capsys, "frobnicate")[0] == EXIT_USAGE

    def test_enum(self, capsys):
        code, out, _ = run(capsys, "enum", "--n", "2", "--d", "2", "--set", "hat")
        assert code == EXIT_OK
        assert json.loads(out) == [
            {"lambda": [{"part": 1, "color": 1}, {"part": 1, "color": 1}], "mu": []},
            {"lambda": [{"part": 2, "color": 1}], "mu": []},
        ]
        _, out, _ = run(capsys, "enum", "--n", "3", "--d", "1", "--set", "partitions")
        assert json.loads(out) == [[3], [2, 1], [1, 1, 1]]

    def test_mult(self, capsys):
        code, out, _ = run(capsys, "mult", "--n", "2", "--d", "2", "--word", "s1 x1")
        assert code == EXIT_OK
        assert sorted(json.loads(out)) == sorted([
            "-1 * x^(0,0) c{} w[12]", "-1 * x^(0,0) c{1,2} w[12]", "1 * x^(0,1) c{} w[21]"])

    def test_trace_check(self, capsys):
        code, out, _ = run(capsys, "trace-check", "--n", "1", "--d", "2")
        doc = json.loads(out)
        assert code == EXIT_OK
        assert {"check", "n", "d", "coeffs", "pairs_tested", "failures", "elapsed_ms"} <= set(doc)
        assert doc["pairs_tested"] == 16 and doc["failures"] == []

    def test_gram_csv(self, capsys):
        code, out, _ = run(capsys, "gram", "--n", "1", "--d", "2", "--show-matrix", "--format", "csv")
        assert code == EXIT_OK
        assert len(out.strip().splitlines()) == 4

    def test_gram_json(self, capsys):
        _, out, _ = run(capsys, "gram", "--n", "1", "--d", "2")
        assert json.loads(out)["computed"] == "-1"

    @pytest.mark.parametrize("cmd,want", [("cocenter-rank", 2), ("supercocenter-rank", 2), ("center-rank", 2)])
    def test_rank_commands(self, capsys, cmd, want):
        code, out, _ = run(capsys, cmd, "--n", "2", "--d", "2", "--format", "csv")
        assert code == EXIT_OK
        header, row = out.strip().splitlines()
        assert row.split(",")[4] == str(want)

    def test_markdown(self, capsys):
        _, out, _ = run(capsys, "cocenter-rank", "--n", "1", "--d", "2", "--format", "markdown")
        assert out.startswith("| n | d |")


class TestReports:
    def test_fail_requires_witness(self):
        with pytest.raises(ValueError):
            VerificationReport("x", {}, status="fail")

    def test_bad_tag(self):
        with pytest.raises(ValueError):
            Expected(1, "GUESS", "")

    def test_atomic_write_replaces(self, tmp_path):
        path = tmp_path / "sub" / "r.json"
        write_atomic(str(path), "one")
        write_atomic(str(path), "two")
        assert path.read_text() == "two"
        assert os.listdir(path.parent) == ["r.json"]
