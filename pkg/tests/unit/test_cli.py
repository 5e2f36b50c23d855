# tests/unit/test_cli.py
"""
Unit tests for the mellinkit command-line interface.
"""
import json
import os

import click
import pytest
from click.testing import CliRunner

from mellinkit.cli import main, parse_complex
from mellinkit.core.errors import MellinKitError

CAUCHY = {"builtin": "power_pole", "c": [-1, 0], "m": 1}


@pytest.fixture
def runner(reset_logging):
    return CliRunner()


def _write(name: str, payload) -> str:
    with open(name, "w", encoding="utf-8") as f:
        json.dump(payload, f)
    return name


class TestParseComplex:
    """Tests for parse_complex."""

    def test_pair(self):
        assert parse_complex("1.5,-2") == 1.5 - 2j

    def test_real(self):
        assert parse_complex("3") == 3 + 0j

    def test_garbage(self):
        with pytest.raises(click.BadParameter, match="expected 're,im'"):
            parse_complex("a,b,c")


class TestGroup:
    """Tests for group-level behaviour."""

    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert "mellinkit" in result.output

    def test_kernels_table(self, runner):
        result = runner.invoke(main, ["kernels"])
        assert result.exit_code == 0
        assert "K1_{-1}" in result.output
        assert "N_{1,1}" in result.output

    def test_missing_config(self, runner):
        with runner.isolated_filesystem():
            _write("spec.json", {"expression": {"d0": [1, 0]}})
            result = runner.invoke(main, ["-c", "nope.yml", "analyze", "spec.json"])
        assert result.exit_code == 1
        assert "Configuration file not found" in result.output


class TestAnalyze:
    """Tests for the analyze command."""

    def test_identity_is_elliptic(self, runner):
        with runner.isolated_filesystem():
            _write("spec.json", {"expression": {"d0": [1, 0]}})
            result = runner.invoke(main, ["--grid", "16", "analyze", "spec.json"])
            assert os.path.exists(os.path.join("out", "report.json"))
            assert os.path.exists(os.path.join("out", "symbol_trace.csv"))
        assert result.exit_code == 0
        assert "Symbol is elliptic" in result.output

    def test_degenerate_symbol_exits_two(self, runner):
        with runner.isolated_filesystem():
            _write(
                "spec.json",
                {"expression": {"d0": [-1, 0], "terms": [{"kernel": CAUCHY}]}},
            )
            result = runner.invoke(main, ["--grid", "32", "analyze", "spec.json"])
        assert result.exit_code == 2
        assert "not elliptic" in result.output

    def test_invalid_p(self, runner):
        with runner.isolated_filesystem():
            _write("spec.json", {"space": {"p": 0.5}})
            result = runner.invoke(main, ["analyze", "spec.json"])
        assert result.exit_code == 1
        assert "space.p" in result.output
        assert "p must lie in (1, inf)" in result.output

    def test_runner_errors_exit_one(self, runner, mocker):
        mocker.patch("mellinkit.cli.run_analyze", side_effect=MellinKitError("boom"))
        with runner.isolated_filesystem():
            _write("spec.json", {})
            result = runner.invoke(main, ["analyze", "spec.json"])
        assert result.exit_code == 1
        assert "❌ Error: boom" in result.output


class TestVerifyIdentities:
    """Tests for the verify-identities command."""

    def test_positive_pole_rejected(self, runner):
        with runner.isolated_filesystem():
            result = runner.invoke(
                main, ["verify-identities", "--case", "commutation", "--c", "1,0"]
            )
        assert result.exit_code == 1
        assert "arg c != 0 required" in result.output

    def test_order_zero_lifting(self, runner):
        with runner.isolated_filesystem():
            result = runner.invoke(
                main,
                [
                    "verify-identities",
                    "--case",
                    "lifting-k1",
                    "--c",
                    "-1,0",
                    "--s",
                    "0",
                    "--n",
                    "1024",
                ],
            )
            assert os.path.exists(os.path.join("out", "result.json"))
        assert result.exit_code == 0
        assert "lifting-k1: rel_residual" in result.output

    def test_bad_complex(self, runner):
        result = runner.invoke(
            main, ["verify-identities", "--case", "zbeta", "--c", "x,y"]
        )
        assert result.exit_code == 2
        assert "expected 're,im'" in result.output

    def test_unknown_case(self, runner):
        result = runner.invoke(main, ["verify-identities", "--case", "nope"])
        assert result.exit_code == 2


class TestOracle:
    """Tests for the oracle command."""

    def test_agreement(self, runner):
        with runner.isolated_filesystem():
            _write("k.json", CAUCHY)
            result = runner.invoke(
                main, ["--out", "res", "oracle", "--kernel", "k.json", "--n", "5"]
            )
            assert os.path.exists(os.path.join("res", "symbols.csv"))
        assert result.exit_code == 0
        assert "max abs_err" in result.output

    def test_empty_kernel(self, runner):
        with runner.isolated_filesystem():
            _write("k.json", {"terms": []})
            result = runner.invoke(main, ["oracle", "--kernel", "k.json", "--n", "3"])
        assert result.exit_code == 0

    def test_real_double_pole(self, runner):
        with runner.isolated_filesystem():
            _write("k.json", {"terms": [{"c": [2, 0], "m": 2, "d": [1, 0]}]})
            result = runner.invoke(main, ["oracle", "--kernel", "k.json"])
        assert result.exit_code == 1
        assert "❌ Error" in result.output

    def test_invalid_kernel_document(self, runner):
        with runner.isolated_filesystem():
            _write("k.json", {"builtin": "n_alpha"})
            result = runner.invoke(main, ["oracle", "--kernel", "k.json"])
        assert result.exit_code == 1
        assert "invalid kernel" in result.output
