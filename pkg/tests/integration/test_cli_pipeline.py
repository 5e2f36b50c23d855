# tests/integration/test_cli_pipeline.py
"""
End-to-end runs of the CLI on the shipped specs, kernels and config.
"""
import json

import pandas as pd
import pytest
from click.testing import CliRunner

from mellinkit.cli import main


@pytest.fixture
def invoke(project_root_path, tmp_path, reset_logging, monkeypatch):
    """Run the CLI from the project root with outputs in tmp_path."""
    monkeypatch.chdir(project_root_path)
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    runner = CliRunner()

    def _invoke(*args: str):
        out = tmp_path / "out"
        log_path = tmp_path / "mellinkit.log"
        config = tmp_path / "mellinkit.yml"
        text = (project_root_path / "config" / "mellinkit.yml").read_text()
        config.write_text(text.replace("data/logs/mellinkit.log", str(log_path)))
        result = runner.invoke(main, ["--out", str(out), "-c", str(config), *args])
        return result, out

    return _invoke


def _report(out):
    return json.loads((out / "report.json").read_text())


class TestAnalyzePipeline:
    """analyze on the shipped specs."""

    def test_identity_plus_cauchy(self, invoke):
        result, out = invoke("analyze", "config/specs/identity_plus_cauchy.json")
        assert result.exit_code == 0, result.output
        report = _report(out)
        assert report["index"] == 0
        assert report["min_abs_det"] == pytest.approx(1.0, abs=1e-6)

    def test_minus_identity_plus_cauchy(self, invoke):
        result, out = invoke("analyze", "config/specs/minus_identity_plus_cauchy.json")
        assert result.exit_code == 2
        report = _report(out)
        assert report["elliptic"] is False
        assert report["min_abs_det"] < 1e-10

    def test_blaschke_shift(self, invoke):
        result, out = invoke("analyze", "config/specs/blaschke_shift.json")
        assert result.exit_code == 0, result.output
        report = _report(out)
        assert (report["winding"], report["index"]) == (1, -1)
        trace = pd.read_csv(out / "symbol_trace.csv")
        assert len(trace) == 4 * 128

    def test_bessel_matrix(self, invoke):
        result, out = invoke("analyze", "config/specs/bessel_matrix.json")
        assert result.exit_code == 0, result.output
        assert _report(out)["elliptic"] is True

    def test_grid_flag_overrides_spec(self, invoke):
        result, out = invoke(
            "--grid", "16", "analyze", "config/specs/identity_plus_cauchy.json"
        )
        assert result.exit_code == 0
        assert len(pd.read_csv(out / "symbol_trace.csv")) == 64


class TestOraclePipeline:
    """oracle on the shipped kernels."""

    @pytest.mark.parametrize(
        "kernel", ["cauchy_minus_one", "n_alpha_pi_3", "double_pole_upper"]
    )
    def test_closed_form_agrees(self, invoke, kernel):
        result, out = invoke(
            "oracle",
            "--kernel",
            f"config/kernels/{kernel}.json",
            "--n",
            "11",
            "--csv",
            f"{kernel}.csv",
        )
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out / f"{kernel}.csv")
        assert len(frame) == 11
        assert frame["abs_err"].max() <= 1e-8


class TestVerifyPipeline:
    """verify-identities with the shipped thresholds."""

    def test_zbeta(self, invoke):
        result, out = invoke(
            "verify-identities", "--case", "zbeta", "--c", "-1,0", "--n", "4096"
        )
        assert result.exit_code == 0, result.output
        payload = json.loads((out / "result.json").read_text())
        assert payload["passed"] is True
        assert payload["threshold"] == 1e-6
