# mellinkit/api - JSON documents and command runners
"""
Schemas for spec, kernel and report files and the runners used by the CLI.
"""

from mellinkit.api.runners import RunOutcome, run_analyze, run_oracle, run_verify
from mellinkit.api.schemas import AnalysisSpec, KernelSchema, load_analysis_spec

__all__ = [
    "AnalysisSpec",
    "KernelSchema",
    "RunOutcome",
    "load_analysis_spec",
    "run_analyze",
    "run_oracle",
    "run_verify",
]
