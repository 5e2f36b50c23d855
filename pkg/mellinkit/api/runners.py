# mellinkit/api/runners.py
"""
Command runners behind the CLI.

Each runner reads its inputs, does the numerical work, writes its
machine-readable outputs into an output directory and returns a
RunOutcome. Input and constraint problems are raised, not returned; the
CLI maps them to exit code 1.
"""
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd
import structlog

from mellinkit.api.schemas import load_analysis_spec, load_kernel
from mellinkit.calculus.assembly import assemble_symbol_bessel, assemble_symbol_lp
from mellinkit.calculus.fredholm import SymbolField, analyze_field
from mellinkit.calculus.rectangle import rectangle_grid
from mellinkit.core.config import MellinKitConfig
from mellinkit.kernels.algebra import require_admissible
from mellinkit.lab.identities import case_check, refinement_study
from mellinkit.symbols.mellin import mellin_symbol, mellin_symbol_oracle

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
# Non-elliptic symbol, residual above threshold or oracle disagreement
EXIT_FINDING = 2
# Grid multiples used by --refine
REFINE_FACTORS = (1, 2, 4)


@dataclass
class RunOutcome:
    """Exit code, written files and a short summary for the terminal."""

    exit_code: int
    outputs: List[Path] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)


def _write_json(path: Path, payload: Dict[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def symbol_trace(field_: SymbolField) -> pd.DataFrame:
    """Determinant of a symbol field along the rectangle, one row per sample."""
    det = field_.det()
    return pd.DataFrame(
        {
            "arclen": [point.arclen for point in field_.points],
            "leg": [point.leg.value for point in field_.points],
            "coord": [point.coord for point in field_.points],
            "re_det": det.real,
            "im_det": det.imag,
        }
    )


# --- analyze ---


def run_analyze(
    spec_path: Union[str, Path],
    out_dir: Union[str, Path],
    cfg: Optional[MellinKitConfig] = None,
    tol_ell: Optional[float] = None,
    n_per_leg: Optional[int] = None,
) -> RunOutcome:
    """
    Assemble the symbol of a spec file and run the Fredholm analysis.

    Tolerances are taken from the config, then the spec's overrides, then
    the explicit ``tol_ell`` argument. ``n_per_leg`` overrides the spec grid.

    Args:
        spec_path: AnalysisSpec JSON file.
        out_dir: Directory receiving report.json and symbol_trace.csv.
        cfg: Configuration; defaults apply when omitted.
        tol_ell: Ellipticity threshold override.
        n_per_leg: Grid size override.

    Returns:
        RunOutcome with exit code 0, or 2 when the symbol is not elliptic.

    Raises:
        FileNotFoundError: If the spec file is missing.
        ValueError: On malformed or invalid specs (including pydantic
            validation errors).
        MellinKitError: If assembly fails.
    """
    cfg = cfg or MellinKitConfig()
    spec = load_analysis_spec(spec_path)
    out = Path(out_dir)

    tolerances = cfg.tolerances.model_copy()
    if spec.tolerances is not None:
        overrides = spec.tolerances.model_dump(exclude_none=True)
        tolerances = tolerances.model_copy(update=overrides)
    if tol_ell is not None:
        tolerances = tolerances.model_copy(update={"tol_ell": tol_ell})
    n = n_per_leg if n_per_leg is not None else spec.grid.n_per_leg

    grid = rectangle_grid(n)
    expr = spec.to_expression()
    if spec.setting == "lp":
        symbol = assemble_symbol_lp(expr, spec.space.p, grid, tolerances.corner)
    else:
        symbol = assemble_symbol_bessel(
            expr,
            spec.space.p,
            spec.space.s,
            grid,
            gamma=spec.lift_gamma,
            corner_tol=tolerances.corner,
        )

    report = analyze_field(
        symbol,
        tol_ell=tolerances.tol_ell,
        closure=tolerances.closure,
        max_depth=cfg.grid.max_refine_depth,
    )
    report_path = _write_json(out / "report.json", report.to_json_dict())
    trace_path = out / "symbol_trace.csv"
    symbol_trace(symbol).to_csv(trace_path, index=False, float_format="%.17g")

    exit_code = EXIT_OK if report.elliptic else EXIT_FINDING
    logger.info(
        "analysis_written",
        spec=str(spec_path),
        elliptic=report.elliptic,
        index=report.index,
        exit_code=exit_code,
    )
    return RunOutcome(
        exit_code=exit_code,
        outputs=[report_path, trace_path],
        summary=report.to_json_dict(),
    )


# --- verify-identities ---


def run_verify(
    case: str,
    c: complex,
    s: float,
    gamma: complex,
    out_dir: Union[str, Path],
    cfg: Optional[MellinKitConfig] = None,
    n: Optional[int] = None,
    refine: bool = False,
) -> RunOutcome:
    """
    Verify one lab identity and write result.json.

    With ``refine`` the check also runs at 2n and 4n and the study is
    written to refinement.csv; the exit code follows the requested grid.

    Returns:
        RunOutcome with exit code 0 iff the residual is within the case
        threshold from ``lab.thresholds``, else 2.

    Raises:
        ConstraintViolation: If the case's parameter conditions fail.
        ValueError: For an unknown case.
    """
    cfg = cfg or MellinKitConfig()
    lab = cfg.lab
    check, kwargs = case_check(
        case,
        c,
        s,
        gamma,
        half_width=lab.half_width,
        log_min=lab.log_min,
        log_max=lab.log_max,
    )
    n = n or lab.n
    threshold = lab.thresholds.get(case)
    if threshold is None:
        raise ValueError(f"no residual threshold configured for case {case!r}")
    out = Path(out_dir)
    outputs: List[Path] = []

    if refine:
        study = refinement_study(
            check,
            [n * factor for factor in REFINE_FACTORS],
            n_jobs=cfg.runtime.n_jobs,
            **kwargs,
        )
        out.mkdir(parents=True, exist_ok=True)
        study_path = out / "refinement.csv"
        study.to_csv(study_path, index=False, float_format="%.17g")
        outputs.append(study_path)

    result = check(n=n, **kwargs)
    passed = result.rel_residual <= threshold
    payload = result.model_dump(mode="json")
    payload["case"] = case
    payload["threshold"] = threshold
    payload["passed"] = passed
    outputs.insert(0, _write_json(out / "result.json", payload))

    exit_code = EXIT_OK if passed else EXIT_FINDING
    logger.info(
        "verification_written",
        case=case,
        rel_residual=result.rel_residual,
        threshold=threshold,
        exit_code=exit_code,
    )
    return RunOutcome(exit_code=exit_code, outputs=outputs, summary=payload)


# --- oracle ---


def oracle_table(
    kernel_path: Union[str, Path],
    beta: float,
    xi_min: float,
    xi_max: float,
    n: int,
    max_error: float = 1e-9,
) -> pd.DataFrame:
    """
    Closed-form Mellin symbol against the quadrature oracle on a xi grid.

    Raises:
        InvalidPole: If the kernel is not admissible.
    """
    k = load_kernel(kernel_path)
    require_admissible(k)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    xi = np.linspace(xi_min, xi_max, n)
    closed = np.atleast_1d(np.asarray(mellin_symbol(k, beta, xi), dtype=complex))
    oracle = np.array(
        [mellin_symbol_oracle(k, beta, float(x), max_error=max_error) for x in xi],
        dtype=complex,
    )
    return pd.DataFrame(
        {
            "xi": xi,
            "re_closed": closed.real,
            "im_closed": closed.imag,
            "re_oracle": oracle.real,
            "im_oracle": oracle.imag,
            "abs_err": np.abs(closed - oracle),
        }
    )


def run_oracle(
    kernel_path: Union[str, Path],
    beta: float,
    xi_min: float,
    xi_max: float,
    n: int,
    out_path: Union[str, Path],
    cfg: Optional[MellinKitConfig] = None,
) -> RunOutcome:
    """
    Write the oracle comparison CSV.

    Returns:
        RunOutcome with exit code 0 iff max abs_err is within
        ``tolerances.oracle_agreement``, else 2.

    Raises:
        InvalidPole: If the kernel is not admissible.
        QuadratureFailure: If the oracle cannot reach its error target.
    """
    cfg = cfg or MellinKitConfig()
    frame = oracle_table(
        kernel_path,
        beta,
        xi_min,
        xi_max,
        n,
        max_error=cfg.tolerances.oracle_error,
    )
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(out, index=False, float_format="%.17g")

    max_err = float(frame["abs_err"].max()) if len(frame) else 0.0
    agreement = cfg.tolerances.oracle_agreement
    exit_code = EXIT_OK if max_err <= agreement else EXIT_FINDING
    logger.info(
        "oracle_written",
        kernel=str(kernel_path),
        beta=beta,
        max_abs_err=max_err,
        exit_code=exit_code,
    )
    return RunOutcome(
        exit_code=exit_code,
        outputs=[out],
        summary={"max_abs_err": max_err, "points": len(frame), "beta": beta},
    )
