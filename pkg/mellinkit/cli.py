# mellinkit/cli.py
"""
Command-line interface for mellinkit.

Provides commands for Fredholm analysis of operator specs, verification
of the lab identities, closed-form/oracle comparison of Mellin symbols
and a listing of the built-in kernels.

Exit codes: 0 success, 1 input or constraint error, 2 a negative finding
(non-elliptic symbol, residual above threshold, oracle disagreement).
"""
import cmath
import math
import os
from pathlib import Path
from typing import Optional, Tuple

import click
import structlog
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from mellinkit import __version__
from mellinkit.api.runners import (
    EXIT_INPUT_ERROR,
    RunOutcome,
    run_analyze,
    run_oracle,
    run_verify,
)
from mellinkit.core.config import (
    MellinKitConfig,
    load_config,
    rotation_megabytes,
)
from mellinkit.core.errors import MellinKitError
from mellinkit.core.logger import configure_logger
from mellinkit.kernels.algebra import make_classical, make_n_mk, make_power_pole
from mellinkit.lab.identities import CASES

logger = structlog.get_logger()

DEFAULT_CONFIG = "config/mellinkit.yml"

console = Console()


def parse_complex(value: str) -> complex:
    """Parse ``"re,im"`` (or a single real number) into a complex."""
    parts = [part.strip() for part in value.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise click.BadParameter(f"expected 're,im', got {value!r}")


def _complex_option(
    ctx: click.Context, param: click.Parameter, value: Optional[str]
) -> Optional[complex]:
    return None if value is None else parse_complex(value)


def _fail(message: str) -> None:
    click.echo(f"❌ Error: {message}", err=True)
    raise SystemExit(EXIT_INPUT_ERROR)


def _validation_message(error: ValidationError) -> str:
    """One line per failing field, naming the field path."""
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "spec"
        lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)


def _load(ctx: click.Context) -> MellinKitConfig:
    """Configuration for this invocation, with group flags applied."""
    options = ctx.obj
    path = options["config"]
    if path is None and not os.path.exists(DEFAULT_CONFIG):
        cfg = MellinKitConfig()
    else:
        cfg = load_config(path or DEFAULT_CONFIG)

    if options["seed"] is not None:
        cfg.runtime.seed = options["seed"]
    level = options["log_level"] or cfg.logging.level
    configure_logger(
        log_level=level,
        log_format=cfg.logging.format,
        log_output_path=cfg.logging.output,
        log_rotation_mb=rotation_megabytes(cfg.logging.rotation),
    )
    return cfg


def _finish(outcome: RunOutcome) -> None:
    for path in outcome.outputs:
        click.echo(f"   📄 {path}")
    if outcome.exit_code:
        raise SystemExit(outcome.exit_code)


@click.group()
@click.version_option(version=__version__, prog_name="mellinkit")
@click.option(
    "--out",
    "out_dir",
    default="out",
    help="Directory for reports, traces and CSV files.",
    type=click.Path(file_okay=False),
)
@click.option("--seed", default=None, type=int, help="Seed for random trials.")
@click.option(
    "--tol-ell", default=None, type=float, help="Ellipticity threshold override."
)
@click.option(
    "--grid", "n_per_leg", default=None, type=int, help="Points per rectangle leg."
)
@click.option(
    "--config",
    "-c",
    default=None,
    help=f"Path to configuration file [default: {DEFAULT_CONFIG} if present].",
    type=click.Path(dir_okay=False),
)
@click.option(
    "--log-level",
    "-l",
    default=None,
    help="Logging level.",
    type=click.Choice(
        ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        case_sensitive=False,
    ),
)
@click.pass_context
def main(
    ctx: click.Context,
    out_dir: str,
    seed: Optional[int],
    tol_ell: Optional[float],
    n_per_leg: Optional[int],
    config: Optional[str],
    log_level: Optional[str],
) -> None:
    """
    mellinkit - Mellin/Fourier convolution symbol calculus.

    Symbols, Fredholm analysis and numerical identity checks for
    convolution operators on the half-line.
    """
    ctx.ensure_object(dict)
    ctx.obj.update(
        out_dir=out_dir,
        seed=seed,
        tol_ell=tol_ell,
        n_per_leg=n_per_leg,
        config=config,
        log_level=log_level,
    )


@main.command()
@click.argument("spec", type=click.Path(dir_okay=False))
@click.pass_context
def analyze(ctx: click.Context, spec: str) -> None:
    """Assemble the symbol of SPEC and decide Fredholmness."""
    try:
        cfg = _load(ctx)
        logger.info("analyze_started", spec=spec)
        outcome = run_analyze(
            spec,
            ctx.obj["out_dir"],
            cfg=cfg,
            tol_ell=ctx.obj["tol_ell"],
            n_per_leg=ctx.obj["n_per_leg"],
        )
    except ValidationError as e:
        _fail(f"invalid spec {spec}: {_validation_message(e)}")
    except (FileNotFoundError, ValueError, MellinKitError) as e:
        _fail(str(e))

    report = outcome.summary
    table = Table(title=f"Fredholm analysis of {Path(spec).name}")
    table.add_column("quantity")
    table.add_column("value", justify="right")
    for key in (
        "elliptic",
        "min_abs_det",
        "winding",
        "index",
        "local_invertible_at_zero",
        "essential_norm_lower_bound",
    ):
        table.add_row(key, str(report.get(key)))
    console.print(table)
    if report["elliptic"]:
        click.echo("✅ Symbol is elliptic: operator is Fredholm")
    else:
        click.echo("⚠️  Symbol is not elliptic: operator is not Fredholm")
    _finish(outcome)


@main.command("verify-identities")
@click.option(
    "--case",
    required=True,
    type=click.Choice(list(CASES)),
    help="Identity to verify.",
)
@click.option(
    "--c",
    "c",
    default="0,1",
    callback=_complex_option,
    help="Pole location as re,im.",
)
@click.option("--s", "s", default=1.0, type=float, help="Order of the lifting.")
@click.option(
    "--gamma",
    default=None,
    callback=_complex_option,
    help="Bessel potential parameter as re,im (Im > 0).",
)
@click.option("--n", "n", default=None, type=int, help="Grid size, a power of 2.")
@click.option(
    "--refine", is_flag=True, help="Also run at 2n and 4n and write a study."
)
@click.pass_context
def verify_identities(
    ctx: click.Context,
    case: str,
    c: complex,
    s: float,
    gamma: Optional[complex],
    n: Optional[int],
    refine: bool,
) -> None:
    """Check a lifting or commutation identity numerically."""
    try:
        cfg = _load(ctx)
        outcome = run_verify(
            case,
            c,
            s,
            cfg.lab_gamma if gamma is None else gamma,
            ctx.obj["out_dir"],
            cfg=cfg,
            n=n,
            refine=refine,
        )
    except (FileNotFoundError, ValueError, MellinKitError) as e:
        _fail(str(e))

    result = outcome.summary
    mark = "✅" if result["passed"] else "⚠️ "
    click.echo(
        f"{mark} {case}: rel_residual = {result['rel_residual']:.3e} "
        f"(threshold {result['threshold']:.0e})"
    )
    if result.get("remainder_norm") is not None:
        click.echo(f"   remainder_norm = {result['remainder_norm']:.3e}")
    _finish(outcome)


@main.command()
@click.option(
    "--kernel",
    "kernel_path",
    required=True,
    type=click.Path(dir_okay=False),
    help="Kernel JSON file.",
)
@click.option("--beta", default=0.5, type=float, help="Real part of the line.")
@click.option("--xi-min", default=-8.0, type=float)
@click.option("--xi-max", default=8.0, type=float)
@click.option("--n", "n", default=161, type=int, help="Number of xi points.")
@click.option(
    "--csv",
    "csv_name",
    default="symbols.csv",
    help="File name of the CSV inside the output directory.",
)
@click.pass_context
def oracle(
    ctx: click.Context,
    kernel_path: str,
    beta: float,
    xi_min: float,
    xi_max: float,
    n: int,
    csv_name: str,
) -> None:
    """Compare closed-form Mellin symbols with the quadrature oracle."""
    try:
        cfg = _load(ctx)
        outcome = run_oracle(
            kernel_path,
            beta,
            xi_min,
            xi_max,
            n,
            Path(ctx.obj["out_dir"]) / csv_name,
            cfg=cfg,
        )
    except ValidationError as e:
        _fail(f"invalid kernel {kernel_path}: {_validation_message(e)}")
    except (FileNotFoundError, ValueError, MellinKitError) as e:
        _fail(str(e))

    max_err = outcome.summary["max_abs_err"]
    mark = "✅" if outcome.exit_code == 0 else "⚠️ "
    click.echo(f"{mark} max abs_err = {max_err:.3e} over {n} points")
    _finish(outcome)


def _builtin_kernels() -> Tuple[Tuple[str, object], ...]:
    third = math.pi / 3.0
    return (
        ("K1_{-1}", make_power_pole(-1.0, 1)),
        ("K2_{-1}", make_power_pole(-1.0, 2)),
        ("K1_{exp(3pi i/4)}", make_power_pole(cmath.exp(0.75j * math.pi), 1)),
        ("K1_{1} (Cauchy)", make_power_pole(1.0, 1)),
        ("N_{pi/3}", make_classical("N_alpha", third)),
        ("N*_{pi/3}", make_classical("N_alpha_star", third)),
        ("M_{pi/3}", make_classical("M_alpha", third)),
        ("N_{1,1}", make_n_mk(1, 1)),
    )


@main.command()
def kernels() -> None:
    """List the built-in kernels and their pole terms."""
    table = Table(title="Built-in kernels")
    table.add_column("kernel")
    table.add_column("c")
    table.add_column("m", justify="right")
    table.add_column("d")
    for name, kernel in _builtin_kernels():
        for index, term in enumerate(kernel.terms):
            table.add_row(
                name if index == 0 else "",
                f"{term.c:.4g}",
                str(term.m),
                f"{term.d:.4g}",
            )
    console.print(table)


if __name__ == "__main__":
    main()
