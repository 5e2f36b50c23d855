# mellinkit/core/config.py
"""
Configuration management for mellinkit.

Loads YAML configuration files with environment variable substitution
and validates them with Pydantic models. Every section has defaults, so
an empty file (or no file at all, via ``MellinKitConfig()``) is valid.
"""
import os
import re
from typing import Dict, List, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field


class ToleranceConfig(BaseModel):
    """Numerical tolerances shared by the symbol engine."""

    tol_ell: float = Field(1e-10, gt=0.0)
    closure: float = Field(1e-6, gt=0.0)
    corner: float = Field(1e-9, gt=0.0)
    eps_pole: float = Field(1e-12, gt=0.0)
    oracle_error: float = Field(1e-9, gt=0.0)
    oracle_agreement: float = Field(1e-8, gt=0.0)
    limit_probe: float = Field(1e-4, gt=0.0)


class GridConfig(BaseModel):
    """Sampling of the rectangle."""

    n_per_leg: int = Field(256, ge=8)
    max_refine_depth: int = Field(20, ge=1)


class LabConfig(BaseModel):
    """Operator laboratory discretization."""

    half_width: float = Field(40.0, gt=0.0)
    n: int = Field(2**14, ge=64)
    log_min: float = -20.0
    log_max: float = 20.0
    # exp(3 pi i / 4), default gamma of verify-identities
    gamma: List[float] = Field(
        default_factory=lambda: [-0.7071067811865476, 0.7071067811865476]
    )
    thresholds: Dict[str, float] = Field(
        default_factory=lambda: {
            "commutation": 1e-8,
            "lifting-k1": 1e-6,
            "lifting-k2": 1e-5,
            "zbeta": 1e-6,
            "derivative": 1e-5,
        }
    )


class RuntimeConfig(BaseModel):
    """Parallelism and reproducibility."""

    n_jobs: int = 1
    seed: int = 0


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    format: Literal["json", "console"] = "json"
    output: Optional[str] = "data/logs/mellinkit.log"
    rotation: str = "10 MB"


class MellinKitConfig(BaseModel):
    """Root configuration model for mellinkit."""

    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    lab: LabConfig = Field(default_factory=LabConfig)
    runtime: RuntimeConfig = Field(default_factory=RuntimeConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @property
    def lab_gamma(self) -> complex:
        """Lab gamma as a complex number."""
        return complex(self.lab.gamma[0], self.lab.gamma[1])


# Regex pattern for ${VAR_NAME} or ${VAR_NAME:default}
ENV_VAR_PATTERN = re.compile(r"\$\{(\w+)(?::([^}]*))?\}")


def substitute_env_vars(content: str) -> str:
    """
    Substitute environment variables in the format ${VAR} or ${VAR:default}.

    Args:
        content: String content with environment variable placeholders.

    Returns:
        String with environment variables substituted.
    """

    def replace(match: re.Match) -> str:
        var_name = match.group(1)
        default_value = match.group(2)
        return os.environ.get(
            var_name, default_value if default_value is not None else ""
        )

    return ENV_VAR_PATTERN.sub(replace, content)


def rotation_megabytes(rotation: str) -> int:
    """Parse a rotation string such as ``"10 MB"`` into whole megabytes."""
    match = re.fullmatch(r"\s*(\d+)\s*(MB|GB)?\s*", rotation, re.IGNORECASE)
    if match is None:
        raise ValueError(f"Invalid rotation size: {rotation!r}")
    size = int(match.group(1))
    if (match.group(2) or "MB").upper() == "GB":
        size *= 1024
    return size


def load_config(config_path: str = "config/mellinkit.yml") -> MellinKitConfig:
    """
    Load configuration from a YAML file.

    Reads ``.env`` into the environment, substitutes placeholders and
    validates the result against the Pydantic schema.

    Args:
        config_path: Path to the YAML configuration file.

    Returns:
        Validated MellinKitConfig object.

    Raises:
        FileNotFoundError: If the configuration file doesn't exist.
        ValueError: If the YAML is invalid or fails validation.
    """
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Configuration file not found at: {config_path}")

    load_dotenv(override=False)

    with open(config_path, "r", encoding="utf-8") as f:
        raw_content = f.read()

    processed_content = substitute_env_vars(raw_content)

    try:
        config_dict = yaml.safe_load(processed_content)
    except yaml.YAMLError as e:
        raise ValueError(f"Error parsing YAML configuration: {e}") from e

    if config_dict is None:
        config_dict = {}
    if not isinstance(config_dict, dict):
        raise ValueError(
            "Invalid configuration: top level must be a mapping, "
            f"got {type(config_dict).__name__}"
        )

    try:
        return MellinKitConfig(**config_dict)
    except Exception as e:
        raise ValueError(f"Invalid configuration: {e}") from e
