# tests/conftest.py
"""
Pytest configuration and shared fixtures for mellinkit tests.
"""
import cmath
import json
import logging
import math
import sys
from pathlib import Path

import pytest

# Ensure the project root is in the path so imports work correctly
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from mellinkit.kernels.algebra import (  # noqa: E402
    make_classical,
    make_n_mk,
    make_power_pole,
)
from mellinkit.kernels.models import SpaceParams  # noqa: E402


@pytest.fixture(scope="session")
def project_root_path() -> Path:
    """Return the project root directory."""
    return project_root


@pytest.fixture
def cauchy_minus_one():
    """K^1_{-1}: kernel 1 / (pi (t + 1))."""
    return make_power_pole(-1.0, 1)


@pytest.fixture
def oracle_kernels():
    """Kernels of the closed-form vs quadrature comparison set."""
    return {
        "K1_-1": make_power_pole(-1.0, 1),
        "K2_-1": make_power_pole(-1.0, 2),
        "K1_e3pi/4": make_power_pole(cmath.exp(0.75j * math.pi), 1),
        "N_pi/3": make_classical("N_alpha", math.pi / 3.0),
        "N_1,1": make_n_mk(1, 1),
    }


@pytest.fixture
def l2_space() -> SpaceParams:
    """Unweighted L2(R+)."""
    return SpaceParams.from_p(2.0)


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document into tmp_path and return its path as str."""

    def _write(name: str, payload) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return _write


@pytest.fixture
def reset_logging():
    """Remove root handlers after a test configured logging."""
    yield
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
