# mellinkit/core/logger.py
"""
Structured logging configuration for mellinkit.

structlog renders either JSON lines or console output through the standard
logging module. Events from the numerical code carry numpy scalars and
complex numbers; ``plain_numbers`` turns them into JSON-friendly values
before rendering. The stream handler writes to stderr so CLI commands keep
stdout for their own output, and the rotating file is optional.
"""
import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Any, List, MutableMapping, Optional

import numpy as np
import structlog
from structlog.stdlib import ProcessorFormatter

# CallsiteParameterAdder fields kept on every event.
_CALLSITE = {
    structlog.processors.CallsiteParameter.MODULE,
    structlog.processors.CallsiteParameter.FUNC_NAME,
    structlog.processors.CallsiteParameter.LINENO,
}


def _plain(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        return [value.real, value.imag]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        if value.size > 8:
            return f"ndarray(shape={value.shape}, dtype={value.dtype})"
        return [_plain(v) for v in value.ravel().tolist()]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def plain_numbers(
    _logger: Any, _method: str, event_dict: MutableMapping[str, Any]
) -> MutableMapping[str, Any]:
    """
    Convert numpy and complex values in an event to plain JSON values.

    Complex numbers become ``[re, im]`` pairs, the same layout used by the
    JSON documents. Arrays longer than eight entries are summarized by
    shape and dtype.
    """
    for key, value in list(event_dict.items()):
        event_dict[key] = _plain(value)
    return event_dict


def _formatter(log_format: str) -> ProcessorFormatter:
    renderer: Any = (
        structlog.processors.JSONRenderer()
        if log_format == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    return ProcessorFormatter(fmt="%(message)s", processors=[renderer])


def _file_handler(path: str, rotation_mb: int) -> RotatingFileHandler:
    log_dir = os.path.dirname(path)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
    return RotatingFileHandler(
        path,
        maxBytes=rotation_mb * 1024 * 1024,
        backupCount=5,
        encoding="utf8",
    )


def configure_logger(
    log_level: str = "WARNING",
    log_format: str = "json",
    log_output_path: Optional[str] = "data/logs/mellinkit.log",
    log_rotation_mb: int = 10,
) -> None:
    """
    Configure the structlog-based logger for mellinkit.

    Args:
        log_level: Minimum logging level
            (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        log_format: Output format - "json" for structured logs,
            "console" for interactive runs.
        log_output_path: File path for log output. ``None`` or an empty
            string logs to stderr only.
        log_rotation_mb: Maximum size in MB before log rotation.
    """
    # Re-configuration must not stack handlers
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    structlog.configure(
        processors=[
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.CallsiteParameterAdder(_CALLSITE),
            plain_numbers,
            ProcessorFormatter.wrap_for_formatter,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    formatter = _formatter(log_format)
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_output_path:
        handlers.append(_file_handler(log_output_path, log_rotation_mb))

    for handler in handlers:
        handler.setFormatter(formatter)
        root_logger.addHandler(handler)
    root_logger.setLevel(log_level.upper())

    # joblib workers are chatty at DEBUG
    logging.getLogger("joblib").propagate = False
