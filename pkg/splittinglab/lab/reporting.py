"""CSV and JSON emission of run outcomes and their manifests."""

from __future__ import annotations

import logging
import platform
from contextlib import contextmanager
from enum import Enum
from importlib import metadata
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
import polars as pl

from .constants import ExitCode, OutputFormat
from .exceptions import OutputPathError
from .schemas import RunManifestSchema

if TYPE_CHECKING:
    from collections.abc import Iterator
    from typing import TextIO

    from numerics.exceptions import LabError

    from .runner import RunOutcome, Table
    from .schemas import RunConfig

logger = logging.getLogger(__name__)

# Define a type alias for JSON-serializable types
type JSONValue = dict[str, Any] | list[Any] | int | float | bool | str | None

VERSIONED_PACKAGES = ("l3-splitting-lab", "numpy", "polars", "scipy", "mpmath", "django", "django-ninja", "celery")
MANIFEST_SUFFIX = ".manifest.json"


def make_serializable(val: Any) -> JSONValue:
    """Convert numpy scalars, complex numbers and enums to JSON-serializable values."""
    match val:
        case dict():
            return {str(k): make_serializable(v) for k, v in val.items()}
        case list() | tuple():
            return [make_serializable(v) for v in val]
        case Enum():
            return val.value
        case bool() | np.bool_():
            return bool(val)
        case int() | np.integer():
            return int(val)
        case float() | np.floating():
            return float(val)
        case complex() | np.complexfloating():
            return {"real": float(val.real), "imag": float(val.imag)}
        case np.ndarray():
            return make_serializable(val.tolist())
        case str() | None:
            return val
        case _:
            return str(val)


def package_versions() -> dict[str, str]:
    """Versions of the interpreter and the numeric stack."""
    versions = {"python": platform.python_version()}
    for name in VERSIONED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "unknown"
    return versions


def render_table(table: Table) -> str:
    """CSV text with a header line and the table's column order."""
    frame = pl.from_dicts(
        [make_serializable({c: row.get(c) for c in table.columns}) for row in table.rows],
        schema=list(table.columns),
        infer_schema_length=None,
    )
    return frame.write_csv()


def render(outcome: RunOutcome, output_format: OutputFormat) -> str:
    """The machine-readable output of a run."""
    if output_format is OutputFormat.CSV:
        return render_table(outcome.table)
    return outcome.report.model_dump_json(indent=2) + "\n"


def exit_code_of(outcome: RunOutcome) -> ExitCode:
    """``OK`` when every internal check passed."""
    return ExitCode.OK if outcome.passed else ExitCode.NUMERICAL


def build_manifest(cfg: RunConfig, outcome: RunOutcome, warnings: list[str]) -> RunManifestSchema:
    """Provenance record of a finished run."""
    return RunManifestSchema(
        command=cfg.command,
        config=make_serializable(cfg.model_dump()),  # type: ignore[arg-type]
        versions=package_versions(),
        wall_time=outcome.wall_time,
        checks=dict(outcome.checks),
        diagnostics=make_serializable(outcome.diagnostics),  # type: ignore[arg-type]
        warnings=list(warnings),
        exit_code=int(exit_code_of(outcome)),
    )


def build_failure_manifest(
    cfg: RunConfig,
    error: LabError,
    warnings: list[str],
    wall_time: float,
    exit_code: ExitCode,
) -> RunManifestSchema:
    """Provenance record of a run stopped by a domain error."""
    return RunManifestSchema(
        command=cfg.command,
        config=make_serializable(cfg.model_dump()),  # type: ignore[arg-type]
        versions=package_versions(),
        wall_time=wall_time,
        checks={},
        diagnostics={"error_code": type(error).__name__, "error": str(error)},
        warnings=list(warnings),
        exit_code=int(exit_code),
    )


def write_text(text: str, path: str | None, stream: TextIO) -> None:
    """Write ``text`` to ``path``, or to ``stream`` when no path is given."""
    if path is None:
        stream.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        msg = f"cannot write '{path}': {e!s}"
        raise OutputPathError(msg) from e
    logger.info("output written", extra={"path": path, "bytes": len(text)})


def write_manifest(manifest: RunManifestSchema, output: str | None, stream: TextIO) -> None:
    """Manifest next to the output file, or on ``stream`` without one."""
    path = None if output is None else output + MANIFEST_SUFFIX
    write_text(manifest.model_dump_json(indent=2) + "\n", path, stream)


class WarningCollector(logging.Handler):
    """Keeps the messages of WARNING records for the run manifest."""

    def __init__(self: WarningCollector) -> None:
        """Collect from WARNING up."""
        super().__init__(level=logging.WARNING)
        self.messages: list[str] = []

    def emit(self: WarningCollector, record: logging.LogRecord) -> None:
        """Record ``logger: message``."""
        self.messages.append(f"{record.name}: {record.getMessage()}")


@contextmanager
def collect_warnings() -> Iterator[list[str]]:
    """Collect the warnings logged anywhere while the block runs."""
    collector = WarningCollector()
    root = logging.getLogger()
    root.addHandler(collector)
    try:
        yield collector.messages
    finally:
        root.removeHandler(collector)
