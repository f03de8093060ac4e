"""
Experiment reports: a JSON document with provenance, results and named
checks, plus an optional CSV table.
"""
import csv
import json
import logging
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import TYPE_CHECKING, Any, Optional, Sequence

import numpy as np

from .errors import CertificationFailure

if TYPE_CHECKING:
    from ..config import Config

logger = logging.getLogger(__name__)

# argparse attributes that are not experiment parameters
_PLUMBING_ARGS = {"command", "config", "env", "verbose", "output", "csv", "save"}


def to_jsonable(value: Any) -> Any:
    """Convert numpy values, tuples, paths and report objects to plain JSON types."""
    if callable(getattr(value, "to_dict", None)):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, Path):
        return str(value)
    return value


def echo_args(args) -> dict:
    """Experiment parameters from an argparse namespace."""
    return {k: to_jsonable(v) for k, v in sorted(vars(args).items()) if k not in _PLUMBING_ARGS}


def build_report(
    experiment: str,
    parameters: dict,
    results: Any,
    checks: dict[str, bool],
    config: Optional["Config"] = None,
) -> dict:
    """
    Assemble a report. `generated_at` is the only field that differs between
    two runs with the same parameters.
    """
    from .. import __version__

    checks = {name: bool(ok) for name, ok in checks.items()}
    return {
        "experiment": experiment,
        "version": __version__,
        "config": to_jsonable(parameters),
        "tolerances": to_jsonable(config.tolerances) if config else {},
        "results": to_jsonable(results),
        "checks": checks,
        "passed": all(checks.values()),
        "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def write_csv(rows: Sequence[dict], path: Path) -> None:
    """Write rows with a header taken from the first row's keys."""
    if not rows:
        raise ValueError("no rows to write")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: to_jsonable(v) for k, v in row.items()})
    logger.debug("wrote %d rows to %s", len(rows), path)


def emit(
    config: "Config",
    args,
    experiment: str,
    results: Any,
    checks: Optional[dict[str, bool]] = None,
    table: Optional[Sequence[dict]] = None,
) -> dict:
    """
    Build the report for a handler, print or write it, and write the CSV
    table when --csv is given.

    Output goes to --output, to {output_dir}/{experiment}.json under --save,
    and to stdout otherwise.

    Raises:
        CertificationFailure: If any check failed (after the report is written)
    """
    report = build_report(experiment, echo_args(args), results, checks or {}, config)
    text = dumps(report)

    output = getattr(args, "output", None)
    if output is None and getattr(args, "save", False):
        output = Path(config.output_dir) / f"{experiment}.json"
    if output is not None:
        output = Path(output)
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text + "\n")
        logger.info("report written to %s", output)
    else:
        print(text)

    csv_path = getattr(args, "csv", None)
    if csv_path is not None:
        if not table:
            logger.warning("%s has no table; --csv ignored", experiment)
        else:
            write_csv(table, csv_path)

    if not report["passed"]:
        failed = [name for name, ok in report["checks"].items() if not ok]
        raise CertificationFailure(f"{experiment}: failed checks {failed}", report=report)
    return report
