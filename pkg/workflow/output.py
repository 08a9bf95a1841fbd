"""CSV and JSON rendering of experiment results."""

import csv
import io
import json
from typing import Any

import numpy as np

from exceptions import OutputFormatError
from workflow.experiments import ExperimentResult

FORMATS = ("csv", "json")


def _number(value: float) -> float:
    """Round to 12 significant digits."""
    return float(f"{value:.12g}")


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _number(float(value))
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    return value


def _csv_cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def emit(result: ExperimentResult, fmt: str = "csv") -> str:
    """Render a result as CSV (header first) or a JSON object."""
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(result.columns)
        for row in result.rows:
            writer.writerow([_csv_cell(v) for v in row])
        return buffer.getvalue()
    if fmt == "json":
        document = {
            "experiment": result.name,
            "params": _json_value(result.params),
            "rows": [dict(zip(result.columns, _json_value(row))) for row in result.rows],
            "metadata": _json_value(result.metadata),
        }
        return json.dumps(document, indent=2) + "\n"
    raise OutputFormatError(fmt)
