"""Experiment records and their CSV/JSON serialization.

Numeric fields are rendered with 17 significant digits so files round-trip
float64 exactly.  Output files are byte-deterministic for fixed inputs;
wall-clock timings therefore stay on the record object (for logs) and are
never serialized.
"""

import csv
import json
from dataclasses import dataclass, field


@dataclass
class ExperimentRecord:
    experiment: str
    parameters: dict
    outputs: dict
    warnings: list = field(default_factory=list)
    wall_time: float = 0.0

    def row(self):
        """Flat parameter+output mapping for tabular output."""
        out = dict(self.parameters)
        out.update(self.outputs)
        return out


def format_value(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_records(records, columns, path, fmt="csv"):
    """Write records as a CSV table (RFC-4180 quoting) or a JSON array, UTF-8/LF."""
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for rec in records:
                row = rec.row()
                writer.writerow([format_value(row.get(c, "")) for c in columns])
    elif fmt == "json":
        payload = [
            {
                "experiment": rec.experiment,
                "parameters": {k: _jsonable(v) for k, v in rec.parameters.items()},
                "outputs": {k: _jsonable(v) for k, v in rec.outputs.items()},
                "warnings": list(rec.warnings),
            }
            for rec in records
        ]
        with open(path, "w", encoding="utf-8", newline="") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def _jsonable(v):
    if hasattr(v, "item"):
        return v.item()
    return v
