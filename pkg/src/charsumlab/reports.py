"""Structured campaign reports with byte-reproducible serialization.

A report is config echo + per-instance records + aggregate + notes.  The
JSON encoding sorts keys and uses the shortest-repr float format, so two
runs with the same config and seed produce identical bytes no matter how
many worker threads were used.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np


def _plain(obj):
    """Recursively convert numpy scalars/arrays so json output is canonical."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.complexfloating, complex)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


@dataclass
class VerificationReport:
    """Outcome of one campaign."""

    version: str
    config: dict
    records: list = field(default_factory=list)
    aggregate: dict = field(default_factory=dict)
    passed: bool = True
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": _plain(self.config),
            "records": _plain(self.records),
            "aggregate": _plain(self.aggregate),
            "passed": bool(self.passed),
            "notes": list(self.notes),
        }

    def to_json_bytes(self) -> bytes:
        return json.dumps(self.to_dict(), sort_keys=True,
                          separators=(",", ":")).encode("utf-8")

    def csv_text(self) -> str:
        """Flattened records, one row each; columns are the key union."""
        records = _plain(self.records)
        flat_rows = []
        for rec in records:
            row = {}
            for k, v in rec.items():
                if isinstance(v, dict) and set(v) == {"re", "im"}:
                    row[f"{k}_re"] = v["re"]
                    row[f"{k}_im"] = v["im"]
                elif isinstance(v, (list, dict)):
                    row[k] = json.dumps(v, sort_keys=True, separators=(",", ":"))
                else:
                    row[k] = v
            flat_rows.append(row)
        cols = sorted({k for row in flat_rows for k in row})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for row in flat_rows:
            writer.writerow(row)
        return buf.getvalue()


def emit_report(report: VerificationReport, path, csv_path=None) -> None:
    """Write the JSON report (and optionally the CSV flattening)."""
    with open(path, "wb") as fh:
        fh.write(report.to_json_bytes())
    if csv_path is not None:
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write(report.csv_text())
