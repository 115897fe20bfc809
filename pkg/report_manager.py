"""
Sweep reports and their CSV / JSON forms.

A report is a list of sweep rows (see RECORD_COLUMNS) plus metadata
describing the word, the gap constant and the caps. Every number in a
persisted report is an exact integer or a "p/q" string.
"""

from datetime import datetime, timezone
from io import StringIO
from typing import Any, Dict, Iterable, List, Optional
import csv
import json
import logging

from scripts.import_export import atomic_write_text
from tools.property_check import RECORD_COLUMNS, TheoremCheck

logger = logging.getLogger(__name__)


class SweepReport:
    """Rows sorted by (order, group, m, n, policy) plus run metadata."""

    def __init__(self, checks: Iterable[TheoremCheck] = (), metadata: Optional[Dict[str, Any]] = None):
        self.checks: List[TheoremCheck] = sorted(checks, key=lambda c: c.sort_key())
        self.metadata = dict(metadata or {})
        self.metadata.setdefault("timestamp", datetime.now(timezone.utc).isoformat())

    @property
    def rows(self) -> List[Dict[str, str]]:
        return [c.to_row() for c in self.checks]

    @property
    def violations(self) -> List[TheoremCheck]:
        return [c for c in self.checks if c.violation]

    def summary(self) -> Dict[str, Any]:
        groups = {c.group for c in self.checks}
        return {
            "groups": len(groups),
            "rows": len(self.checks),
            "bound_rows": sum(1 for c in self.checks if c.branch.value == "bound"),
            "violations": len(self.violations),
        }


class ReportExporter:
    """Export sweep reports in various formats."""

    @staticmethod
    def to_json(report: SweepReport, pretty: bool = True) -> str:
        """
        Export a report as a JSON object with "metadata" and "rows".

        Args:
            report: Report to export
            pretty: Whether to format JSON with indentation

        Returns:
            JSON text
        """
        indent = 2 if pretty else None
        return json.dumps({"metadata": report.metadata, "rows": report.rows}, indent=indent) + "\n"

    @staticmethod
    def to_csv(report: SweepReport) -> str:
        """
        Export report rows as CSV; an empty report yields the header only.
        """
        output = StringIO()
        writer = csv.DictWriter(output, fieldnames=RECORD_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(report.rows)
        return output.getvalue()


class ReportImporter:
    """Read exported reports back into plain rows."""

    @staticmethod
    def from_json(text: str) -> Dict[str, Any]:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid JSON: {e}")
        if not isinstance(data, dict) or "rows" not in data:
            raise ValueError("report JSON must be an object with a 'rows' field")
        return data

    @staticmethod
    def from_csv(text: str) -> List[Dict[str, str]]:
        reader = csv.DictReader(StringIO(text))
        if reader.fieldnames is None or list(reader.fieldnames) != RECORD_COLUMNS:
            raise ValueError(f"CSV header must be {','.join(RECORD_COLUMNS)}")
        return list(reader)


def write_report(report: SweepReport, path: str, fmt: str = "csv") -> str:
    """
    Atomically write a report.

    Args:
        report: Report to write
        path: Destination file
        fmt: "csv" or "json"

    Returns:
        The path written
    """
    fmt = fmt.lower()
    if fmt == "csv":
        content = ReportExporter.to_csv(report)
    elif fmt == "json":
        content = ReportExporter.to_json(report)
    else:
        raise ValueError(f"unsupported report format {fmt!r}; use csv or json")
    atomic_write_text(path, content)
    logger.info(f"Wrote {len(report.checks)} rows to {path} ({fmt})")
    return path
