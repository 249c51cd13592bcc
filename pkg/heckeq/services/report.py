"""Rendering of verification reports and the process exit code they imply."""
import json
from enum import Enum
from typing import List, Sequence

from heckeq.models.report import IdentityReport, ReportStatus


class ReportFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


def emit_report(reports: Sequence[IdentityReport], fmt: ReportFormat = ReportFormat.JSON) -> bytes:
    """
    Serialise reports.

    JSON is an array of report objects in the given order (``[]`` when empty).
    Text is an aligned table with one row per identity and a closing summary.
    """
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.JSON:
        payload = [report.model_dump(mode="json") for report in reports]
        return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    return _text_table(reports).encode("utf-8")


def _text_table(reports: Sequence[IdentityReport]) -> str:
    rows: List[List[str]] = [["identity", "status", "order", "ms", "first discrepancy"]]
    for report in reports:
        where = ""
        if report.first_discrepancy is not None:
            d = report.first_discrepancy
            where = f"q^{d.exponent}: {d.lhs_coeff} != {d.rhs_coeff}"
        elif report.detail:
            where = report.detail
        rows.append(
            [report.identity_id, report.status.value, report.order, str(report.runtime_ms), where]
        )
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row[:4], widths)) + "  " + row[4]
        for row in rows
    ]
    counts = {status: sum(r.status is status for r in reports) for status in ReportStatus}
    lines.append(
        f"{len(reports)} identities: "
        + ", ".join(f"{counts[status]} {status.value}" for status in ReportStatus)
    )
    return "\n".join(line.rstrip() for line in lines) + "\n"


def exit_code(reports: Sequence[IdentityReport]) -> int:
    """2 if any identity raised, else 1 if any failed, else 0."""
    statuses = {report.status for report in reports}
    if ReportStatus.ERROR in statuses:
        return 2
    if ReportStatus.FAILED in statuses:
        return 1
    return 0
