from heckeq.models.report import Discrepancy, IdentityReport, ReportStatus

__all__ = ["Discrepancy", "IdentityReport", "ReportStatus"]
