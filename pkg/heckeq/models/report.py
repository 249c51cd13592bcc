"""Result records of identity verification."""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class ReportStatus(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    ERROR = "error"


class Discrepancy(BaseModel):
    """First exponent at which the two sides disagree; values are "num/den"."""

    exponent: str
    lhs_coeff: str
    rhs_coeff: str


class IdentityReport(BaseModel):
    """Outcome of checking one identity to a given order."""

    identity_id: str
    lhs: str
    rhs: str
    order: str
    status: ReportStatus
    first_discrepancy: Optional[Discrepancy] = None
    runtime_ms: int = 0
    detail: Optional[str] = Field(default=None, exclude=True)

    @model_validator(mode="after")
    def check_discrepancy(self) -> "IdentityReport":
        failed = self.status is ReportStatus.FAILED
        if failed != (self.first_discrepancy is not None):
            raise ValueError("first_discrepancy must be present exactly when status is 'failed'")
        return self
