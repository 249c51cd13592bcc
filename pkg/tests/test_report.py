import json

import pytest
from pydantic import ValidationError

from heckeq.models import Discrepancy, IdentityReport, ReportStatus
from heckeq.services.report import ReportFormat, emit_report, exit_code


def make_report(identity_id="KP-1-hecke", status=ReportStatus.VERIFIED, **extra):
    return IdentityReport(
        identity_id=identity_id,
        lhs="f(1,2,1; q, q)",
        rhs="Jp(1)^2",
        order="60/1",
        status=status,
        **extra,
    )


FAILED = make_report(
    "KP-2-hecke",
    ReportStatus.FAILED,
    first_discrepancy=Discrepancy(exponent="3/1", lhs_coeff="1/1", rhs_coeff="0/1"),
)
ERRORED = make_report("boom", ReportStatus.ERROR, detail="SingularSpec: pole")


def test_empty_json_report():
    assert emit_report([]) == b"[]\n"


def test_json_report_fields():
    payload = json.loads(emit_report([make_report(runtime_ms=2), FAILED, ERRORED]))
    assert [entry["identity_id"] for entry in payload] == ["KP-1-hecke", "KP-2-hecke", "boom"]
    assert payload[0] == {
        "identity_id": "KP-1-hecke",
        "lhs": "f(1,2,1; q, q)",
        "rhs": "Jp(1)^2",
        "order": "60/1",
        "status": "verified",
        "first_discrepancy": None,
        "runtime_ms": 2,
    }
    assert all(isinstance(entry["runtime_ms"], int) for entry in payload)
    assert payload[1]["first_discrepancy"] == {"exponent": "3/1", "lhs_coeff": "1/1", "rhs_coeff": "0/1"}
    assert "detail" not in payload[2]


def test_text_report():
    text = emit_report([make_report(), FAILED, ERRORED], ReportFormat.TEXT).decode()
    lines = text.splitlines()
    assert lines[0].split()[:3] == ["identity", "status", "order"]
    assert "q^3/1: 1/1 != 0/1" in lines[2]
    assert "SingularSpec: pole" in lines[3]
    assert lines[-1] == "3 identities: 1 verified, 1 failed, 1 error"


def test_discrepancy_required_exactly_when_failed():
    with pytest.raises(ValidationError):
        make_report(status=ReportStatus.FAILED)
    with pytest.raises(ValidationError):
        make_report(first_discrepancy=Discrepancy(exponent="0/1", lhs_coeff="1/1", rhs_coeff="2/1"))


@pytest.mark.parametrize(
    "reports, code",
    [
        ([], 0),
        ([make_report()], 0),
        ([make_report(), FAILED], 1),
        ([FAILED, ERRORED], 2),
        ([ERRORED, make_report()], 2),
    ],
)
def test_exit_code(reports, code):
    assert exit_code(reports) == code


def test_runtime_is_whole_milliseconds():
    with pytest.raises(ValidationError):
        make_report(runtime_ms=1.5)
    assert make_report(runtime_ms=3.0).runtime_ms == 3
