import logging
from fractions import Fraction
from typing import Dict, List, Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from heckeq.config import get_settings
from heckeq.errors import HeckeqError, UnknownSuite
from heckeq.models.report import IdentityReport
from heckeq.services.evaluator import eval_expression
from heckeq.services.series import FracSeries, fmt_rational
from heckeq.services.strings import StringIndex, StringMethod, string_function
from heckeq.services.suites import Fault, list_suites, run_suite, summarize

# Set up logging
logger = logging.getLogger(__name__)

router = APIRouter()


class SeriesTerm(BaseModel):
    """One nonzero term; exponent and coefficient as "num/den"."""
    exponent: str
    coefficient: str


class SeriesResponse(BaseModel):
    """A truncated series. ``order`` is null for exact results."""
    order: Optional[str]
    terms: List[SeriesTerm]
    text: str


class EvalRequest(BaseModel):
    """Request for evaluating an expression."""
    expr: str
    order: Optional[str] = None


class StringRequest(BaseModel):
    """Request for a string function C^N_{m,l}."""
    level: int = Field(ge=1)
    m: int
    l: int  # noqa: E741
    method: StringMethod = StringMethod.TRIPLE
    order: Optional[str] = None


class VerifyRequest(BaseModel):
    """Request for verifying an identity suite."""
    suite: str
    order: Optional[str] = None
    seed: Optional[int] = None
    inject_fault: Optional[str] = None


class VerifyResponse(BaseModel):
    """Reports of one suite run plus per-status counts."""
    suite: str
    summary: Dict[str, int]
    reports: List[IdentityReport]


class SuiteInfo(BaseModel):
    name: str
    description: str
    default_order: str


def _parse_order(text: Optional[str]) -> Fraction:
    if text is None:
        return Fraction(get_settings().default_order)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise HTTPException(status_code=400, detail=f"Invalid order: {text!r}") from None


def series_response(series: FracSeries) -> SeriesResponse:
    return SeriesResponse(
        order=None if series.order is None else fmt_rational(series.order),
        terms=[
            SeriesTerm(exponent=fmt_rational(exp), coefficient=fmt_rational(coeff))
            for exp, coeff in series.items()
        ],
        text=str(series),
    )


async def list_suites_route() -> List[SuiteInfo]:
    """
    List the registered identity suites with their default orders.
    """
    return [SuiteInfo(**info) for info in list_suites()]


@router.post("/series/eval", response_model=SeriesResponse)
async def evaluate_expression(request: EvalRequest):
    """
    Evaluate an expression of the series language to the requested order.
    """
    order = _parse_order(request.order)
    try:
        series = eval_expression(request.expr, order)
    except HeckeqError as e:
        logger.info(f"Rejected expression {request.expr!r}: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    return series_response(series)


@router.post("/string", response_model=SeriesResponse)
async def expand_string_function(request: StringRequest):
    """
    Expand C^N_{m,l} with the chosen method.
    """
    order = _parse_order(request.order)
    try:
        idx = StringIndex(request.level, request.m, request.l)
        series = string_function(idx, request.method, order)
    except HeckeqError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return series_response(series)


@router.post("/verify", response_model=VerifyResponse)
async def verify_suite(request: VerifyRequest):
    """
    Verify every identity of a suite and return one report per identity.
    """
    order = None if request.order is None else _parse_order(request.order)
    try:
        fault = Fault.parse(request.inject_fault) if request.inject_fault else None
        reports = run_suite(request.suite, order=order, seed=request.seed, fault=fault)
    except UnknownSuite as e:
        raise HTTPException(status_code=404, detail=str(e))
    except (HeckeqError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    return VerifyResponse(suite=request.suite, summary=summarize(reports), reports=reports)
