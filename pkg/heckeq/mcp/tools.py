import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

from heckeq.config import get_settings
from heckeq.errors import HeckeqError
from heckeq.mcp.server import mcp
from heckeq.services.evaluator import eval_expression
from heckeq.services.series import FracSeries, fmt_rational
from heckeq.services.strings import StringIndex, StringMethod
from heckeq.services.strings import string_function as expand_string
from heckeq.services.suites import Fault, list_suites as suite_catalogue, run_suite, summarize

logger = logging.getLogger(__name__)


def _order(order: Optional[str]) -> Fraction:
    if order is None:
        return Fraction(get_settings().default_order)
    return Fraction(order)


def _series_dict(series: FracSeries, max_terms: Optional[int] = None) -> Dict[str, Any]:
    items = series.items()
    if max_terms is not None:
        items = items[:max_terms]
    return {
        "order": None if series.order is None else fmt_rational(series.order),
        "terms": [[fmt_rational(exp), fmt_rational(coeff)] for exp, coeff in items],
        "text": str(series),
    }


@mcp.tool()
async def evaluate_series(expr: str, order: Optional[str] = None, max_terms: Optional[int] = None) -> Dict[str, Any]:
    """
    Evaluate a q-series expression exactly, truncated at the given order.

    The language knows J(a,M), Jb(a,M), Jp(M), jt(x,M), eta(k), am(x,M,z),
    f(a,b,c; x,y), C/S/KPL(N,m,l) and rp(step,mod,{set},power), combined with
    + - * / and integer powers. q-arguments are written q, -q^2, q^(1/2), 1, -1.

    Args:
        expr: The expression, e.g. "f(1,2,1; q, q) - Jp(1)^2"
        order: Truncation order as an integer or "p/q" (default from settings)
        max_terms: Return at most this many nonzero terms

    Returns:
        The order and the nonzero terms as ["exponent", "coefficient"] pairs
    """
    try:
        series = eval_expression(expr, _order(order))
    except HeckeqError as e:
        raise ValueError(str(e)) from e
    return _series_dict(series, max_terms)


@mcp.tool()
async def string_function(level: int, m: int, l: int, method: str = "triple", order: Optional[str] = None) -> Dict[str, Any]:  # noqa: E741
    """
    Expand the A_1^(1) string function C^N_{m,l}.

    Args:
        level: Level N >= 1
        m: Weight index, same parity as l
        l: Highest weight index, 0 <= l <= N
        method: "triple", "hecke" or "lattice"
        order: Truncation order (default from settings)

    Returns:
        The order and the nonzero terms
    """
    try:
        idx = StringIndex(level, m, l)
        series = expand_string(idx, StringMethod(method), _order(order))
    except HeckeqError as e:
        raise ValueError(str(e)) from e
    return _series_dict(series)


@mcp.tool()
async def verify_suite(suite: str, order: Optional[str] = None, seed: Optional[int] = None, inject_fault: Optional[str] = None) -> Dict[str, Any]:
    """
    Verify an identity suite coefficient by coefficient.

    Args:
        suite: Suite name (see list_suites), or "all"
        order: Order for every identity; omit for the suite defaults
        seed: Seed for the randomized suites
        inject_fault: "ID@EXP" to perturb one identity's left side

    Returns:
        Per-status counts and one report per identity
    """
    try:
        fault = Fault.parse(inject_fault) if inject_fault else None
        reports = run_suite(suite, order=None if order is None else Fraction(order), seed=seed, fault=fault)
    except HeckeqError as e:
        raise ValueError(str(e)) from e
    logger.info(f"MCP verify_suite {suite}: {summarize(reports)}")
    return {
        "suite": suite,
        "summary": summarize(reports),
        "reports": [report.model_dump(mode="json") for report in reports],
    }


@mcp.tool()
async def list_suites() -> List[Dict[str, str]]:
    """
    List the identity suites with their descriptions and default orders.
    """
    return suite_catalogue()
