"""
Evaluation of parsed expressions into truncated series.

Every node is evaluated at a working order; divisions and negative powers
lose precision, so the whole tree is re-run at a higher working order until
the result is known to the requested order.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Union

from heckeq.errors import EvalError, HeckeqError
from heckeq.services.appell import AppellSpec, appell_m
from heckeq.services.hecke import DoubleSumParams, hecke_f
from heckeq.services.parser import (
    BinOp,
    Call,
    ExprAst,
    Neg,
    Pow,
    QPow,
    Rat,
    describe,
    parse,
)
from heckeq.services.series import (
    FracSeries,
    Rational,
    add,
    ensure_order,
    invert,
    mul,
    power,
)
from heckeq.services.strings import (
    StringIndex,
    string_C_triple,
    string_KP_lattice,
    string_S_hecke,
)
from heckeq.services.theta import JKind, big_j, eta, jtheta, restricted_product

logger = logging.getLogger(__name__)

CallHandler = Callable[[Call, Fraction], FracSeries]

# failures inside a call that are reported with the expression path
EVAL_FAILURES = (HeckeqError, ValueError, ArithmeticError)


def _string(method: Callable[[StringIndex, Rational], FracSeries]) -> CallHandler:
    def handler(node: Call, order: Fraction) -> FracSeries:
        level, m, l = node.args  # noqa: E741
        return method(StringIndex(int(level), int(m), int(l)), order)

    return handler


CALLS: Dict[str, CallHandler] = {
    "J": lambda n, o: big_j(JKind.PLAIN, n.args[0], n.args[1], o),
    "Jb": lambda n, o: big_j(JKind.BAR, n.args[0], n.args[1], o),
    "Jp": lambda n, o: big_j(JKind.PROD, 0, n.args[0], o),
    "jt": lambda n, o: jtheta(n.args[0], n.args[1], o),
    "eta": lambda n, o: eta(n.args[0], o),
    "am": lambda n, o: appell_m(AppellSpec(n.args[0], n.args[1], n.args[2]), o),
    "f": lambda n, o: hecke_f(DoubleSumParams(*n.args), o),
    "C": _string(string_C_triple),
    "S": _string(string_S_hecke),
    "KPL": _string(string_KP_lattice),
    "rp": lambda n, o: restricted_product(n.args[0], n.args[1], n.args[2], n.args[3], o),
}


def _fail(path: List[ExprAst], node: ExprAst, exc: Exception) -> EvalError:
    return EvalError([describe(n) for n in path + [node]], exc)


def _evaluate(node: ExprAst, working: Fraction, path: List[ExprAst]) -> FracSeries:
    if isinstance(node, Rat):
        return FracSeries.constant(node.value)
    if isinstance(node, QPow):
        return node.arg.as_series()
    inner = path + [node]
    if isinstance(node, Neg):
        return -_evaluate(node.operand, working, inner)
    if isinstance(node, Pow):
        base = _evaluate(node.base, working, inner)
        try:
            return power(base, node.exponent, cap=working)
        except EVAL_FAILURES as exc:
            raise _fail(path, node, exc) from exc
    if isinstance(node, BinOp):
        left = _evaluate(node.left, working, inner)
        right = _evaluate(node.right, working, inner)
        if node.op == "+":
            return add(left, right)
        if node.op == "-":
            return add(left, -right)
        if node.op == "*":
            return mul(left, right)
        try:
            return mul(left, invert(right, cap=working))
        except EVAL_FAILURES as exc:
            raise _fail(path, node, exc) from exc
    if isinstance(node, Call):
        try:
            return CALLS[node.name](node, working)
        except EVAL_FAILURES as exc:
            raise _fail(path, node, exc) from exc
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(node: ExprAst, order: Rational) -> FracSeries:
    """
    Evaluate an expression to the given order.

    Raises:
        EvalError: a call failed, with the path of sub-expressions leading to it
    """
    try:
        return ensure_order(lambda working: _evaluate(node, working, []), order)
    except EvalError:
        raise
    except HeckeqError as exc:
        raise _fail([], node, exc) from exc


def eval_expression(text: Union[str, ExprAst], order: Rational) -> FracSeries:
    """Parse (when given text) and evaluate."""
    node = parse(text) if isinstance(text, str) else text
    return evaluate(node, order)
