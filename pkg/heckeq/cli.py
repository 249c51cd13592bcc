"""
Command line entry point.

    heckeq verify --suite kp-hecke --order 60 --json out.json
    heckeq eval "f(1,2,1; q, q) - Jp(1)^2" --order 30
    heckeq string --level 4 --m 2 --l 0 --method hecke --order 20
    heckeq serve
    heckeq mcp
"""
import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from heckeq import __version__
from heckeq.config import configure_logging, get_settings
from heckeq.errors import HeckeqError
from heckeq.services.evaluator import eval_expression
from heckeq.services.report import ReportFormat, emit_report, exit_code
from heckeq.services.series import FracSeries, fmt_exponent, fmt_rational
from heckeq.services.strings import StringIndex, StringMethod, string_function
from heckeq.services.suites import Fault, run_suite, suite_names

logger = logging.getLogger(__name__)

EXIT_USAGE = 2


def _order(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational order: {text!r}") from None
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckeq",
        description="Exact q-series, Hecke-type double-sums and string-function identities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Logging level (default: HECKEQ_LOG_LEVEL or INFO).")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Verify an identity suite.")
    verify.add_argument("--suite", required=True, choices=suite_names())
    verify.add_argument("--order", type=_order, default=None, help="Order for every identity (default: per suite).")
    verify.add_argument("--json", dest="json_path", type=Path, default=None, help="Also write the JSON report here.")
    verify.add_argument("--seed", type=int, default=None, help="Seed of the randomized suites.")
    verify.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.TEXT.value)
    verify.add_argument("--inject-fault", dest="fault", default=None, metavar="ID@EXP",
                        help="Perturb the left side of identity ID at q^EXP.")

    evaluate = sub.add_parser("eval", help="Evaluate an expression.")
    evaluate.add_argument("expr")
    evaluate.add_argument("--order", type=_order, default=None)
    evaluate.add_argument("--terms", type=int, default=None, help="Print only the first k nonzero terms.")

    string = sub.add_parser("string", help="Expand a string function C^N_{m,l}.")
    string.add_argument("--level", type=int, required=True)
    string.add_argument("--m", type=int, required=True)
    string.add_argument("--l", type=int, required=True)
    string.add_argument("--method", choices=[m.value for m in StringMethod], default=StringMethod.TRIPLE.value)
    string.add_argument("--order", type=_order, default=None)

    sub.add_parser("serve", help="Run the HTTP API.")
    sub.add_parser("mcp", help="Run the MCP tool server.")
    return parser


def format_terms(series: FracSeries, terms: Optional[int] = None) -> str:
    """One "exponent coefficient" line per nonzero term, then the order."""
    items = series.items()
    if terms is not None:
        items = items[:terms]
    lines = [f"{fmt_exponent(exp)}\t{fmt_rational(coeff)}" for exp, coeff in items]
    if series.order is not None:
        lines.append(f"O(q^{fmt_exponent(series.order)})")
    return "\n".join(lines) + "\n"


def _verify(args: argparse.Namespace) -> int:
    fault = Fault.parse(args.fault) if args.fault else None
    reports = run_suite(args.suite, order=args.order, seed=args.seed, fault=fault)
    if args.json_path is not None:
        args.json_path.write_bytes(emit_report(reports, ReportFormat.JSON))
        logger.info(f"Wrote {len(reports)} reports to {args.json_path}")
    sys.stdout.write(emit_report(reports, ReportFormat(args.format)).decode("utf-8"))
    return exit_code(reports)


def _eval(args: argparse.Namespace) -> int:
    order = args.order if args.order is not None else get_settings().default_order
    series = eval_expression(args.expr, order)
    sys.stdout.write(format_terms(series, args.terms))
    return 0


def _string(args: argparse.Namespace) -> int:
    order = args.order if args.order is not None else get_settings().default_order
    idx = StringIndex(args.level, args.m, args.l)
    series = string_function(idx, StringMethod(args.method), order)
    sys.stdout.write(f"{idx} = {series}\n")
    return 0


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    settings = get_settings()
    uvicorn.run("heckeq.main:app", host=settings.api_host, port=settings.api_port)
    return 0


def _mcp(args: argparse.Namespace) -> int:
    from heckeq.mcp import mcp

    mcp.run()
    return 0


COMMANDS = {
    "verify": _verify,
    "eval": _eval,
    "string": _string,
    "serve": _serve,
    "mcp": _mcp,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except (HeckeqError, ValueError) as exc:
        sys.stderr.write(f"heckeq: error: {exc}\n")
        return EXIT_USAGE


def run(argv: Optional[List[str]] = None) -> None:
    """Console-script wrapper that exits with the command's status."""
    sys.exit(main(argv))


if __name__ == "__main__":
    run()
