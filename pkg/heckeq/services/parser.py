"""
Recursive-descent parser for the q-series expression language.

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ("^" sint)*
    atom   := rat | qpow | call | "(" expr ")" | "-" atom
    qpow   := ["-"] "q" ["^" "(" rat ")" | "^" sint]
    rat    := sint ["/" uint]
    call   := NAME "(" arg (("," | ";") arg)* ")"

Call arguments are typed per function: integers, rationals, q-powers (which
also accept +-1) and integer sets written {a, b, ...}. Moduli, eta scales, f
coefficients, levels and rp step/modulus must be positive; the rp power is +-1.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, NoReturn, Optional, Sequence, Tuple, Union

from heckeq.errors import ParseError
from heckeq.services.series import QArg, fmt_exponent

INT = "int"
RAT = "rat"
QARG = "qarg"
SET = "set"

# argument kinds of every callable
SIGNATURES: Dict[str, Tuple[str, ...]] = {
    "J": (RAT, RAT),
    "Jb": (RAT, RAT),
    "Jp": (RAT,),
    "jt": (QARG, RAT),
    "eta": (RAT,),
    "am": (QARG, RAT, QARG),
    "f": (INT, INT, INT, QARG, QARG),
    "C": (INT, INT, INT),
    "S": (INT, INT, INT),
    "KPL": (INT, INT, INT),
    "rp": (INT, INT, SET, INT),
}

# argument positions that must be > 0: moduli, eta scale, f coefficients, levels
POSITIVE_ARGS: Dict[str, Tuple[int, ...]] = {
    "J": (1,),
    "Jb": (1,),
    "Jp": (0,),
    "jt": (1,),
    "eta": (0,),
    "am": (1,),
    "f": (0, 1, 2),
    "C": (0,),
    "S": (0,),
    "KPL": (0,),
    "rp": (0, 1),
}

CallArg = Union[int, Fraction, QArg, FrozenSet[int]]


@dataclass(frozen=True)
class Rat:
    value: Fraction


@dataclass(frozen=True)
class QPow:
    arg: QArg


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple[CallArg, ...]


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Pow:
    base: "ExprAst"
    exponent: int


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


ExprAst = Union[Rat, QPow, Call, BinOp, Pow, Neg]


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, SYM or END
    text: str
    offset: int


SYMBOLS = set("+-*/^(),;{}")


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    raw = text.encode("utf-8")
    i = 0
    while i < len(raw):
        ch = chr(raw[i])
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(raw) and chr(raw[j]).isdigit():
                j += 1
            tokens.append(Token("NUM", raw[i:j].decode(), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(raw) and (chr(raw[j]).isalnum() or chr(raw[j]) == "_"):
                j += 1
            tokens.append(Token("NAME", raw[i:j].decode(), i))
            i = j
        elif ch in SYMBOLS:
            tokens.append(Token("SYM", ch, i))
            i += 1
        else:
            raise ParseError(i, ["number", "name", "operator"], found=raw[i:i + 1].decode(errors="replace"))
    tokens.append(Token("END", "", len(raw)))
    return tokens


class Parser:
    """Parses one expression; use :func:`parse`."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def fail(self, expected: Sequence[str]) -> NoReturn:
        raise ParseError(self.current.offset, expected, found=self.current.text)

    def at(self, text: str) -> bool:
        return self.current.kind == "SYM" and self.current.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail([repr(text)])
        token = self.current
        self.pos += 1
        return token

    def parse(self) -> ExprAst:
        node = self.expr()
        if self.current.kind != "END":
            self.fail(["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"])
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.current.text
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while self.at("*") or self.at("/"):
            op = self.current.text
            self.pos += 1
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> ExprAst:
        node = self.atom()
        while self.at("^"):
            self.pos += 1
            node = Pow(node, self.sint())
        return node

    def atom(self) -> ExprAst:
        token = self.current
        if self.at("-"):
            nxt = self.peek()
            if nxt.kind == "NUM":
                return Rat(self.rat())
            if nxt.kind == "NAME" and nxt.text == "q":
                self.pos += 1
                return QPow(-self.qpow())
            self.pos += 1
            return Neg(self.atom())
        if token.kind == "NUM":
            return Rat(self.rat())
        if token.kind == "NAME" and token.text == "q":
            return QPow(self.qpow())
        if token.kind == "NAME":
            return self.call()
        if self.at("("):
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        self.fail(["number", "'q'", "function name", "'('", "'-'"])

    def sint(self) -> int:
        negative = False
        if self.at("-"):
            negative = True
            self.pos += 1
        if self.current.kind != "NUM":
            self.fail(["integer"])
        value = int(self.current.text)
        self.pos += 1
        return -value if negative else value

    def rat(self, spaced: bool = False) -> Fraction:
        num = self.sint()
        last = self.tokens[self.pos - 1]
        slash, den_token = self.current, self.peek()
        # a literal p/q is written without spaces; "p / q" is a division
        if (
            self.at("/")
            and den_token.kind == "NUM"
            and (
                spaced
                or (
                    slash.offset == last.offset + len(last.text)
                    and den_token.offset == slash.offset + 1
                )
            )
        ):
            self.pos += 1
            den = int(self.current.text)
            if den == 0:
                self.fail(["nonzero denominator"])
            self.pos += 1
            return Fraction(num, den)
        return Fraction(num)

    def qpow(self) -> QArg:
        # current token is the name q
        self.pos += 1
        if not self.at("^"):
            return QArg(1, Fraction(1))
        if self.peek().kind == "SYM" and self.peek().text == "(":
            self.pos += 2
            exp = self.rat(spaced=True)
            self.expect(")")
            return QArg(1, exp)
        self.pos += 1
        return QArg(1, Fraction(self.sint()))

    def qarg(self) -> QArg:
        sign = 1
        if self.at("-"):
            sign = -1
            self.pos += 1
        if self.current.kind == "NAME" and self.current.text == "q":
            arg = self.qpow()
            return QArg(sign * arg.sign, arg.exp)
        if self.current.kind == "NUM" and self.current.text == "1":
            self.pos += 1
            return QArg(sign, Fraction(0))
        self.fail(["'q'", "'1'"])

    def int_set(self) -> FrozenSet[int]:
        self.expect("{")
        values = set()
        if not self.at("}"):
            values.add(self.sint())
            while self.at(","):
                self.pos += 1
                values.add(self.sint())
        self.expect("}")
        return frozenset(values)

    def call(self) -> Call:
        name_token = self.current
        name = name_token.text
        if name not in SIGNATURES:
            self.fail(sorted(SIGNATURES))
        self.pos += 1
        self.expect("(")
        kinds = SIGNATURES[name]
        args: List[CallArg] = []
        for index, kind in enumerate(kinds):
            if index:
                if not (self.at(",") or self.at(";")):
                    self.fail(["','", "';'"])
                self.pos += 1
            start = self.current.offset
            if kind == INT:
                args.append(self.sint())
            elif kind == RAT:
                args.append(self.rat(spaced=True))
            elif kind == QARG:
                args.append(self.qarg())
            else:
                args.append(self.int_set())
            _check_range(name, index, args[-1], start)
        self.expect(")")
        return Call(name, tuple(args))


def _check_range(name: str, index: int, value: CallArg, offset: int) -> None:
    if index in POSITIVE_ARGS.get(name, ()) and value <= 0:  # type: ignore[operator]
        raise ParseError(offset, ["positive number"], found=_render_arg(value))
    if name == "rp" and index == 3 and value not in (1, -1):
        raise ParseError(offset, ["1", "-1"], found=_render_arg(value))


def parse(text: str) -> ExprAst:
    """
    Parse an expression.

    Raises:
        ParseError: with the byte offset and the set of acceptable tokens
    """
    return Parser(text).parse()


def _render_rat(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _render_qpow(arg: QArg) -> str:
    sign = "-" if arg.sign < 0 else ""
    if arg.exp == 1:
        return f"{sign}q"
    return f"{sign}q^{fmt_exponent(arg.exp)}"


def _render_arg(arg: CallArg) -> str:
    if isinstance(arg, QArg):
        return _render_qpow(arg)
    if isinstance(arg, frozenset):
        return "{" + ", ".join(str(v) for v in sorted(arg)) + "}"
    if isinstance(arg, Fraction):
        return _render_rat(arg)
    return str(arg)


def render(node: ExprAst) -> str:
    """Render an AST back to text that parses to the same AST."""
    if isinstance(node, Rat):
        return _render_rat(node.value)
    if isinstance(node, QPow):
        return _render_qpow(node.arg)
    if isinstance(node, Call):
        return f"{node.name}(" + ", ".join(_render_arg(a) for a in node.args) + ")"
    if isinstance(node, BinOp):
        return f"({render(node.left)} {node.op} {render(node.right)})"
    if isinstance(node, Pow):
        base = render(node.base)
        if not isinstance(node.base, (Call, BinOp)):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Neg):
        return f"-({render(node.operand)})"
    raise TypeError(f"not an expression node: {node!r}")


def describe(node: ExprAst, limit: Optional[int] = 60) -> str:
    """Short rendering for error paths."""
    text = render(node)
    if limit is not None and len(text) > limit:
        return text[: limit - 3] + "..."
    return text
