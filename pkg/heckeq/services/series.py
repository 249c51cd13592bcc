"""
Exact truncated Laurent series in q with rational exponents.

A FracSeries stores its nonzero coefficients sparsely together with the order
up to which they are guaranteed. Exact series (constants, monomials and finite
sums of them) carry no order at all.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from heckeq.config import get_settings
from heckeq.errors import OrderTooLarge, ZeroSeries

logger = logging.getLogger(__name__)

FracExp = Fraction
Rational = Union[int, Fraction]


def frac(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, a "p/q" string or a Fraction into a Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def parity_sign(n: int) -> int:
    """(-1)^n as an int, for any integer n."""
    return -1 if n % 2 else 1


def fmt_rational(value: Fraction) -> str:
    """Render a rational as "num/den" (den = 1 included)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def fmt_exponent(value: Fraction) -> str:
    """Render an exponent the way the expression grammar reads it back."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"({value.numerator}/{value.denominator})"


def _lcm_of_denominators(values: Iterator[Fraction]) -> int:
    den = 1
    for value in values:
        den = math.lcm(den, value.denominator)
    return den


@dataclass(frozen=True)
class QArg:
    """A signed power of q, sign * q^exp."""

    sign: int
    exp: Fraction

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"QArg sign must be +1 or -1, got {self.sign}")
        object.__setattr__(self, "exp", Fraction(self.exp))

    @classmethod
    def power(cls, exp: Union[int, str, Fraction] = 1, sign: int = 1) -> QArg:
        return cls(sign, frac(exp))

    def __mul__(self, other: QArg) -> QArg:
        return QArg(self.sign * other.sign, self.exp + other.exp)

    def __pow__(self, k: int) -> QArg:
        sign = self.sign if k % 2 else 1
        return QArg(sign, self.exp * k)

    def __neg__(self) -> QArg:
        return QArg(-self.sign, self.exp)

    def inverse(self) -> QArg:
        return QArg(self.sign, -self.exp)

    def shifted(self, exp: Rational) -> QArg:
        """Multiply by q^exp."""
        return QArg(self.sign, self.exp + exp)

    def is_q_power_of(self, modulus: Rational) -> bool:
        """True when self = +q^{n*modulus} for an integer n."""
        return self.sign == 1 and (self.exp / modulus).denominator == 1

    def as_series(self) -> FracSeries:
        return FracSeries.monomial(self.exp, self.sign)

    def __str__(self) -> str:
        sign = "-" if self.sign < 0 else ""
        if self.exp == 0:
            return f"{sign}1"
        if self.exp == 1:
            return f"{sign}q"
        return f"{sign}q^{fmt_exponent(self.exp)}"


class FracSeries:
    """
    Sparse truncated Laurent series in q.

    Every stored exponent is at most ``order`` and every coefficient at or below
    ``order`` is exact. ``order`` is None for exact (untruncated) series.
    """

    __slots__ = ("_terms", "_order")

    def __init__(
        self,
        terms: Optional[Mapping[Rational, Rational]] = None,
        order: Optional[Rational] = None,
    ):
        bound = None if order is None else Fraction(order)
        cleaned: Dict[Fraction, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            e = Fraction(exp)
            if bound is not None and e > bound:
                continue
            cleaned[e] = cleaned.get(e, Fraction(0)) + Fraction(coeff)
        self._terms = {e: c for e, c in cleaned.items() if c != 0}
        self._order = bound

    @classmethod
    def _trusted(
        cls, terms: Dict[Fraction, Fraction], order: Optional[Fraction]
    ) -> FracSeries:
        # Caller guarantees Fraction keys/values, no zeros, nothing above order.
        series = cls.__new__(cls)
        series._terms = terms
        series._order = order
        return series

    @classmethod
    def zero(cls, order: Optional[Rational] = None) -> FracSeries:
        return cls({}, order)

    @classmethod
    def one(cls) -> FracSeries:
        return cls({0: 1})

    @classmethod
    def constant(cls, value: Rational) -> FracSeries:
        return cls({0: value})

    @classmethod
    def monomial(cls, exp: Rational, coeff: Rational = 1) -> FracSeries:
        return cls({exp: coeff})

    @property
    def order(self) -> Optional[Fraction]:
        return self._order

    @property
    def terms(self) -> Mapping[Fraction, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_exact(self) -> bool:
        return self._order is None

    @property
    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known."""
        return not self._terms

    def valuation(self) -> Optional[Fraction]:
        """Least stored exponent, or None for a series with no terms."""
        return min(self._terms) if self._terms else None

    def _valuation_bound(self) -> Optional[Fraction]:
        # Lower bound on the true valuation; None means exactly zero.
        if self._terms:
            return min(self._terms)
        return self._order

    def coefficient(self, exp: Rational) -> Fraction:
        e = Fraction(exp)
        if self._order is not None and e > self._order:
            raise OrderTooLarge(f"coefficient of q^{e} requested, series known to {self._order}")
        return self._terms.get(e, Fraction(0))

    def items(self) -> List[Tuple[Fraction, Fraction]]:
        return sorted(self._terms.items())

    def truncate(self, order: Rational) -> FracSeries:
        bound = Fraction(order)
        if self._order is not None and self._order < bound:
            bound = self._order
        return FracSeries._trusted(
            {e: c for e, c in self._terms.items() if e <= bound}, bound
        )

    def shift(self, exp: Rational) -> FracSeries:
        """Multiply by q^exp."""
        e0 = Fraction(exp)
        order = None if self._order is None else self._order + e0
        return FracSeries._trusted({e + e0: c for e, c in self._terms.items()}, order)

    def scale(self, factor: Rational) -> FracSeries:
        f = Fraction(factor)
        if f == 0:
            return FracSeries.zero(self._order)
        return FracSeries._trusted({e: c * f for e, c in self._terms.items()}, self._order)

    def __add__(self, other: Union[FracSeries, Rational]) -> FracSeries:
        return add(self, _lift(other))

    __radd__ = __add__

    def __neg__(self) -> FracSeries:
        return self.scale(-1)

    def __sub__(self, other: Union[FracSeries, Rational]) -> FracSeries:
        return add(self, -_lift(other))

    def __rsub__(self, other: Union[FracSeries, Rational]) -> FracSeries:
        return add(_lift(other), -self)

    def __mul__(self, other: Union[FracSeries, Rational]) -> FracSeries:
        if isinstance(other, FracSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> FracSeries:
        return power(self, k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self._order == other._order and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"FracSeries({self})"

    def __str__(self) -> str:
        parts: List[str] = []
        for exp, coeff in self.items():
            if exp == 0:
                body = fmt_rational(abs(coeff)) if coeff.denominator != 1 else str(abs(coeff))
            else:
                mono = "q" if exp == 1 else f"q^{fmt_exponent(exp)}"
                mag = abs(coeff)
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
        if self._order is not None:
            parts.append(f"+ O(q^{fmt_exponent(self._order)})" if parts else f"O(q^{fmt_exponent(self._order)})")
        return " ".join(parts) if parts else "0"


def _lift(value: Union[FracSeries, Rational]) -> FracSeries:
    if isinstance(value, FracSeries):
        return value
    return FracSeries.constant(value)


def _min_order(*orders: Optional[Fraction]) -> Optional[Fraction]:
    known = [o for o in orders if o is not None]
    return min(known) if known else None


def add(a: FracSeries, b: FracSeries) -> FracSeries:
    """Coefficient-wise sum, known to the smaller of the two orders."""
    order = _min_order(a.order, b.order)
    terms: Dict[Fraction, Fraction] = {}
    for source in (a._terms, b._terms):
        for exp, coeff in source.items():
            if order is not None and exp > order:
                continue
            terms[exp] = terms.get(exp, Fraction(0)) + coeff
    return FracSeries._trusted({e: c for e, c in terms.items() if c != 0}, order)


def _product_order(a: FracSeries, b: FracSeries) -> Optional[Fraction]:
    va, vb = a._valuation_bound(), b._valuation_bound()
    candidates = []
    if a.order is not None and vb is not None:
        candidates.append(a.order + vb)
    if b.order is not None and va is not None:
        candidates.append(b.order + va)
    return min(candidates) if candidates else None


def mul(a: FracSeries, b: FracSeries) -> FracSeries:
    """Cauchy product with order min(a.order + val(b), b.order + val(a))."""
    order = _product_order(a, b)
    if a.is_zero or b.is_zero:
        return FracSeries.zero(order)
    exps = list(a._terms) + list(b._terms)
    if order is not None:
        exps.append(order)
    den = _lcm_of_denominators(iter(exps))
    right = sorted(
        (e.numerator * (den // e.denominator), c) for e, c in b._terms.items()
    )
    limit = None if order is None else math.floor(order * den)
    acc: Dict[int, Fraction] = {}
    for ea, ca in a._terms.items():
        ka = ea.numerator * (den // ea.denominator)
        for kb, cb in right:
            k = ka + kb
            if limit is not None and k > limit:
                break
            acc[k] = acc.get(k, 0) + ca * cb
    return FracSeries._trusted(
        {Fraction(k, den): Fraction(c) for k, c in acc.items() if c != 0}, order
    )


def invert(a: FracSeries, cap: Optional[Rational] = None) -> FracSeries:
    """
    Multiplicative inverse.

    Args:
        a: Series with at least one known nonzero term
        cap: Order to stop at; required when ``a`` is exact with several terms

    Returns:
        Series b with a*b = 1, known to a.order - 2*val(a) (or ``cap`` if lower)
    """
    if not a._terms:
        raise ZeroSeries(f"cannot invert a series with no known terms (order {a.order})")
    v = min(a._terms)
    lead = a._terms[v]
    if a.order is None and len(a._terms) == 1:
        return FracSeries._trusted({-v: 1 / lead}, None)
    if a.order is None:
        if cap is None:
            raise OrderTooLarge("inverse of an exact polynomial needs an order cap")
        order = Fraction(cap)
    else:
        order = a.order - 2 * v
        if cap is not None:
            order = min(order, Fraction(cap))
    relative = order + v
    if relative < 0:
        return FracSeries.zero(order)
    shifts = [(e - v, c) for e, c in a._terms.items() if e != v]
    if not shifts:
        return FracSeries._trusted({-v: 1 / lead}, order)
    den = _lcm_of_denominators(s for s, _ in shifts)
    scaled = [(s.numerator * (den // s.denominator), c) for s, c in shifts]
    step = 0
    for k, _ in scaled:
        step = math.gcd(step, k)
    pairs = sorted((k // step, c) for k, c in scaled)
    length = math.floor(relative * den / step)
    inv_lead = 1 / lead
    coeffs: List[Fraction] = [Fraction(0)] * (length + 1)
    coeffs[0] = inv_lead
    for n in range(1, length + 1):
        total = Fraction(0)
        for k, c in pairs:
            if k > n:
                break
            prev = coeffs[n - k]
            if prev:
                total += c * prev
        coeffs[n] = -inv_lead * total
    unit = Fraction(step, den)
    return FracSeries._trusted(
        {-v + n * unit: c for n, c in enumerate(coeffs) if c != 0}, order
    )


def power(a: FracSeries, k: int, cap: Optional[Rational] = None) -> FracSeries:
    """Integer power; negative powers invert first (``cap`` as for invert)."""
    if k < 0:
        return power(invert(a, cap), -k)
    result = FracSeries.one()
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


@dataclass(frozen=True)
class Equal:
    """Verdict: the series agree up to the requested order."""


@dataclass(frozen=True)
class FirstDiscrepancy:
    """Verdict: least exponent where the two coefficients differ."""

    exponent: Fraction
    coeff_a: Fraction
    coeff_b: Fraction


Verdict = Union[Equal, FirstDiscrepancy]

EQUAL = Equal()


def equal_to_order(a: FracSeries, b: FracSeries, order: Rational) -> Verdict:
    """Compare two series coefficient-wise at every exponent <= order."""
    bound = Fraction(order)
    for side in (a, b):
        if side.order is not None and bound > side.order:
            raise OrderTooLarge(f"comparison to order {bound} but a side is known only to {side.order}")
    for exp in sorted(set(a._terms) | set(b._terms)):
        if exp > bound:
            break
        ca = a._terms.get(exp, Fraction(0))
        cb = b._terms.get(exp, Fraction(0))
        if ca != cb:
            return FirstDiscrepancy(exp, ca, cb)
    return EQUAL


def ensure_order(
    build: Callable[[Fraction], FracSeries],
    order: Rational,
    max_rounds: Optional[int] = None,
) -> FracSeries:
    """
    Run ``build`` at increasing working orders until it reaches ``order``.

    Args:
        build: Computes the series when asked for the given working order
        order: Order the caller needs
        max_rounds: Retry bound, defaults to the configured value

    Returns:
        The built series truncated to ``order`` (exact series are returned as is)
    """
    target = Fraction(order)
    rounds = max_rounds or get_settings().max_precision_rounds
    working = target
    reached: Optional[Fraction] = None
    for attempt in range(rounds):
        result = build(working)
        if result.order is None:
            return result
        if result.order >= target:
            return result.truncate(target)
        reached = result.order
        deficit = target - result.order
        logger.debug(
            f"working order {working} reached only {result.order}; raising by {deficit}"
        )
        working += deficit * (attempt + 1)
    raise OrderTooLarge(f"could not reach order {target} in {rounds} rounds (best {reached})")


def sublevel_range(
    qa: Rational,
    qb: Rational,
    qc: Rational,
    limit: Rational,
    lo: Optional[int] = None,
    hi: Optional[int] = None,
) -> range:
    """
    Integers n in [lo, hi] with qa*n^2 + qb*n + qc <= limit.

    Requires qa > 0, so the set is an interval around the vertex.
    """
    a, b, c = Fraction(qa), Fraction(qb), Fraction(qc)
    if a <= 0:
        raise ValueError(f"sublevel_range needs a positive leading coefficient, got {a}")

    def f(n: int) -> Fraction:
        return a * n * n + b * n + c

    if lo is not None and hi is not None and lo > hi:
        return range(0)
    center = round(-b / (2 * a))
    if lo is not None and center < lo:
        center = lo
    if hi is not None and center > hi:
        center = hi
    if f(center) > limit:
        return range(0)
    disc = b * b - 4 * a * (c - Fraction(limit))
    root = math.sqrt(max(float(disc), 0.0))
    right = max(center, math.floor((-b + root) / (2 * a)))
    left = min(center, math.ceil((-b - root) / (2 * a)))
    while f(right + 1) <= limit:
        right += 1
    while right > center and f(right) > limit:
        right -= 1
    while f(left - 1) <= limit:
        left -= 1
    while left < center and f(left) > limit:
        left += 1
    if lo is not None:
        left = max(left, lo)
    if hi is not None:
        right = min(right, hi)
    return range(left, right + 1)
