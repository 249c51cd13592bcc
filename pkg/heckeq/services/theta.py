"""
Theta functions, Euler products and eta quotients.

Notation: j(x; q^M) = (x; q^M)_inf (q^M/x; q^M)_inf (q^M; q^M)_inf,
J_{a,M} = j(q^a; q^M), Jbar_{a,M} = j(-q^a; q^M), J_M = (q^M; q^M)_inf.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Tuple

from heckeq.errors import NonPositiveExponent, SingularSpec
from heckeq.services.series import (
    FracSeries,
    QArg,
    Rational,
    ensure_order,
    fmt_exponent,
    invert,
    mul,
    parity_sign,
    power,
    sublevel_range,
)

logger = logging.getLogger(__name__)


class ThetaForm(str, Enum):
    SUM = "sum"
    PRODUCT = "product"


class JKind(str, Enum):
    PLAIN = "plain"
    BAR = "bar"
    PROD = "prod"


def _dense_to_series(coeffs: List[int], den: int, order: Fraction) -> FracSeries:
    return FracSeries(
        {Fraction(k, den): c for k, c in enumerate(coeffs) if c}, order
    )


@lru_cache(maxsize=2048)
def pochhammer_inf(x: QArg, modulus: Rational, order: Rational) -> FracSeries:
    """
    Expand (x; q^M)_inf = prod_{i>=0} (1 - q^{M i} x).

    Args:
        x: First factor's argument; its exponent must be positive
        modulus: Step M > 0 between consecutive factors
        order: Truncation order

    Returns:
        The product known to ``order``
    """
    step, bound = Fraction(modulus), Fraction(order)
    if step <= 0:
        raise NonPositiveExponent(f"(x; q^M)_inf needs M > 0, got {step}")
    if x.exp <= 0:
        raise NonPositiveExponent(f"(x; q^{step})_inf needs x.exp > 0, got {x}")
    if bound < 0:
        return FracSeries.zero(bound)
    den = math.lcm(x.exp.denominator, step.denominator)
    limit = math.floor(bound * den)
    coeffs = [0] * (limit + 1)
    coeffs[0] = 1
    e = int(x.exp * den)
    inc = int(step * den)
    while e <= limit:
        # multiply by (1 - sign q^e) in place
        for k in range(limit, e - 1, -1):
            if coeffs[k - e]:
                coeffs[k] -= x.sign * coeffs[k - e]
        e += inc
    return _dense_to_series(coeffs, den, bound)


@lru_cache(maxsize=2048)
def jtheta(
    x: QArg,
    modulus: Rational,
    order: Rational,
    form: ThetaForm = ThetaForm.SUM,
    base_sign: int = 1,
) -> FracSeries:
    """
    Expand j(x; s q^M) for s = base_sign.

    The sum form enumerates sum_n (-1)^n s^{C(n,2)} q^{M C(n,2)} x^n directly;
    the product form is only available for s = +1.
    """
    step, bound = Fraction(modulus), Fraction(order)
    if step <= 0:
        raise NonPositiveExponent(f"j(x; q^M) needs M > 0, got {step}")
    if base_sign not in (1, -1):
        raise ValueError(f"base_sign must be +1 or -1, got {base_sign}")
    if base_sign == 1 and x.is_q_power_of(step):
        return FracSeries.zero(bound)
    if ThetaForm(form) is ThetaForm.PRODUCT:
        if base_sign != 1:
            raise ValueError("the product form needs a positive base")
        return _jtheta_product(x, step, bound)
    return _jtheta_sum(x, step, bound, base_sign)


def _jtheta_sum(x: QArg, step: Fraction, bound: Fraction, base_sign: int) -> FracSeries:
    # exponent M n(n-1)/2 + n alpha is convex in n
    alpha = x.exp
    terms = {}
    for n in sublevel_range(step / 2, alpha - step / 2, 0, bound):
        tri = n * (n - 1) // 2
        coeff = parity_sign(n) * (x.sign ** (n % 2)) * (base_sign ** (tri % 2))
        exp = step * tri + n * alpha
        terms[exp] = terms.get(exp, 0) + coeff
    return FracSeries(terms, bound)


def _jtheta_product(x: QArg, step: Fraction, bound: Fraction) -> FracSeries:
    # x = q^{nM} x' with 0 < exp(x') <= M, then
    # j(q^{nM} x') = (-1)^n q^{-M C(n,2)} x'^{-n} j(x')
    n = math.ceil(x.exp / step) - 1
    inner_exp = x.exp - n * step
    shift = -step * n * (n - 1) / 2 - n * inner_exp
    sign = parity_sign(n) * (x.sign ** (n % 2))
    inner_order = bound - shift
    first = pochhammer_inf(QArg(x.sign, inner_exp), step, inner_order)
    if inner_exp < step:
        second = pochhammer_inf(QArg(x.sign, step - inner_exp), step, inner_order)
    else:
        # (sign; q^M)_inf = (1 - sign)(sign q^M; q^M)_inf, and sign = -1 here
        second = pochhammer_inf(QArg(x.sign, step), step, inner_order).scale(1 - x.sign)
    euler = pochhammer_inf(QArg(1, step), step, inner_order)
    core = mul(mul(first, second), euler)
    return core.shift(shift).scale(sign).truncate(bound)


@lru_cache(maxsize=1024)
def big_j(kind: JKind, a: Rational, modulus: Rational, order: Rational) -> FracSeries:
    """J_{a,M}, Jbar_{a,M} or J_M (``a`` is ignored for J_M)."""
    kind = JKind(kind)
    if kind is JKind.PROD:
        return pochhammer_inf(QArg(1, Fraction(modulus)), modulus, order)
    sign = 1 if kind is JKind.PLAIN else -1
    return jtheta(QArg(sign, Fraction(a)), modulus, order)


@lru_cache(maxsize=512)
def eta(k: Rational, order: Rational) -> FracSeries:
    """Dedekind eta(k tau) = q^{k/24} (q^k; q^k)_inf."""
    step = Fraction(k)
    if step <= 0:
        raise NonPositiveExponent(f"eta needs k > 0, got {k}")
    lead = step / 24
    return pochhammer_inf(QArg(1, step), step, Fraction(order) - lead).shift(lead)


def restricted_product(
    step: int,
    modulus: int,
    excluded: FrozenSet[int],
    power_sign: int,
    order: Rational,
) -> FracSeries:
    """
    Expand prod_{n>=1, n mod modulus not in excluded} (1 - q^{step n})^{power_sign}.
    """
    if step < 1 or modulus < 1:
        raise NonPositiveExponent(f"restricted product needs step, modulus >= 1 (got {step}, {modulus})")
    if power_sign not in (1, -1):
        raise ValueError(f"power must be +1 or -1, got {power_sign}")
    bound = Fraction(order)
    if bound < 0:
        return FracSeries.zero(bound)
    residues = {r % modulus for r in excluded}
    limit = math.floor(bound)
    coeffs = [0] * (limit + 1)
    coeffs[0] = 1
    for n in range(1, limit // step + 1):
        if n % modulus in residues:
            continue
        e = step * n
        if power_sign == 1:
            for k in range(limit, e - 1, -1):
                coeffs[k] -= coeffs[k - e]
        else:
            for k in range(e, limit + 1):
                coeffs[k] += coeffs[k - e]
    return _dense_to_series(coeffs, 1, bound)


@dataclass(frozen=True)
class ThetaArg:
    """The theta value j(x; q^M)."""

    x: QArg
    modulus: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "modulus", Fraction(self.modulus))
        if self.modulus <= 0:
            raise NonPositiveExponent(f"theta modulus must be positive, got {self.modulus}")

    @property
    def singular(self) -> bool:
        return self.x.is_q_power_of(self.modulus)

    def expand(self, order: Rational) -> FracSeries:
        return jtheta(self.x, self.modulus, Fraction(order))

    def __str__(self) -> str:
        return f"j({self.x}; q^{fmt_exponent(self.modulus)})"


def theta_quotient(
    numerators: Sequence[ThetaArg],
    denominators: Sequence[ThetaArg],
    order: Rational,
    prefactor: Optional[FracSeries] = None,
    euler: Sequence[Tuple[Rational, int]] = (),
) -> FracSeries:
    """
    Expand prefactor * prod J_M^k * prod j(num) / prod j(den).

    Args:
        numerators: Theta values in the numerator
        denominators: Theta values in the denominator; none may vanish
        order: Truncation order
        prefactor: Exact factor in front (default 1)
        euler: Pairs (M, k) contributing J_M^k

    Returns:
        The quotient known to ``order``

    Raises:
        SingularSpec: a denominator vanishes identically
    """
    for den in denominators:
        if den.singular:
            raise SingularSpec(f"{den} vanishes identically")
    if any(num.singular for num in numerators):
        return FracSeries.zero(order)

    def build(working: Fraction) -> FracSeries:
        acc = prefactor if prefactor is not None else FracSeries.one()
        for num in numerators:
            acc = mul(acc, num.expand(working))
        for modulus, k in euler:
            acc = mul(acc, power(big_j(JKind.PROD, 0, modulus, working), k))
        for den in denominators:
            acc = mul(acc, invert(den.expand(working)))
        return acc

    return ensure_order(build, order)
