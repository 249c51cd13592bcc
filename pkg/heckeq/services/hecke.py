"""
Hecke-type double-sums

    f_{a,b,c}(x, y, q) = (sum_{r,s>=0} - sum_{r,s<0}) (-1)^{r+s} x^r y^s
                         q^{a C(r,2) + b r s + c C(s,2)},

their functional equations, and their expansions in terms of Appell-Lerch
sums and theta quotients for f_{1,p+1,1} and f_{n,n,1}.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from heckeq.errors import NonPositiveExponent, SingularSpec
from heckeq.services.appell import AppellSpec, appell_m
from heckeq.services.series import (
    FracSeries,
    QArg,
    Rational,
    add,
    ensure_order,
    mul,
    parity_sign,
    sublevel_range,
)
from heckeq.services.theta import ThetaArg, jtheta, theta_quotient

logger = logging.getLogger(__name__)

MINUS_ONE = QArg(-1, Fraction(0))


def sg(r: int) -> int:
    return 1 if r >= 0 else -1


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class DoubleSumParams:
    """Coefficients and arguments of f_{a,b,c}(x, y, q)."""

    a: int
    b: int
    c: int
    x: QArg
    y: QArg

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) < 1:
            raise NonPositiveExponent(f"f_{{a,b,c}} needs a, b, c >= 1, got {self.a}, {self.b}, {self.c}")

    @property
    def indefinite(self) -> bool:
        return self.b * self.b > self.a * self.c

    def with_args(self, x: QArg, y: QArg) -> "DoubleSumParams":
        return replace(self, x=x, y=y)

    def __str__(self) -> str:
        return f"f_{{{self.a},{self.b},{self.c}}}({self.x}, {self.y})"


def _convex_min(
    qa: Fraction, qb: Fraction, lo: Optional[int] = None, hi: Optional[int] = None
) -> Fraction:
    # integer minimum of qa n^2 + qb n on [lo, hi]
    n = round(-qb / (2 * qa))
    if lo is not None:
        n = max(n, lo)
    if hi is not None:
        n = min(n, hi)
    return qa * n * n + qb * n


def hecke_f(params: DoubleSumParams, order: Rational) -> FracSeries:
    """
    Enumerate f_{a,b,c}(x, y, q) to the given order.

    With d = x.exp and e = y.exp the exponent of (r, s) is
    E = a C(r,2) + b r s + c C(s,2) + d r + e s. On r, s >= 0 it is at least
    A(r) + C(s); on r, s < 0 it is at least A2(r) + C2(s) - b, with
    A2(r) = a C(r,2) + (d - b) r. Both bounds give finite convex ranges.
    """
    a, b, c = Fraction(params.a), Fraction(params.b), Fraction(params.c)
    d, e = params.x.exp, params.y.exp
    bound = Fraction(order)
    sx, sy = params.x.sign, params.y.sign
    terms: Dict[Fraction, Fraction] = {}

    def collect(r: int, s_range: Iterable[int]) -> None:
        row = a * _binom2(r) + d * r
        for s in s_range:
            exp = row + b * r * s + c * _binom2(s) + e * s
            coeff = sg(r) * parity_sign(r + s) * sx ** (r % 2) * sy ** (s % 2)
            terms[exp] = terms.get(exp, Fraction(0)) + coeff

    c_min = _convex_min(c / 2, e - c / 2, lo=0)
    for r in sublevel_range(a / 2, d - a / 2, 0, bound - c_min, lo=0):
        row = a * _binom2(r) + d * r
        collect(r, sublevel_range(c / 2, e - c / 2 + b * r, row, bound, lo=0))

    c2_min = _convex_min(c / 2, e - b - c / 2, hi=-1)
    for r in sublevel_range(a / 2, d - b - a / 2, 0, bound + b - c2_min, hi=-1):
        row = a * _binom2(r) + d * r
        collect(r, sublevel_range(c / 2, e - c / 2 + b * r, row, bound, hi=-1))

    return FracSeries(terms, bound)


def _monomial_times(
    mono: QArg, build: Callable[[Fraction], FracSeries], order: Fraction
) -> FracSeries:
    """mono * build(...), with build asked for exactly the order needed."""
    return build(order - mono.exp).shift(mono.exp).scale(mono.sign)


def _convention_indices(upper: int) -> Tuple[int, range]:
    # sum_{m=0}^{upper} = -sum_{m=upper+1}^{-1} when upper < 0
    if upper >= 0:
        return 1, range(0, upper + 1)
    return -1, range(upper + 1, 0)


def f_shift_rhs(params: DoubleSumParams, R: int, S: int, order: Rational) -> FracSeries:
    """
    Right side of the (R, S) shift of f_{a,b,c}(x, y, q):

        (-x)^R (-y)^S q^{a C(R,2) + b R S + c C(S,2)} f(q^{aR+bS} x, q^{bR+cS} y)
        + sum_{m=0}^{R-1} (-x)^m q^{a C(m,2)} j(q^{mb} y; q^c)
        + sum_{m=0}^{S-1} (-y)^m q^{c C(m,2)} j(q^{mb} x; q^a)
    """
    a, b, c = params.a, params.b, params.c
    x, y = params.x, params.y
    bound = Fraction(order)
    lead = ((-x) ** R * (-y) ** S).shifted(a * _binom2(R) + b * R * S + c * _binom2(S))
    shifted = params.with_args(x.shifted(a * R + b * S), y.shifted(b * R + c * S))
    total = _monomial_times(lead, lambda o: hecke_f(shifted, o), bound)

    sign, indices = _convention_indices(R - 1)
    for m in indices:
        mono = ((-x) ** m).shifted(a * _binom2(m))
        arg = y.shifted(m * b)
        total = add(total, _monomial_times(mono, lambda o: jtheta(arg, c, o), bound).scale(sign))

    sign, indices = _convention_indices(S - 1)
    for m in indices:
        mono = ((-y) ** m).shifted(c * _binom2(m))
        arg = x.shifted(m * b)
        total = add(total, _monomial_times(mono, lambda o: jtheta(arg, a, o), bound).scale(sign))
    return total.truncate(bound)


def fabc_fnq_rhs(params: DoubleSumParams, which: int, order: Rational) -> FracSeries:
    """
    The two one-step specialisations of the shift:

        which=1: -y f(q^b x, q^c y) + j(x; q^a)
        which=2: -x f(q^a x, q^b y) + j(y; q^c)
    """
    a, b, c = params.a, params.b, params.c
    x, y = params.x, params.y
    bound = Fraction(order)
    if which == 1:
        shifted = params.with_args(x.shifted(b), y.shifted(c))
        head = _monomial_times(-y, lambda o: hecke_f(shifted, o), bound)
        return add(head, jtheta(x, a, bound)).truncate(bound)
    if which == 2:
        shifted = params.with_args(x.shifted(a), y.shifted(b))
        head = _monomial_times(-x, lambda o: hecke_f(shifted, o), bound)
        return add(head, jtheta(y, c, bound)).truncate(bound)
    raise ValueError(f"which must be 1 or 2, got {which}")


def f_flip_rhs(params: DoubleSumParams, order: Rational) -> FracSeries:
    """-(q^{a+b+c}/(xy)) f(q^{2a+b}/x, q^{2c+b}/y)."""
    a, b, c = params.a, params.b, params.c
    x, y = params.x, params.y
    mono = QArg(-1, Fraction(a + b + c)) * (x * y).inverse()
    flipped = params.with_args(x.inverse().shifted(2 * a + b), y.inverse().shifted(2 * c + b))
    return _monomial_times(mono, lambda o: hecke_f(flipped, o), Fraction(order))


def _theta_times_appell(theta: ThetaArg, spec: AppellSpec, order: Rational) -> FracSeries:
    # an identically vanishing theta factor kills the term, whatever m does there
    if theta.singular:
        return FracSeries.zero(order)
    return ensure_order(lambda w: mul(theta.expand(w), appell_m(spec, w)), order)


def _g_1b1_terms(
    x: QArg, y: QArg, b: int, z1: QArg, z0: QArg
) -> List[Tuple[ThetaArg, AppellSpec]]:
    step = Fraction(b * b - 1)
    offset = _binom2(b + 1) - 1
    return [
        (ThetaArg(y, 1), AppellSpec((x * (-y) ** (-b)).shifted(offset), step, z1)),
        (ThetaArg(x, 1), AppellSpec((y * (-x) ** (-b)).shifted(offset), step, z0)),
    ]


def g_1b1(x: QArg, y: QArg, b: int, z1: QArg, z0: QArg, order: Rational) -> FracSeries:
    """
    g_{1,b,1}(x, y, q, z1, z0) = j(y; q) m(q^{C(b+1,2)-1} x (-y)^{-b}, q^{b^2-1}, z1)
                                + j(x; q) m(q^{C(b+1,2)-1} y (-x)^{-b}, q^{b^2-1}, z0)
    """
    total = FracSeries.zero(order)
    for theta, spec in _g_1b1_terms(x, y, b, z1, z0):
        total = add(total, _theta_times_appell(theta, spec, order))
    return total


def _theta_p_terms(p: int, x: QArg, y: QArg) -> List[Tuple[QArg, List[ThetaArg], List[ThetaArg]]]:
    outer = Fraction(p * p * (2 + p))
    inner = Fraction(p * p)
    half = Fraction(p * (1 + p), 2)
    terms = []
    for r in range(p):
        for s in range(p):
            mono = ((-x) ** r * (-y) ** (s + 1)).shifted(
                _binom2(r) + (1 + p) * r * (s + 1) + _binom2(s + 1)
            )
            numerators = [
                ThetaArg(QArg(-1, Fraction(p * (s - r))) * x * y.inverse(), inner),
                ThetaArg(
                    (x ** p * y ** p).shifted(p * (2 + p) * (r + s) + p * (1 + p)), outer
                ),
            ]
            denominators = [
                ThetaArg(((-y) ** (1 + p) * (-x).inverse()).shifted(p * (2 + p) * r + half), outer),
                ThetaArg(((-x) ** (1 + p) * (-y).inverse()).shifted(p * (2 + p) * s + half), outer),
                ThetaArg(MINUS_ONE, p * (2 + p)),
            ]
            terms.append((mono, numerators, denominators))
    return terms


def validate_f1p1(p: int, x: QArg, y: QArg, strict: bool = False) -> None:
    """
    Raise SingularSpec if the f_{1,p+1,1} expansion cannot be evaluated at (x, y).

    With strict=True an Appell-Lerch pole counts even where its theta factor vanishes.
    """
    if p < 1:
        raise NonPositiveExponent(f"p must be a positive integer, got {p}")
    for theta, spec in _g_1b1_terms(x, y, p + 1, MINUS_ONE, MINUS_ONE):
        if strict or not theta.singular:
            spec.validate()
    for _, _, denominators in _theta_p_terms(p, x, y):
        for den in denominators:
            if den.singular:
                raise SingularSpec(f"theta quotient denominator {den} vanishes at x={x}, y={y}")


def f1p1_expansion(p: int, x: QArg, y: QArg, order: Rational) -> FracSeries:
    """
    f_{1,p+1,1}(x, y, q) = g_{1,p+1,1}(x, y, q, -1, -1) + theta_p(x, y, q) / Jbar_{0,p(2+p)}.

    Raises:
        SingularSpec: the specialisation hits a vanishing denominator or a pole
    """
    validate_f1p1(p, x, y)
    bound = Fraction(order)
    total = g_1b1(x, y, p + 1, MINUS_ONE, MINUS_ONE, bound)
    euler = [(Fraction(p * p * (2 + p)), 3)]
    for mono, numerators, denominators in _theta_p_terms(p, x, y):
        total = add(
            total,
            theta_quotient(numerators, denominators, bound, prefactor=mono.as_series(), euler=euler),
        )
    return total.truncate(bound)


def _h_nn1_terms(
    n: int, x: QArg, y: QArg, z1: QArg, z0: QArg
) -> List[Tuple[ThetaArg, AppellSpec]]:
    return [
        (
            ThetaArg(x, n),
            AppellSpec(QArg(-1, Fraction(n - 1)) * y * x.inverse(), n - 1, z1),
        ),
        (
            ThetaArg(y, 1),
            AppellSpec((x * (-y) ** (-n)).shifted(_binom2(n)), n * n - n, z0),
        ),
    ]


def h_nn1(n: int, x: QArg, y: QArg, z1: QArg, z0: QArg, order: Rational) -> FracSeries:
    """
    h_{n,n,1}(x, y, q, z1, z0) = j(x; q^n) m(-q^{n-1} y/x, q^{n-1}, z1)
                                + j(y; q) m(q^{C(n,2)} x (-y)^{-n}, q^{n^2-n}, z0)
    """
    if n < 2:
        raise NonPositiveExponent(f"h_{{n,n,1}} needs n >= 2, got {n}")
    total = FracSeries.zero(order)
    for theta, spec in _h_nn1_terms(n, x, y, z1, z0):
        total = add(total, _theta_times_appell(theta, spec, order))
    return total


def _theta_n_terms(n: int, x: QArg, y: QArg) -> List[Tuple[QArg, List[ThetaArg], List[ThetaArg]]]:
    big = Fraction(n * (n - 1))
    terms = []
    for d in range(n):
        step = (n - 1) * (d + 1)
        mono = QArg(1, Fraction((n - 1) * _binom2(d + 1)))
        numerators = [
            ThetaArg(y.shifted(step), n),
            ThetaArg(QArg(-1, big - step) * x * y.inverse(), big),
            ThetaArg(((-y) ** (1 - n)).shifted(_binom2(n) + step), big),
        ]
        denominators = [
            ThetaArg(QArg(-1, Fraction(_binom2(n))) * x * (-y) ** (-n), big),
            ThetaArg((x.inverse() * y).shifted(step), big),
            ThetaArg(MINUS_ONE, n - 1),
            ThetaArg(MINUS_ONE, big),
        ]
        terms.append((mono, numerators, denominators))
    return terms


def validate_fnn1(n: int, x: QArg, y: QArg, strict: bool = False) -> None:
    """
    Raise SingularSpec if the f_{n,n,1} expansion cannot be evaluated at (x, y).

    With strict=True an Appell-Lerch pole counts even where its theta factor vanishes.
    """
    if n < 2:
        raise NonPositiveExponent(f"n must be at least 2, got {n}")
    for theta, spec in _h_nn1_terms(n, x, y, MINUS_ONE, MINUS_ONE):
        if strict or not theta.singular:
            spec.validate()
    for _, _, denominators in _theta_n_terms(n, x, y):
        for den in denominators:
            if den.singular:
                raise SingularSpec(f"theta quotient denominator {den} vanishes at x={x}, y={y}")


def fnn1_expansion(n: int, x: QArg, y: QArg, order: Rational) -> FracSeries:
    """
    f_{n,n,1}(x, y, q) = h_{n,n,1}(x, y, q, -1, -1) - theta_n(x, y, q) / (Jbar_{0,n-1} Jbar_{0,n^2-n}).

    Raises:
        SingularSpec: the specialisation hits a vanishing denominator or a pole
    """
    validate_fnn1(n, x, y)
    bound = Fraction(order)
    total = h_nn1(n, x, y, MINUS_ONE, MINUS_ONE, bound)
    euler = [(Fraction(n * (n - 1)), 3)]
    for mono, numerators, denominators in _theta_n_terms(n, x, y):
        quotient = theta_quotient(
            numerators, denominators, bound, prefactor=mono.as_series(), euler=euler
        )
        total = add(total, -quotient)
    return total.truncate(bound)
