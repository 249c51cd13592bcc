"""
String functions C^N_{m,l}(q) of the affine algebra A_1^(1).

Three independent evaluations are provided: the Weyl-Kac character expansion
(a triple sum), the Hecke double-sum form with f_{1,1+N,1}, and the
Kac-Peterson half-lattice sum. The even-level splitting into f_{K+1,K+1,1}
sums lives here as well.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Tuple

from heckeq.errors import InvalidIndex
from heckeq.services.hecke import DoubleSumParams, hecke_f, sg
from heckeq.services.series import (
    FracSeries,
    QArg,
    Rational,
    add,
    ensure_order,
    mul,
    parity_sign,
    power,
    sublevel_range,
)
from heckeq.services.theta import JKind, big_j

logger = logging.getLogger(__name__)


class StringMethod(str, Enum):
    TRIPLE = "triple"
    HECKE = "hecke"
    LATTICE = "lattice"


class Corollary(str, Enum):
    COR2 = "cor2"
    COR3 = "cor3"


@dataclass(frozen=True)
class StringIndex:
    """Level N, weight m and highest weight l of C^N_{m,l}."""

    level: int
    m: int
    l: int  # noqa: E741

    def __post_init__(self) -> None:
        if self.level < 1:
            raise InvalidIndex(f"level must be >= 1, got {self.level}")
        if not 0 <= self.l <= self.level:
            raise InvalidIndex(f"l must lie in [0, {self.level}], got {self.l}")
        if (self.m - self.l) % 2:
            raise InvalidIndex(f"m and l must have the same parity, got m={self.m}, l={self.l}")

    def canonical(self) -> "StringIndex":
        """Reduce m into [0, N] with m -> -m, m -> 2N - m and 2N-periodicity."""
        period = 2 * self.level
        m = abs(self.m) % period
        if m > self.level:
            m = period - m
        return StringIndex(self.level, m, self.l)

    def in_range(self) -> "StringIndex":
        """The index itself when 0 <= m <= 2N, otherwise its canonical form."""
        if 0 <= self.m <= 2 * self.level:
            return self
        return self.canonical()

    def s_exponent(self) -> Fraction:
        return s_exponent(self)

    def __str__(self) -> str:
        return f"C^{self.level}_{{{self.m},{self.l}}}"


def s_exponent(idx: StringIndex) -> Fraction:
    """s(m, l, N) = -1/8 + (l+1)^2/(4(N+2)) - m^2/(4N)."""
    return (
        Fraction(-1, 8)
        + Fraction((idx.l + 1) ** 2, 4 * (idx.level + 2))
        - Fraction(idx.m * idx.m, 4 * idx.level)
    )


def _over_j1_cubed(core: FracSeries, lead: Fraction, bound: Fraction) -> FracSeries:
    # q^lead * core / J_1^3, with core known to bound - lead
    inverse_cube = power(big_j(JKind.PROD, 0, 1, bound - lead), -3)
    return mul(core, inverse_cube).shift(lead)


def _character_sum(idx: StringIndex, bound: Fraction) -> FracSeries:
    # Coefficient extraction from the Weyl-Kac character, after
    #   1/((u)_inf (q/u)_inf) = (q)_inf^{-2} sum_r (-1)^r q^{r(r+1)/2} / (1 - u q^r)
    # with every geometric factor expanded in |q| < |u| < 1.
    N, m, l = idx.level, idx.m, idx.l
    K = N + 2
    terms: Dict[Fraction, Fraction] = {}
    for j in sublevel_range(K, l + 1, 0, bound):
        base = Fraction(K * j * j + (l + 1) * j)
        for sign, t in ((1, K * j + (l - m) // 2), (-1, -(K * j + (l + m) // 2 + 1))):
            rows = (
                sublevel_range(Fraction(1, 2), t + Fraction(1, 2), base, bound, lo=0)
                if t >= 0
                else sublevel_range(Fraction(1, 2), t + Fraction(1, 2), base, bound, hi=-1)
            )
            for r in rows:
                exp = base + Fraction(r * (r + 1), 2) + r * t
                terms[exp] = terms.get(exp, Fraction(0)) + sign * sg(r) * parity_sign(r)
    return FracSeries(terms, bound)


def string_C_triple(idx: StringIndex, order: Rational) -> FracSeries:
    """
    C^N_{m,l} as q^s / J_1^3 times the character-expansion triple sum

        sum_j sum_r (-1)^r sg(r) [q^{E(j,r,t1)} - q^{E(j,r,t2)}],
        E(j,r,t) = (N+2) j^2 + (l+1) j + r(r+1)/2 + r t,
        t1 = (N+2) j + (l-m)/2,  t2 = -(N+2) j - (l+m)/2 - 1,

    restricted to r >= 0 when t >= 0 and r < 0 when t < 0.
    """
    idx = idx.in_range()
    lead = s_exponent(idx)

    def build(working: Fraction) -> FracSeries:
        return _over_j1_cubed(_character_sum(idx, working - lead), lead, working)

    return ensure_order(build, order)


def string_S_hecke(idx: StringIndex, order: Rational, reduce: bool = True) -> FracSeries:
    """
    q^s / J_1^3 * f_{1,1+N,1}(q^{1+(m+l)/2}, q^{1-(m-l)/2}).

    With reduce=False the formula is applied to m as given, even outside [0, 2N].
    """
    if reduce:
        idx = idx.in_range()
    lead = s_exponent(idx)
    params = DoubleSumParams(
        1,
        1 + idx.level,
        1,
        QArg(1, 1 + Fraction(idx.m + idx.l, 2)),
        QArg(1, 1 - Fraction(idx.m - idx.l, 2)),
    )

    def build(working: Fraction) -> FracSeries:
        return _over_j1_cubed(hecke_f(params, working - lead), lead, working)

    return ensure_order(build, order)


def _lattice_sum(idx: StringIndex, bound: Fraction) -> FracSeries:
    # sum of sg(x) q^{(N+2)x^2 - N y^2} over -|x| < y <= |x| in two cosets;
    # on the cone the exponent is at least 2x^2
    N, m, l = idx.level, idx.m, idx.l
    K = N + 2
    ax0 = Fraction(l + 1, 2 * K)
    ay0 = Fraction(m, 2 * N)
    cosets = [(ax0, ay0), (Fraction(1, 2) - ax0, ay0 - Fraction(1, 2))]
    terms: Dict[Fraction, Fraction] = {}
    for x0, y0 in cosets:
        for i in sublevel_range(2, 4 * x0, 2 * x0 * x0, bound):
            x = x0 + i
            if x == 0:
                logger.warning(f"{idx}: lattice point with x = 0 met, skipped")
                continue
            width = abs(x)
            # y = y0 + k with -width < y <= width
            k_lo = int((-width - y0) // 1) + 1
            k_hi = int((width - y0) // 1)
            for k in range(k_lo, k_hi + 1):
                y = y0 + k
                exp = K * x * x - N * y * y
                if exp <= bound:
                    terms[exp] = terms.get(exp, Fraction(0)) + (1 if x > 0 else -1)
    return FracSeries(terms, bound)


def string_KP_lattice(idx: StringIndex, order: Rational) -> FracSeries:
    """eta^{-3} times the Kac-Peterson half-lattice sum."""
    idx = idx.in_range()
    lead = Fraction(-1, 8)

    def build(working: Fraction) -> FracSeries:
        return _over_j1_cubed(_lattice_sum(idx, working - lead), lead, working)

    return ensure_order(build, order)


def string_function(idx: StringIndex, method: StringMethod, order: Rational) -> FracSeries:
    """Dispatch to one of the three evaluations."""
    method = StringMethod(method)
    if method is StringMethod.TRIPLE:
        return string_C_triple(idx, order)
    if method is StringMethod.HECKE:
        return string_S_hecke(idx, order)
    return string_KP_lattice(idx, order)


def multiplicities(idx: StringIndex, order: Rational) -> List[int]:
    """
    Weight multiplicities: the coefficients of q^{-s} C^N_{m,l} at q^0, q^1, ...

    Raises:
        ValueError: a coefficient is not an integer or lies off the integer grid
    """
    idx = idx.in_range()
    lead = s_exponent(idx)
    series = string_C_triple(idx, Fraction(order) + lead).shift(-lead)
    counts: List[int] = []
    for exp, coeff in series.items():
        if exp.denominator != 1 or coeff.denominator != 1:
            raise ValueError(f"{idx}: non-integral term {coeff} q^{exp}")
    top = int(Fraction(order) // 1)
    for n in range(0, top + 1):
        counts.append(int(series.coefficient(n)))
    return counts


def _split_args(K: int, m: int, l: int, sign: int) -> Tuple[DoubleSumParams, DoubleSumParams, QArg]:
    first = DoubleSumParams(
        K + 1, K + 1, 1,
        QArg(sign, 1 + Fraction(K + l, 2)),
        QArg(1, 1 + Fraction(m + l, 2)),
    )
    second = DoubleSumParams(
        K + 1, K + 1, 1,
        QArg(sign, 1 + Fraction(3 * K - l, 2)),
        QArg(1, 1 + K + Fraction(m - l, 2)),
    )
    return first, second, QArg(sign, Fraction(K - l, 2))


def split_rhs(K: int, m: int, l: int, sign: int, order: Rational) -> FracSeries:
    """
    Right side of the even-level splitting

        C^{2K}_{m,l} +- C^{2K}_{2K-m,l} = q^{s(m,l,2K)}/J_1^3 (
            f_{K+1,K+1,1}(+-q^{1+(K+l)/2}, q^{1+(m+l)/2})
            +- q^{(K-l)/2} f_{K+1,K+1,1}(+-q^{1+(3K-l)/2}, q^{1+K+(m-l)/2}) ).
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if (m - l) % 2 or not 0 <= l <= 2 * K:
        raise InvalidIndex(f"split needs m = l (mod 2) and 0 <= l <= 2K, got K={K}, m={m}, l={l}")
    lead = s_exponent(StringIndex(2 * K, m, l))
    first, second, mono = _split_args(K, m, l, sign)

    def build(working: Fraction) -> FracSeries:
        inner = working - lead
        tail = hecke_f(second, inner - mono.exp).shift(mono.exp).scale(mono.sign)
        return _over_j1_cubed(add(hecke_f(first, inner), tail), lead, working)

    return ensure_order(build, order)


def corollary_rhs(which: Corollary, K: int, value: int, order: Rational) -> FracSeries:
    """
    Single double-sum forms:

        cor2 (value = m, m = K mod 2):
            C^{2K}_{m,K} = q^{s(m,K,2K)}/J_1^3 f_{K+1,K+1,1}(q^{K+1}, q^{1+(m+K)/2})
        cor3 (value = l, l = K mod 2):
            C^{2K}_{K,l} = q^{s(K,l,2K)}/J_1^3 f_{K+1,K+1,1}(q^{1+(K+l)/2}, q^{1-(K-l)/2})
    """
    which = Corollary(which)
    if (value - K) % 2:
        raise InvalidIndex(f"{which.value} needs {value} = K (mod 2), K={K}")
    if which is Corollary.COR2:
        idx = StringIndex(2 * K, value, K)
        params = DoubleSumParams(
            K + 1, K + 1, 1, QArg(1, Fraction(K + 1)), QArg(1, 1 + Fraction(value + K, 2))
        )
    else:
        idx = StringIndex(2 * K, K, value)
        params = DoubleSumParams(
            K + 1, K + 1, 1,
            QArg(1, 1 + Fraction(K + value, 2)),
            QArg(1, 1 - Fraction(K - value, 2)),
        )
    lead = s_exponent(idx)

    def build(working: Fraction) -> FracSeries:
        return _over_j1_cubed(hecke_f(params, working - lead), lead, working)

    return ensure_order(build, order)


def prop51_sides(
    K: int, d: Rational, e: Rational, sign: int, order: Rational
) -> Tuple[FracSeries, FracSeries]:
    """
    Both sides of the f_{1,2K+1,1} to f_{K+1,K+1,1} conversion:

        f_{1,2K+1,1}(q^d, q^e) +- q^{(K+d+e)/2} f_{1,2K+1,1}(q^{1+K+d}, q^{1+K+e})
        = f_{K+1,K+1,1}(-+q^{(K+d+e)/2}, q^d) -+ q^{(K+2-d-e)/2} f_{K+1,K+1,1}(-+q^{2+(3K-d-e)/2}, q^{K+2-e})
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if K < 1:
        raise InvalidIndex(f"K must be >= 1, got {K}")
    d, e = Fraction(d), Fraction(e)
    bound = Fraction(order)
    half = (K + d + e) / 2

    def scaled(mono: QArg, params: DoubleSumParams) -> FracSeries:
        return hecke_f(params, bound - mono.exp).shift(mono.exp).scale(mono.sign)

    lhs = add(
        hecke_f(DoubleSumParams(1, 2 * K + 1, 1, QArg(1, d), QArg(1, e)), bound),
        scaled(
            QArg(sign, half),
            DoubleSumParams(1, 2 * K + 1, 1, QArg(1, 1 + K + d), QArg(1, 1 + K + e)),
        ),
    )
    rhs = add(
        hecke_f(DoubleSumParams(K + 1, K + 1, 1, QArg(-sign, half), QArg(1, d)), bound),
        scaled(
            QArg(-sign, (K + 2 - d - e) / 2),
            DoubleSumParams(
                K + 1, K + 1, 1,
                QArg(-sign, 2 + (3 * K - d - e) / 2),
                QArg(1, K + 2 - e),
            ),
        ),
    )
    return lhs.truncate(bound), rhs.truncate(bound)
