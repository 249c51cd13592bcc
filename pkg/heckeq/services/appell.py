"""
Appell-Lerch sums m(x, q^M, z) specialised at x = +-q^alpha, z = +-q^beta.

    m(x, q^M, z) = j(z; q^M)^{-1} sum_r (-1)^r q^{M C(r,2)} z^r / (1 - q^{M(r-1)} x z)

Each geometric factor is expanded in the direction that converges for small q.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

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
)
from heckeq.services.theta import ThetaArg, jtheta, theta_quotient

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AppellSpec:
    """Arguments of m(x, q^M, z)."""

    x: QArg
    modulus: Fraction
    z: QArg

    def __post_init__(self) -> None:
        object.__setattr__(self, "modulus", Fraction(self.modulus))
        if self.modulus <= 0:
            raise NonPositiveExponent(f"Appell-Lerch base must be q^M with M > 0, got M = {self.modulus}")

    def validate(self) -> None:
        """
        Raise SingularSpec when j(z; q^M) vanishes or a summand has a pole.
        """
        if self.z.is_q_power_of(self.modulus):
            raise SingularSpec(f"{self}: j(z; q^M) vanishes")
        if (self.x * self.z).is_q_power_of(self.modulus):
            raise SingularSpec(f"{self}: xz is an integral power of q^M, a summand has a pole")

    def __str__(self) -> str:
        return f"m({self.x}, q^{fmt_exponent(self.modulus)}, {self.z})"


def appell_m(spec: AppellSpec, order: Rational) -> FracSeries:
    """
    Expand m(x, q^M, z) to the given order.

    Raises:
        SingularSpec: z or xz is +q^{nM}
    """
    spec.validate()
    return ensure_order(lambda working: _appell_m_at(spec, working), order)


def _appell_m_at(spec: AppellSpec, working: Fraction) -> FracSeries:
    theta = jtheta(spec.z, spec.modulus, working)
    return mul(_lerch_sum(spec, working), invert(theta))


def _lerch_sum(spec: AppellSpec, bound: Fraction) -> FracSeries:
    step = spec.modulus
    alpha, beta = spec.x.exp, spec.z.exp
    sigma = spec.x.sign * spec.z.sign

    def lead(r: int) -> Fraction:
        return step * r * (r - 1) / 2 + r * beta

    def gap(r: int) -> Fraction:
        # q^{M(r-1)} x z = sigma q^{gap(r)}
        return step * (r - 1) + alpha + beta

    def least(r: int) -> Fraction:
        return lead(r) + max(Fraction(0), -gap(r))

    # least() is convex in r: walk downhill from the quadratic's vertex
    start = round(Fraction(1, 2) - beta / step)
    while least(start - 1) < least(start):
        start -= 1
    while least(start + 1) < least(start):
        start += 1
    if least(start) > bound:
        return FracSeries.zero(bound)
    lo, hi = start, start
    while least(lo - 1) <= bound:
        lo -= 1
    while least(hi + 1) <= bound:
        hi += 1
    logger.debug(f"{spec}: summing r in [{lo}, {hi}] to order {bound}")

    terms: Dict[Fraction, Fraction] = {}
    for r in range(lo, hi + 1):
        base = lead(r)
        prefix = parity_sign(r) * (spec.z.sign ** (r % 2))
        w = gap(r)
        if w > 0:
            k = 0
            while base + w * k <= bound:
                exp = base + w * k
                terms[exp] = terms.get(exp, Fraction(0)) + prefix * sigma ** (k % 2)
                k += 1
        elif w < 0:
            k = 1
            while base - w * k <= bound:
                exp = base - w * k
                terms[exp] = terms.get(exp, Fraction(0)) - prefix * sigma ** (k % 2)
                k += 1
        else:
            # sigma = -1 here, validate() rejects the pole
            terms[base] = terms.get(base, Fraction(0)) + Fraction(prefix, 2)
    return FracSeries(terms, bound)


def changing_z_correction(
    x: QArg, modulus: Rational, z0: QArg, z1: QArg, order: Rational
) -> FracSeries:
    """
    Expand m(x, q^M, z1) - m(x, q^M, z0) through its theta-quotient form

        z0 J_M^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1)),

    every j to base q^M.
    """
    step = Fraction(modulus)
    numerators = [ThetaArg(z1 * z0.inverse(), step), ThetaArg(x * z0 * z1, step)]
    denominators = [
        ThetaArg(z0, step),
        ThetaArg(z1, step),
        ThetaArg(x * z0, step),
        ThetaArg(x * z1, step),
    ]
    return theta_quotient(
        numerators,
        denominators,
        order,
        prefactor=z0.as_series(),
        euler=[(step, 3)],
    )
