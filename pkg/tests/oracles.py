"""Slow, obviously-correct reference expansions used as test oracles."""
from fractions import Fraction
from typing import Dict, List

from heckeq.services.series import FracSeries, mul


def partition_counts(limit: int) -> List[int]:
    """p(0..limit) by enumerating partitions."""

    def count(n: int, largest: int) -> int:
        if n == 0:
            return 1
        return sum(count(n - part, part) for part in range(1, min(n, largest) + 1))

    return [count(n, n) for n in range(limit + 1)]


def euler_product(limit: int) -> FracSeries:
    """prod_{n=1}^{limit} (1 - q^n) multiplied out as an exact polynomial."""
    acc = FracSeries.one()
    for n in range(1, limit + 1):
        acc = mul(acc, FracSeries({0: 1, n: -1}))
    return acc


def pentagonal(limit: int) -> Dict[Fraction, Fraction]:
    """Nonzero coefficients of sum_k (-1)^k q^{k(3k-1)/2} up to q^limit."""
    terms: Dict[Fraction, Fraction] = {}
    for k in range(-limit - 1, limit + 2):
        e = k * (3 * k - 1) // 2
        if e <= limit:
            terms[Fraction(e)] = Fraction(-1 if k % 2 else 1)
    return terms


def theta_sum(sign: int, exp: Fraction, modulus: Fraction, limit: Fraction) -> Dict[Fraction, Fraction]:
    """j(sign q^exp; q^modulus) straight from its bilateral sum, up to q^limit."""
    terms: Dict[Fraction, Fraction] = {}
    for n in range(-200, 201):
        e = modulus * n * (n - 1) / 2 + n * exp
        if e <= limit:
            c = (-1) ** abs(n) * sign ** abs(n)
            terms[e] = terms.get(e, Fraction(0)) + c
    return {e: c for e, c in terms.items() if c}
