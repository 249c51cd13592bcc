from fractions import Fraction

import pytest

from heckeq.errors import NonPositiveExponent, SingularSpec
from heckeq.services.series import FracSeries, QArg, invert
from heckeq.services.theta import (
    JKind,
    ThetaArg,
    ThetaForm,
    big_j,
    eta,
    jtheta,
    pochhammer_inf,
    restricted_product,
    theta_quotient,
)
from tests.oracles import partition_counts, theta_sum

F = Fraction

THETA_CASES = [
    (1, F(1, 2), F(1)),
    (-1, F(1, 3), F(2)),
    (1, F(-5, 2), F(1)),
    (-1, F(0), F(1)),
    (1, F(3), F(2)),
    (-1, F(2), F(2)),
    (1, F(7, 4), F(3, 2)),
]


@pytest.mark.parametrize("sign, exp, modulus", THETA_CASES)
def test_sum_form_matches_bilateral_sum(sign, exp, modulus):
    series = jtheta(QArg(sign, exp), modulus, 20)
    assert dict(series.terms) == theta_sum(sign, exp, modulus, F(20))
    assert series.order == 20


@pytest.mark.parametrize("sign, exp, modulus", THETA_CASES)
def test_product_form_matches_sum_form(sign, exp, modulus):
    x = QArg(sign, exp)
    assert jtheta(x, modulus, 20, ThetaForm.PRODUCT) == jtheta(x, modulus, 20, ThetaForm.SUM)


def test_theta_vanishes_at_integral_powers():
    series = jtheta(QArg(1, F(6)), 3, 10)
    assert series.is_zero
    assert series.order == 10


def test_product_form_needs_positive_base():
    with pytest.raises(ValueError):
        jtheta(QArg(1, F(1, 2)), 1, 10, ThetaForm.PRODUCT, -1)


def test_negative_base_sum():
    # j(-1; -q) = sum_n (-1)^{C(n,2)} q^{C(n,2)}
    series = jtheta(QArg(-1, F(0)), 1, 10, ThetaForm.SUM, -1)
    assert dict(series.terms) == {F(0): 2, F(1): -2, F(3): -2, F(6): 2, F(10): 2}


def test_j13_is_euler_product():
    assert big_j(JKind.PLAIN, 1, 3, 20) == big_j(JKind.PROD, 0, 1, 20)


def test_jbar12_is_sum_of_squares_theta():
    expected = {F(0): 1}
    expected.update({F(k * k): 2 for k in range(1, 5)})
    assert dict(big_j(JKind.BAR, 1, 2, 20).terms) == expected


def test_pochhammer_requires_positive_exponent():
    with pytest.raises(NonPositiveExponent):
        pochhammer_inf(QArg(1, F(0)), 1, 5)


def test_eta_leading_terms():
    series = eta(1, 5)
    assert series.order == 5
    assert series.valuation() == F(1, 24)
    assert series.coefficient(F(1, 24)) == 1
    assert series.coefficient(F(25, 24)) == -1


def test_eta_requires_positive_argument():
    with pytest.raises(NonPositiveExponent):
        eta(0, 5)


def test_restricted_product_all_excluded_is_one():
    assert restricted_product(1, 3, frozenset({0, 1, 2}), 1, 10) == FracSeries({0: 1}, 10)


def test_restricted_product_nothing_excluded():
    assert restricted_product(1, 1, frozenset(), 1, 10) == big_j(JKind.PROD, 0, 1, 10)
    inverse = restricted_product(1, 1, frozenset(), -1, 8)
    assert [inverse.coefficient(n) for n in range(9)] == partition_counts(8)


def test_restricted_product_rogers_ramanujan():
    # 1/((q;q^5)(q^4;q^5)) counts partitions into parts = +-1 mod 5
    series = restricted_product(1, 5, frozenset({0, 2, 3}), -1, 10)
    assert [series.coefficient(n) for n in range(11)] == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]


def test_theta_quotient_with_euler_factors():
    # J_{1,2} = J_1^2 / J_2
    quotient = theta_quotient([], [], 15, euler=[(1, 2), (2, -1)])
    assert quotient == big_j(JKind.PLAIN, 1, 2, 15)


def test_theta_quotient_divides():
    q = QArg(1, F(1))
    quotient = theta_quotient([ThetaArg(q, 3)], [ThetaArg(QArg(-1, F(1)), 2)], 12)
    expected = jtheta(q, 3, 12) * invert(jtheta(QArg(-1, F(1)), 2, 12))
    assert quotient == expected.truncate(12)


def test_theta_quotient_rejects_vanishing_denominator():
    with pytest.raises(SingularSpec):
        theta_quotient([], [ThetaArg(QArg(1, F(2)), 1)], 10)


def test_theta_quotient_vanishing_numerator_is_zero():
    result = theta_quotient([ThetaArg(QArg(1, F(2)), 2)], [ThetaArg(QArg(-1, F(1)), 1)], 10)
    assert result.is_zero


def test_pochhammer_examples():
    assert pochhammer_inf(QArg(1, F(16)), 1, 15) == FracSeries({0: 1}, 15)
    assert dict(pochhammer_inf(QArg(-1, F(1)), 1, 3).terms) == {F(0): 1, F(1): 1, F(2): 1, F(3): 2}


@pytest.mark.parametrize("modulus", [0, -2, F(-1, 2)])
def test_nonpositive_modulus_is_rejected(modulus):
    with pytest.raises(NonPositiveExponent):
        jtheta(QArg(1, F(1)), modulus, 5)
    with pytest.raises(NonPositiveExponent):
        big_j(JKind.PLAIN, 1, modulus, 5)
    with pytest.raises(NonPositiveExponent):
        big_j(JKind.PROD, 0, modulus, 5)
    with pytest.raises(NonPositiveExponent):
        pochhammer_inf(QArg(1, F(1)), modulus, 5)
