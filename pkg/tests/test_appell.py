import random
from fractions import Fraction

import pytest

from heckeq.errors import NonPositiveExponent, SingularSpec
from heckeq.services.appell import AppellSpec, appell_m, changing_z_correction
from heckeq.services.series import EQUAL, FracSeries, QArg, equal_to_order

F = Fraction
ORDER = 15


def q(exp, sign=1):
    return QArg(sign, F(exp))


def test_m_at_x_q_z_minus_one_is_one_half():
    series = appell_m(AppellSpec(q(1), 2, q(0, -1)), 20)
    assert series == FracSeries({0: F(1, 2)}, 20)


def test_m_at_x_minus_one_z_q_vanishes():
    series = appell_m(AppellSpec(q(0, -1), 2, q(1)), 20)
    assert series.is_zero
    assert series.order == 20


@pytest.mark.parametrize(
    "x, modulus, z",
    [
        (q(F(1, 3)), 1, q(0, -1)),
        (q(F(1, 2), -1), 2, q(F(1, 3))),
        (q(F(-1, 2)), 3, q(F(1, 4), -1)),
    ],
)
def test_shift_in_x(x, modulus, z):
    # m(q^M x, q^M, z) = 1 - x m(x, q^M, z)
    lhs = appell_m(AppellSpec(x.shifted(modulus), modulus, z), ORDER)
    inner = appell_m(AppellSpec(x, modulus, z), ORDER + 1)
    rhs = (FracSeries.one() - inner * x.as_series()).truncate(ORDER)
    assert equal_to_order(lhs, rhs, ORDER) == EQUAL


def test_flip_x_and_z():
    # m(x, q, z) = x^{-1} m(x^{-1}, q, z^{-1})
    x, z = q(F(1, 3)), q(F(1, 2), -1)
    lhs = appell_m(AppellSpec(x, 1, z), ORDER)
    inner = appell_m(AppellSpec(x.inverse(), 1, z.inverse()), ORDER + 1)
    rhs = (inner * x.inverse().as_series()).truncate(ORDER)
    assert equal_to_order(lhs, rhs, ORDER) == EQUAL


def test_changing_z_matches_difference():
    x, z0, z1 = q(F(1, 2)), q(F(1, 3), -1), q(F(2, 3), -1)
    difference = appell_m(AppellSpec(x, 1, z1), ORDER) - appell_m(AppellSpec(x, 1, z0), ORDER)
    correction = changing_z_correction(x, 1, z0, z1, ORDER)
    assert equal_to_order(difference, correction, ORDER) == EQUAL


@pytest.mark.parametrize(
    "x, modulus, z",
    [
        (q(1), 1, q(2)),
        (q(F(1, 2)), 2, q(4)),
        (q(1), 1, q(-1)),
        (q(F(1, 2)), 1, q(F(1, 2))),
    ],
)
def test_singular_specs_are_rejected(x, modulus, z):
    with pytest.raises(SingularSpec):
        appell_m(AppellSpec(x, modulus, z), 10)


def test_modulus_must_be_positive():
    with pytest.raises(NonPositiveExponent):
        AppellSpec(q(1), 0, q(0, -1))


def test_lerch_sum_bounds_survive_recomputation_at_double_order():
    rng = random.Random(1024)
    checked = 0
    while checked < 25:
        spec = AppellSpec(
            QArg(rng.choice([1, -1]), F(rng.randint(-8, 8), rng.randint(1, 4))),
            rng.choice([1, 2, 3, 5, 12]),
            QArg(rng.choice([1, -1]), F(rng.randint(-8, 8), rng.randint(1, 4))),
        )
        try:
            spec.validate()
        except SingularSpec:
            continue
        low = appell_m(spec, 8)
        high = appell_m(spec, 16)
        assert equal_to_order(low, high, 8) == EQUAL, str(spec)
        checked += 1
