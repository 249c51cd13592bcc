import random
from fractions import Fraction

import pytest

from heckeq.errors import NonPositiveExponent, SingularSpec
from heckeq.services.hecke import (
    MINUS_ONE,
    DoubleSumParams,
    f1p1_expansion,
    f_flip_rhs,
    f_shift_rhs,
    fabc_fnq_rhs,
    fnn1_expansion,
    h_nn1,
    hecke_f,
    validate_f1p1,
    validate_fnn1,
)
from heckeq.services.series import EQUAL, QArg, equal_to_order, power
from heckeq.services.theta import JKind, big_j

F = Fraction
ORDER = 12


def q(exp, sign=1):
    return QArg(sign, F(exp))


PARAMS = [
    DoubleSumParams(1, 2, 1, q(1), q(1)),
    DoubleSumParams(1, 2, 1, q(F(1, 2)), q(F(1, 3))),
    DoubleSumParams(2, 3, 1, q(F(1, 2), -1), q(F(3, 2))),
    DoubleSumParams(1, 3, 2, q(1), q(F(1, 4), -1)),
]


def test_f121_at_q_q_is_j1_squared():
    series = hecke_f(PARAMS[0], 20)
    assert [series.coefficient(n) for n in range(7)] == [1, -2, -1, 2, 1, 2, -2]
    assert series == power(big_j(JKind.PROD, 0, 1, 20), 2)


def test_parameters_must_be_positive():
    with pytest.raises(NonPositiveExponent):
        DoubleSumParams(0, 2, 1, q(1), q(1))


def test_indefinite():
    assert PARAMS[0].indefinite
    assert not DoubleSumParams(2, 1, 2, q(1), q(1)).indefinite


@pytest.mark.parametrize("params", PARAMS, ids=str)
@pytest.mark.parametrize("R, S", [(1, 0), (0, 1), (2, -1), (-1, 2)])
def test_shift(params, R, S):
    lhs = hecke_f(params, ORDER)
    assert equal_to_order(lhs, f_shift_rhs(params, R, S, ORDER), ORDER) == EQUAL


@pytest.mark.parametrize("params", PARAMS, ids=str)
@pytest.mark.parametrize("which", [1, 2])
def test_one_step_shifts(params, which):
    lhs = hecke_f(params, ORDER)
    assert equal_to_order(lhs, fabc_fnq_rhs(params, which, ORDER), ORDER) == EQUAL


def test_one_step_shift_rejects_unknown_variant():
    with pytest.raises(ValueError):
        fabc_fnq_rhs(PARAMS[0], 3, ORDER)


@pytest.mark.parametrize("params", PARAMS, ids=str)
def test_flip(params):
    lhs = hecke_f(params, ORDER)
    assert equal_to_order(lhs, f_flip_rhs(params, ORDER), ORDER) == EQUAL


def test_swap_when_a_equals_c():
    params = DoubleSumParams(1, 3, 1, q(F(1, 2)), q(2, -1))
    swapped = params.with_args(params.y, params.x)
    assert hecke_f(params, ORDER) == hecke_f(swapped, ORDER)


def test_f1p1_expansion_at_q_q():
    expansion = f1p1_expansion(1, q(1), q(1), 15)
    assert expansion == power(big_j(JKind.PROD, 0, 1, 15), 2)


def test_fnn1_expansion_matches_direct_sum():
    expansion = fnn1_expansion(5, q(5), q(4), 20)
    direct = hecke_f(DoubleSumParams(5, 5, 1, q(5), q(4)), 20)
    assert equal_to_order(expansion, direct, 20) == EQUAL


def test_h_with_vanishing_theta_factors_is_zero():
    series = h_nn1(6, q(6), q(4), MINUS_ONE, MINUS_ONE, 20)
    assert series.is_zero


def test_h_needs_n_at_least_two():
    with pytest.raises(NonPositiveExponent):
        h_nn1(1, q(1), q(1), MINUS_ONE, MINUS_ONE, 10)


def test_validate_f1p1_rejects_vanishing_denominator():
    with pytest.raises(SingularSpec):
        validate_f1p1(1, q(0, -1), q(1))


def test_validate_rejects_bad_degree():
    with pytest.raises(NonPositiveExponent):
        validate_f1p1(0, q(1), q(1))
    with pytest.raises(NonPositiveExponent):
        validate_fnn1(1, q(1), q(1))


def test_strict_validation_accepts_regular_arguments():
    validate_f1p1(2, q(F(1, 2)), q(F(1, 3)), strict=True)
    validate_fnn1(3, q(F(1, 2)), q(F(1, 3)), strict=True)
    with pytest.raises(SingularSpec):
        validate_f1p1(1, q(0, -1), q(1), strict=True)


def _random_exp(rng: random.Random) -> Fraction:
    return F(rng.randint(-2, 4), rng.choice([1, 2, 3]))


def test_enumeration_bounds_survive_recomputation_at_double_order():
    rng = random.Random(61)
    for _ in range(40):
        params = DoubleSumParams(
            rng.randint(1, 3),
            rng.randint(1, 4),
            rng.randint(1, 3),
            QArg(rng.choice([1, -1]), _random_exp(rng)),
            QArg(rng.choice([1, -1]), _random_exp(rng)),
        )
        low = hecke_f(params, 10)
        high = hecke_f(params, 20)
        assert equal_to_order(low, high, 10) == EQUAL, str(params)
